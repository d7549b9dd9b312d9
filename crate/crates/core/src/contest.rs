//! Two-player contests with a continuum of efforts, evaluated exactly at
//! rational effort profiles.
//!
//! Player `i` gets `v_i p_i(a) - c_i(a_i)` where `p_1 + p_2 = 1`. Every
//! success function here is ratio based, `p_1(a) = f(a_1 / a_2)` with
//! `f(t) + f(1/t) = 1`.
//!
//! Descriptor format:
//!
//! ```json
//! {"success": {"kind": "tullock", "r": "3/2"},
//!  "values": ["2", "1"],
//!  "costs": [{"kind": "linear", "slope": "1"}, {"kind": "power", "coef": "2", "exp": "2"}]}
//! ```
//!
//! Other success kinds: `{"kind": "band_upper", "c": "1/4"}`,
//! `{"kind": "band_lower", "c": "1/4"}`,
//! `{"kind": "ratio", "points": [{"t": "0", "f": "0"}, {"t": "1", "f": "1/2"}]}`
//! (piecewise linear on `(0, 1]`) and
//! `{"kind": "mix", "parts": [{"weight": "3/4", "success": {...}}, ...]}`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::certify::{certify_cce_with_weights, UniquenessCertificate};
use crate::error::{Error, Result};
use crate::game::{Game, Profile};
use crate::io::{rational_str, rational_vec};
use crate::rational::{format_rational, pow_exact, rat, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Breakpoint {
    #[serde(with = "rational_str")]
    pub t: Rational,
    #[serde(with = "rational_str")]
    pub f: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixPart {
    #[serde(with = "rational_str")]
    pub weight: Rational,
    pub success: Success,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Success {
    /// `f(t) = t^r / (1 + t^r)`.
    Tullock {
        #[serde(with = "rational_str")]
        r: Rational,
    },
    /// Piecewise linear `f` on `(0, 1]`, extended by `f(t) = 1 - f(1/t)`.
    Ratio { points: Vec<Breakpoint> },
    BandUpper {
        #[serde(with = "rational_str")]
        c: Rational,
    },
    BandLower {
        #[serde(with = "rational_str")]
        c: Rational,
    },
    Mix { parts: Vec<MixPart> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Cost {
    Linear {
        #[serde(with = "rational_str")]
        slope: Rational,
    },
    /// `coef * x^exp`.
    Power {
        #[serde(with = "rational_str")]
        coef: Rational,
        #[serde(with = "rational_str")]
        exp: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContestSpec {
    pub success: Success,
    #[serde(with = "rational_vec")]
    pub values: Vec<Rational>,
    pub costs: Vec<Cost>,
}

fn half() -> Rational {
    rat(1, 2)
}

fn check_band(c: &Rational) -> Result<()> {
    if !c.is_positive() || *c > half() {
        return Err(Error::InvalidParameter(format!("band parameter c = {c} must lie in (0, 1/2]")));
    }
    Ok(())
}

impl Success {
    pub fn validate(&self) -> Result<()> {
        match self {
            Success::Tullock { r } if !r.is_positive() => {
                Err(Error::InvalidParameter(format!("Tullock exponent {r} must be positive")))
            }
            Success::Tullock { .. } => Ok(()),
            Success::BandUpper { c } | Success::BandLower { c } => check_band(c),
            Success::Ratio { points } => {
                let last = points.last().ok_or_else(|| Error::InvalidParameter("ratio needs breakpoints".into()))?;
                if !last.t.is_one() || last.f != half() {
                    return Err(Error::InvalidParameter("ratio breakpoints must end at (1, 1/2)".into()));
                }
                if points[0].t.is_negative() || points.windows(2).any(|w| w[0].t >= w[1].t) {
                    return Err(Error::InvalidParameter("ratio breakpoints must increase from t >= 0".into()));
                }
                Ok(())
            }
            Success::Mix { parts } => {
                if parts.is_empty() || parts.iter().any(|p| p.weight.is_negative()) {
                    return Err(Error::InvalidParameter("mix weights must be nonnegative".into()));
                }
                if parts.iter().fold(Rational::zero(), |a, p| a + &p.weight) != Rational::one() {
                    return Err(Error::InvalidParameter("mix weights must sum to 1".into()));
                }
                parts.iter().try_for_each(|p| p.success.validate())
            }
        }
    }

    /// `f(t)` for `t > 0`.
    pub fn ratio_value(&self, t: &Rational) -> Result<Rational> {
        if !t.is_positive() {
            return Err(Error::InvalidParameter(format!("effort ratio {t} must be positive")));
        }
        let one = Rational::one();
        Ok(match self {
            Success::Tullock { r } => {
                let x = pow_exact(t, r)?;
                &x / (&one + &x)
            }
            Success::Ratio { points } => {
                if *t > one {
                    return Ok(one - self.ratio_value(&t.recip())?);
                }
                piecewise(points, t)
            }
            Success::BandUpper { c } => {
                if *t <= one {
                    half() - c + c * t
                } else {
                    half() + c - c / t
                }
            }
            Success::BandLower { c } => {
                if *t <= one {
                    (half() + c - c / t).max(Rational::zero())
                } else {
                    (half() - c + c * t).min(one)
                }
            }
            Success::Mix { parts } => {
                let mut acc = Rational::zero();
                for p in parts {
                    acc += &p.weight * p.success.ratio_value(t)?;
                }
                acc
            }
        })
    }

    /// `p_i(a) = f(a_i / a_{-i})`.
    pub fn share(&self, i: usize, a: &[Rational]) -> Result<Rational> {
        let (own, other) = two(a, i)?;
        self.ratio_value(&(own / other))
    }
}

fn piecewise(points: &[Breakpoint], t: &Rational) -> Rational {
    if *t <= points[0].t {
        return points[0].f.clone();
    }
    for w in points.windows(2) {
        if *t <= w[1].t {
            let s = (t - &w[0].t) / (&w[1].t - &w[0].t);
            return &w[0].f + s * (&w[1].f - &w[0].f);
        }
    }
    unreachable!("last breakpoint is t = 1")
}

fn two(a: &[Rational], i: usize) -> Result<(&Rational, &Rational)> {
    if a.len() != 2 || i > 1 {
        return Err(Error::Shape(format!("contest has two players, got profile of length {} and player {i}", a.len())));
    }
    if let Some(x) = a.iter().find(|x| !x.is_positive()) {
        return Err(Error::InvalidParameter(format!("effort {x} must be positive")));
    }
    Ok((&a[i], &a[1 - i]))
}

impl Cost {
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        match self {
            Cost::Linear { slope } => Ok(slope * x),
            Cost::Power { coef, exp } => Ok(coef * pow_exact(x, exp)?),
        }
    }
}

impl ContestSpec {
    pub fn new(success: Success, values: Vec<Rational>, costs: Vec<Cost>) -> Result<Self> {
        let spec = ContestSpec { success, values, costs };
        spec.validate()?;
        Ok(spec)
    }

    /// `a_i / (a_1 + a_2) - a_i`.
    pub fn standard_tullock() -> Self {
        ContestSpec::tullock(Rational::one(), vec![Rational::one(), Rational::one()])
    }

    /// `a_i^r / (a_1^r + a_2^r)` with unit linear costs.
    pub fn tullock(r: Rational, values: Vec<Rational>) -> Self {
        ContestSpec {
            success: Success::Tullock { r },
            values,
            costs: vec![Cost::Linear { slope: Rational::one() }; 2],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.len() != 2 || self.costs.len() != 2 {
            return Err(Error::Shape("a contest has exactly two values and two costs".into()));
        }
        if let Some(v) = self.values.iter().find(|v| !v.is_positive()) {
            return Err(Error::InvalidParameter(format!("prize value {v} must be positive")));
        }
        self.success.validate()
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        let spec: ContestSpec =
            serde_json::from_slice(bytes).map_err(|e| Error::Format(format!("contest file: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("contest serializes")
    }
}

/// `v_i p_i(a) - c_i(a_i)`.
pub fn contest_utility(spec: &ContestSpec, i: usize, a: &[Rational]) -> Result<Rational> {
    let (own, _) = two(a, i)?;
    Ok(&spec.values[i] * spec.success.share(i, a)? - spec.costs[i].eval(own)?)
}

/// `sum_i gamma_i (u_i(a) - u_i(a*_i, a_{-i}))`.
pub fn local_potential(spec: &ContestSpec, a_star: &[Rational], a: &[Rational], gamma: &[Rational]) -> Result<Rational> {
    if gamma.len() != 2 || a_star.len() != 2 {
        return Err(Error::Shape("contest potential needs two weights and a two-player anchor".into()));
    }
    let mut phi = Rational::zero();
    for i in 0..2 {
        let mut b = a.to_vec();
        b[i] = a_star[i].clone();
        phi += &gamma[i] * (contest_utility(spec, i, a)? - contest_utility(spec, i, &b)?);
    }
    Ok(phi)
}

/// One summand of the standard Tullock potential, `3/4 - x - 1/(1 + 4x)`.
pub fn tullock_term(x: &Rational) -> Rational {
    rat(3, 4) - x - (Rational::one() + rat(4, 1) * x).recip()
}

/// The standard Tullock potential in closed form.
pub fn tullock_closed_form(a: &[Rational]) -> Rational {
    a.iter().map(tullock_term).fold(Rational::zero(), |acc, t| acc + t)
}

/// Sign analysis of [`tullock_term`]: multiplied by `1 + 4x > 0` it becomes
/// the quadratic `q(x) = c0 + c1 x + c2 x^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct TullockTermAnalysis {
    pub coeffs: [Rational; 3],
    pub discriminant: Rational,
    /// `-c1 / (2 c2)`.
    pub vertex: Rational,
}

impl TullockTermAnalysis {
    /// `q <= 0` everywhere, vanishing only at the vertex.
    pub fn nonpositive_with_unique_zero(&self) -> bool {
        self.coeffs[2].is_negative() && self.discriminant.is_zero()
    }
}

fn poly_mul(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn tullock_term_analysis() -> TullockTermAnalysis {
    // (3/4 - x)(1 + 4x) - 1
    let mut q = poly_mul(&[rat(3, 4), rat(-1, 1)], &[Rational::one(), rat(4, 1)]);
    q[0] -= Rational::one();
    let coeffs = [q[0].clone(), q[1].clone(), q[2].clone()];
    let discriminant = &coeffs[1] * &coeffs[1] - rat(4, 1) * &coeffs[0] * &coeffs[2];
    let vertex = -&coeffs[1] / (rat(2, 1) * &coeffs[2]);
    TullockTermAnalysis { coeffs, discriminant, vertex }
}

/// Equilibrium of the linear-cost Tullock contest with values `v1, v2`:
/// `(v1^2 v2, v1 v2^2) / (v1 + v2)^2`.
pub fn tullock_asymmetric_ne(v1: &Rational, v2: &Rational) -> [Rational; 2] {
    let s = (v1 + v2) * (v1 + v2);
    [v1 * v1 * v2 / &s, v1 * v2 * v2 / s]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prop3Check {
    /// A unilateral deviation does not lose strictly.
    StrictNe,
    /// `Phi(a) >= 0` away from the anchor.
    Potential,
    /// The weighted unilateral sum differs from `Phi(a)`.
    Identity,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prop3Violation {
    pub check: Prop3Check,
    #[serde(with = "rational_vec")]
    pub profile: Vec<Rational>,
    #[serde(with = "rational_str")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prop3Report {
    #[serde(with = "rational_vec")]
    pub gamma: Vec<Rational>,
    pub profiles_checked: usize,
    pub violations: Vec<Prop3Violation>,
}

impl Prop3Report {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks on the product grid that `a*` is a strict equilibrium and that the
/// potential with weights `1/v_i` is negative away from `a*`, and that it
/// coincides with the weighted sum of unilateral deviation gains.
pub fn verify_prop3(spec: &ContestSpec, a_star: &[Rational], grid: &[Vec<Rational>]) -> Result<Prop3Report> {
    spec.validate()?;
    if grid.len() != 2 || a_star.len() != 2 {
        return Err(Error::Shape("contest grid needs two effort lists".into()));
    }
    for i in 0..2 {
        if !grid[i].contains(&a_star[i]) {
            return Err(Error::Precondition(format!(
                "anchor effort {} of player {} is not on the grid",
                a_star[i],
                i + 1
            )));
        }
    }
    let gamma: Vec<Rational> = spec.values.iter().map(|v| v.recip()).collect();
    let base = [contest_utility(spec, 0, a_star)?, contest_utility(spec, 1, a_star)?];
    let mut violations = Vec::new();
    let mut gains = [Vec::new(), Vec::new()];
    for i in 0..2 {
        for x in &grid[i] {
            let mut a = a_star.to_vec();
            a[i] = x.clone();
            let gain = contest_utility(spec, i, &a)? - &base[i];
            if x != &a_star[i] && !gain.is_negative() {
                violations.push(Prop3Violation { check: Prop3Check::StrictNe, profile: a, value: gain.clone() });
            }
            gains[i].push(gain);
        }
    }
    let mut checked = 0;
    for (x, g1) in grid[0].iter().zip(&gains[0]) {
        for (y, g2) in grid[1].iter().zip(&gains[1]) {
            let a = vec![x.clone(), y.clone()];
            let phi = local_potential(spec, a_star, &a, &gamma)?;
            let unilateral = &gamma[0] * g1 + &gamma[1] * g2;
            if unilateral != phi {
                violations.push(Prop3Violation { check: Prop3Check::Identity, profile: a.clone(), value: &phi - unilateral });
            }
            if a != a_star && !phi.is_negative() {
                violations.push(Prop3Violation { check: Prop3Check::Potential, profile: a, value: phi });
            }
            checked += 1;
        }
    }
    Ok(Prop3Report { gamma, profiles_checked: checked, violations })
}

/// First grid point `t` in `(0, 1)` where `f` leaves the open band
/// `1/2 + c(1 - 1/t) < f(t) < 1/2 - c(1 - t)` or breaks `f(t) + f(1/t) = 1`;
/// `Some(1)` if `f(1) != 1/2`.
pub fn ratio_band_violation(f: &Success, c: &Rational, grid: &[Rational]) -> Result<Option<Rational>> {
    check_band(c)?;
    f.validate()?;
    let one = Rational::one();
    if f.ratio_value(&one)? != half() {
        return Ok(Some(one));
    }
    for t in grid {
        if !t.is_positive() || *t >= one {
            return Err(Error::InvalidParameter(format!("band grid point {t} is outside (0, 1)")));
        }
        let ft = f.ratio_value(t)?;
        let lower = half() + c * (&one - t.recip());
        let upper = half() - c * (&one - t);
        if !(lower < ft && ft < upper) || &ft + f.ratio_value(&t.recip())? != one {
            return Ok(Some(t.clone()));
        }
    }
    Ok(None)
}

pub fn ratio_band_check(f: &Success, c: &Rational, grid: &[Rational]) -> Result<bool> {
    Ok(ratio_band_violation(f, c, grid)?.is_none())
}

/// The edges of the band for equilibrium effort `c`: the upper edge
/// `1/2 - c + ct` and the lower edge `1/2 + c - c/t` (clipped to `[0, 1]`)
/// on `t <= 1`, each completed by `f(t) = 1 - f(1/t)`.
pub fn band_functions(c: &Rational) -> Result<(Success, Success)> {
    check_band(c)?;
    Ok((Success::BandUpper { c: c.clone() }, Success::BandLower { c: c.clone() }))
}

/// `(1 - eps) upper + eps lower`.
pub fn band_mix(c: &Rational, eps: &Rational) -> Result<Success> {
    let (upper, lower) = band_functions(c)?;
    let s = Success::Mix {
        parts: vec![
            MixPart { weight: Rational::one() - eps, success: upper },
            MixPart { weight: eps.clone(), success: lower },
        ],
    };
    s.validate()?;
    Ok(s)
}

fn effort_labels(grid: &[Rational]) -> Vec<String> {
    grid.iter().map(format_rational).collect()
}

/// The finite game on a product grid of efforts.
pub fn discretize(spec: &ContestSpec, grid: &[Vec<Rational>]) -> Result<Game> {
    spec.validate()?;
    if grid.len() != 2 {
        return Err(Error::Shape("contest grid needs two effort lists".into()));
    }
    let labels = vec![effort_labels(&grid[0]), effort_labels(&grid[1])];
    let mut payoffs = vec![Vec::new(), Vec::new()];
    for x in &grid[0] {
        for y in &grid[1] {
            let a = [x.clone(), y.clone()];
            for (i, row) in payoffs.iter_mut().enumerate() {
                row.push(contest_utility(spec, i, &a)?);
            }
        }
    }
    Game::new(Some("contest".into()), labels, payoffs)
}

/// Discretizes the contest and certifies `a*` in the grid game with the
/// weights `1/v_i`.
pub fn certify_prop3_grid(spec: &ContestSpec, a_star: &[Rational], grid: &[Vec<Rational>]) -> Result<UniquenessCertificate> {
    let game = discretize(spec, grid)?;
    let mut star = Vec::with_capacity(2);
    for (i, (a, line)) in a_star.iter().zip(grid).enumerate() {
        let k = line.iter().position(|x| x == a).ok_or_else(|| {
            Error::Precondition(format!("anchor effort {a} of player {} is not on the grid", i + 1))
        })?;
        star.push(k);
    }
    let gamma: Vec<Rational> = spec.values.iter().map(|v| v.recip()).collect();
    certify_cce_with_weights(&game, &Profile(star), &gamma)?
        .ok_or_else(|| Error::Precondition("weights 1/v_i do not certify the anchor on this grid".into()))
}

/// Tullock contest with linear unit costs and any number of players,
/// `u_i = v_i a_i / sum_j a_j - a_i`, on a product grid.
pub fn tullock_game(values: &[Rational], grid: &[Vec<Rational>]) -> Result<Game> {
    if values.len() != grid.len() {
        return Err(Error::Shape(format!("{} values for {} effort lists", values.len(), grid.len())));
    }
    if let Some(x) = grid.iter().flatten().find(|x| !x.is_positive()) {
        return Err(Error::InvalidParameter(format!("effort {x} must be positive")));
    }
    let labels = grid.iter().map(|g| effort_labels(g)).collect();
    Game::from_fn_labeled(Some("tullock".into()), labels, |i, p| {
        let total = p.iter().enumerate().fold(Rational::zero(), |acc, (j, &k)| acc + &grid[j][k]);
        let own = &grid[i][p[i]];
        &values[i] * own / total - own
    })
}

/// Linear Cournot oligopoly `u_i = a_i (alpha - beta sum_j a_j) - c_i(a_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CournotSpec {
    pub alpha: Rational,
    pub beta: Rational,
    pub costs: Vec<Cost>,
}

impl CournotSpec {
    pub fn utility(&self, i: usize, a: &[Rational]) -> Result<Rational> {
        let total = a.iter().fold(Rational::zero(), |acc, x| acc + x);
        Ok(&a[i] * (&self.alpha - &self.beta * total) - self.costs[i].eval(&a[i])?)
    }
}

pub fn cournot(spec: &CournotSpec, grid: &[Vec<Rational>]) -> Result<Game> {
    if spec.costs.len() != grid.len() {
        return Err(Error::Shape(format!("{} costs for {} quantity lists", spec.costs.len(), grid.len())));
    }
    if let Some(x) = grid.iter().flatten().find(|x| x.is_negative()) {
        return Err(Error::InvalidParameter(format!("quantity {x} must be nonnegative")));
    }
    let labels = grid.iter().map(|g| effort_labels(g)).collect();
    let mut err = None;
    let g = Game::from_fn_labeled(Some("cournot".into()), labels, |i, p| {
        let a: Vec<Rational> = p.iter().enumerate().map(|(j, &k)| grid[j][k].clone()).collect();
        spec.utility(i, &a).unwrap_or_else(|e| {
            err.get_or_insert(e);
            Rational::zero()
        })
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(g),
    }
}

/// `{k / d : lo <= k <= hi}`.
pub fn uniform_grid(lo: i64, hi: i64, d: i64) -> Vec<Rational> {
    (lo..=hi).map(|k| rat(k, d)).collect()
}
