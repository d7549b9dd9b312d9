//! Exact linear programming over rationals.
//!
//! Two-phase primal simplex on a dense tableau with Bland's rule (lowest
//! index enters, ratio ties leave by lowest basic index). A [`Region`] keeps
//! the feasible basis found by phase one so that many objectives over the same
//! constraints can be optimized from a warm start.
//!
//! The environment variable `EQCERT_LP_PIVOT_LIMIT` caps the number of pivots
//! per optimization; exceeding it panics. By default there is no cap.

mod vertices;

use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use crate::rational::Rational;

pub use vertices::{enumerate_vertices, MAX_VERTEX_DIMENSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(x)
            .filter(|(a, _)| !a.is_zero())
            .fold(Rational::zero(), |acc, (a, v)| acc + a * v)
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

/// Variables default to `x_j >= 0` with no upper bound.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    num_vars: usize,
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub lower: Vec<Option<Rational>>,
    pub upper: Vec<Option<Rational>>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            sense: Sense::Maximize,
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
            lower: vec![Some(Rational::zero()); num_vars],
            upper: vec![None; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_objective(&mut self, sense: Sense, coeffs: Vec<Rational>) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars, "objective length");
        self.sense = sense;
        self.objective = coeffs;
        self
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars, "constraint length");
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self
    }

    /// Adds a constraint given as `(variable, coefficient)` pairs.
    pub fn add_sparse(&mut self, terms: &[(usize, Rational)], relation: Relation, rhs: Rational) -> &mut Self {
        let mut coeffs = vec![Rational::zero(); self.num_vars];
        for (j, a) in terms {
            coeffs[*j] += a;
        }
        self.add(coeffs, relation, rhs)
    }

    pub fn set_bounds(&mut self, var: usize, lower: Option<Rational>, upper: Option<Rational>) -> &mut Self {
        self.lower[var] = lower;
        self.upper[var] = upper;
        self
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.set_bounds(var, None, None)
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).fold(Rational::zero(), |acc, (c, v)| acc + c * v)
    }

    /// Exact feasibility of `x`, bounds included.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars
            && x.iter().zip(&self.lower).all(|(v, l)| l.as_ref().is_none_or(|l| v >= l))
            && x.iter().zip(&self.upper).all(|(v, u)| u.as_ref().is_none_or(|u| v <= u))
            && self.constraints.iter().all(|c| c.holds(x))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

pub fn solve(lp: &LinearProgram) -> LpOutcome {
    match Region::new(lp) {
        Some(mut region) => region.optimize(lp.sense, &lp.objective),
        None => LpOutcome::Infeasible,
    }
}

fn pivot_limit() -> Option<u64> {
    static LIMIT: OnceLock<Option<u64>> = OnceLock::new();
    *LIMIT.get_or_init(|| std::env::var("EQCERT_LP_PIVOT_LIMIT").ok().and_then(|s| s.trim().parse().ok()))
}

/// How an original variable is recovered from standard-form columns.
#[derive(Clone, Debug)]
enum VarMap {
    /// `x = offset + y`
    Shift { col: usize, offset: Rational },
    /// `x = offset - y`
    Reflect { col: usize, offset: Rational },
    /// `x = y_pos - y_neg`
    Free { pos: usize, neg: usize },
}

/// The nonempty feasible region of an LP, held as a primal feasible basis.
#[derive(Clone, Debug)]
pub struct Region {
    num_vars: usize,
    map: Vec<VarMap>,
    /// Number of structural standard-form columns.
    ny: usize,
    tab: Tableau,
}

impl Region {
    /// Runs phase one. Returns `None` when the region is empty.
    pub fn new(lp: &LinearProgram) -> Option<Region> {
        let n = lp.num_vars;
        let mut map = Vec::with_capacity(n);
        let mut ny = 0;
        // Extra rows `y <= u - l` for doubly bounded variables.
        let mut bound_rows: Vec<(usize, Rational)> = Vec::new();
        for j in 0..n {
            match (&lp.lower[j], &lp.upper[j]) {
                (Some(l), u) => {
                    if let Some(u) = u {
                        bound_rows.push((ny, u - l));
                    }
                    map.push(VarMap::Shift { col: ny, offset: l.clone() });
                    ny += 1;
                }
                (None, Some(u)) => {
                    map.push(VarMap::Reflect { col: ny, offset: u.clone() });
                    ny += 1;
                }
                (None, None) => {
                    map.push(VarMap::Free { pos: ny, neg: ny + 1 });
                    ny += 2;
                }
            }
        }

        let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
        for c in &lp.constraints {
            let mut a = vec![Rational::zero(); ny];
            let mut rhs = c.rhs.clone();
            for (j, coef) in c.coeffs.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                match &map[j] {
                    VarMap::Shift { col, offset } => {
                        a[*col] += coef;
                        rhs -= coef * offset;
                    }
                    VarMap::Reflect { col, offset } => {
                        a[*col] -= coef;
                        rhs -= coef * offset;
                    }
                    VarMap::Free { pos, neg } => {
                        a[*pos] += coef;
                        a[*neg] -= coef;
                    }
                }
            }
            rows.push((a, c.relation, rhs));
        }
        for (col, cap) in bound_rows {
            let mut a = vec![Rational::zero(); ny];
            a[col] = Rational::from_integer(1.into());
            rows.push((a, Relation::Le, cap));
        }

        let tab = Tableau::phase_one(ny, rows)?;
        Some(Region { num_vars: n, map, ny, tab })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Optimizes a new objective starting from the current basis.
    pub fn optimize(&mut self, sense: Sense, objective: &[Rational]) -> LpOutcome {
        assert_eq!(objective.len(), self.num_vars, "objective length");
        let flip = sense == Sense::Minimize;
        let mut c = vec![Rational::zero(); self.tab.ncols];
        let mut constant = Rational::zero();
        for (j, coef) in objective.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let coef = if flip { -coef } else { coef.clone() };
            match &self.map[j] {
                VarMap::Shift { col, offset } => {
                    c[*col] += &coef;
                    constant += &coef * offset;
                }
                VarMap::Reflect { col, offset } => {
                    c[*col] -= &coef;
                    constant += &coef * offset;
                }
                VarMap::Free { pos, neg } => {
                    c[*pos] += &coef;
                    c[*neg] -= &coef;
                }
            }
        }
        self.tab.set_objective(&c);
        if !self.tab.run(self.tab.ncols) {
            return LpOutcome::Unbounded;
        }
        let value = &self.tab.value + constant;
        let value = if flip { -value } else { value };
        LpOutcome::Optimal { value, point: self.point() }
    }

    /// The current basic feasible solution in original coordinates.
    pub fn point(&self) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.ny];
        for (i, &b) in self.tab.basis.iter().enumerate() {
            if b < self.ny {
                y[b] = self.tab.rhs[i].clone();
            }
        }
        self.map
            .iter()
            .map(|m| match m {
                VarMap::Shift { col, offset } => offset + &y[*col],
                VarMap::Reflect { col, offset } => offset - &y[*col],
                VarMap::Free { pos, neg } => &y[*pos] - &y[*neg],
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
    /// Reduced costs of the maximization objective.
    obj: Vec<Rational>,
    value: Rational,
}

impl Tableau {
    fn phase_one(ny: usize, input: Vec<(Vec<Rational>, Relation, Rational)>) -> Option<Tableau> {
        let one = Rational::from_integer(1.into());
        let m = input.len();
        // Normalize to rhs >= 0.
        let input: Vec<(Vec<Rational>, Relation, Rational)> = input
            .into_iter()
            .map(|(a, rel, b)| {
                if b.is_negative() {
                    let rel = match rel {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (a.into_iter().map(|x| -x).collect(), rel, -b)
                } else {
                    (a, rel, b)
                }
            })
            .collect();
        let slacks = input.iter().filter(|(_, r, _)| *r != Relation::Eq).count();
        let artificials = input.iter().filter(|(_, r, _)| *r != Relation::Le).count();
        let art_start = ny + slacks;
        let ncols = art_start + artificials;

        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut s, mut a) = (ny, art_start);
        for (coeffs, rel, b) in input {
            let mut row = coeffs;
            row.resize(ncols, Rational::zero());
            match rel {
                Relation::Le => {
                    row[s] = one.clone();
                    basis.push(s);
                    s += 1;
                }
                Relation::Ge => {
                    row[s] = -one.clone();
                    s += 1;
                    row[a] = one.clone();
                    basis.push(a);
                    a += 1;
                }
                Relation::Eq => {
                    row[a] = one.clone();
                    basis.push(a);
                    a += 1;
                }
            }
            rows.push(row);
            rhs.push(b);
        }
        let mut tab = Tableau { rows, rhs, basis, ncols, obj: Vec::new(), value: Rational::zero() };
        if artificials > 0 {
            let mut c = vec![Rational::zero(); ncols];
            for x in &mut c[art_start..] {
                *x = -one.clone();
            }
            tab.set_objective(&c);
            let bounded = tab.run(ncols);
            debug_assert!(bounded, "phase one is bounded by zero");
            if tab.value.is_negative() {
                return None;
            }
            tab.drive_out_artificials(art_start);
        }
        for row in &mut tab.rows {
            row.truncate(art_start);
        }
        tab.ncols = art_start;
        Some(tab)
    }

    fn drive_out_artificials(&mut self, art_start: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= art_start {
                match (0..art_start).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        // Redundant equality.
                        self.rows.remove(i);
                        self.rhs.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    fn set_objective(&mut self, c: &[Rational]) {
        let mut obj = c[..self.ncols].to_vec();
        let mut value = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &c[b];
            if cb.is_zero() {
                continue;
            }
            for (d, a) in obj.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *d -= cb * a;
                }
            }
            value += cb * &self.rhs[i];
        }
        self.obj = obj;
        self.value = value;
    }

    /// Bland's-rule primal simplex over columns `< active`. Returns false if
    /// the objective is unbounded.
    fn run(&mut self, active: usize) -> bool {
        let limit = pivot_limit();
        let mut pivots = 0u64;
        loop {
            let Some(e) = (0..active).find(|&j| self.obj[j].is_positive()) else { return true };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][e];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else { return false };
            self.pivot(r, e);
            pivots += 1;
            if let Some(limit) = limit {
                if pivots > limit {
                    panic!("LP pivot limit of {limit} exceeded");
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let inv = self.rows[r][e].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][e].is_zero() {
                continue;
            }
            let f = self.rows[i][e].clone();
            let row = &mut self.rows[i];
            for &j in &nz {
                row[j] -= &f * &pivot_row[j];
            }
            if !pivot_rhs.is_zero() {
                self.rhs[i] -= &f * &pivot_rhs;
            }
        }
        if !self.obj.is_empty() && !self.obj[e].is_zero() {
            let f = self.obj[e].clone();
            for &j in &nz {
                self.obj[j] -= &f * &pivot_row[j];
            }
            self.value += &f * &pivot_rhs;
        }
        self.rows[r] = pivot_row;
        self.basis[r] = e;
    }
}
