//! CE, CCE and IRCP polytopes over profile probabilities, and the exact
//! tests run on them.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{Game, JointDistribution, MixedAction, Profile};
use crate::linalg;
use crate::lp::{LinearProgram, LpOutcome, Region, Relation, Sense};
use crate::rational::Rational;
use crate::zerosum::maximin;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Concept {
    Ce,
    Cce,
    Ircp,
}

impl Concept {
    pub fn name(self) -> &'static str {
        match self {
            Concept::Ce => "ce",
            Concept::Cce => "cce",
            Concept::Ircp => "ircp",
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Concept {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ce" => Ok(Concept::Ce),
            "cce" => Ok(Concept::Cce),
            "ircp" => Ok(Concept::Ircp),
            other => Err(Error::InvalidParameter(format!("unknown concept `{other}`"))),
        }
    }
}

/// Which incentive constraint a row encodes. Players and actions are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RowId {
    /// Player commits to `action` ex ante instead of following.
    Cce { player: usize, action: usize },
    /// Player told `from` plays `to` instead.
    Ce { player: usize, from: usize, to: usize },
    /// Player receives at least the maximin level.
    Ircp { player: usize },
}

impl fmt::Display for RowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowId::Cce { player, action } => write!(f, "player {} deviating to action {}", player + 1, action),
            RowId::Ce { player, from, to } => {
                write!(f, "player {} told action {} deviating to {}", player + 1, from, to)
            }
            RowId::Ircp { player } => write!(f, "player {} individual rationality", player + 1),
        }
    }
}

/// `coeffs . mu >= rhs`
#[derive(Clone, Debug, PartialEq)]
pub struct IncentiveRow {
    pub id: RowId,
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl IncentiveRow {
    pub fn slack(&self, mu: &JointDistribution) -> Rational {
        mu.iter().fold(-self.rhs.clone(), |acc, (k, w)| acc + w * &self.coeffs[*k])
    }
}

/// The polytope `{mu in Delta(A) : every row holds}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolytopeSpec {
    pub concept: Concept,
    pub game: Game,
    pub rows: Vec<IncentiveRow>,
    /// Maximin levels, for IRCP.
    pub maximin: Option<Vec<Rational>>,
}

pub fn build(game: &Game, concept: Concept) -> PolytopeSpec {
    let size = game.num_profiles();
    let mut rows = Vec::new();
    match concept {
        Concept::Cce => {
            for i in 0..game.num_players() {
                for action in 0..game.num_actions(i) {
                    let coeffs = (0..size)
                        .map(|k| game.payoff_at(i, k) - game.payoff_at(i, game.deviate(k, i, action)))
                        .collect();
                    rows.push(IncentiveRow { id: RowId::Cce { player: i, action }, coeffs, rhs: Rational::zero() });
                }
            }
        }
        Concept::Ce => {
            for i in 0..game.num_players() {
                for from in 0..game.num_actions(i) {
                    for to in (0..game.num_actions(i)).filter(|&t| t != from) {
                        let coeffs = (0..size)
                            .map(|k| {
                                if game.action_at(k, i) == from {
                                    game.payoff_at(i, k) - game.payoff_at(i, game.deviate(k, i, to))
                                } else {
                                    Rational::zero()
                                }
                            })
                            .collect();
                        rows.push(IncentiveRow { id: RowId::Ce { player: i, from, to }, coeffs, rhs: Rational::zero() });
                    }
                }
            }
        }
        Concept::Ircp => {
            let values: Vec<Rational> = (0..game.num_players()).map(|i| maximin(game, i).value).collect();
            return build_ircp(game, values);
        }
    }
    PolytopeSpec { concept, game: game.clone(), rows, maximin: None }
}

/// The IRCP polytope for already computed maximin levels.
pub fn build_ircp(game: &Game, levels: Vec<Rational>) -> PolytopeSpec {
    let rows = levels
        .iter()
        .enumerate()
        .map(|(i, v)| IncentiveRow { id: RowId::Ircp { player: i }, coeffs: game.payoffs_of(i).to_vec(), rhs: v.clone() })
        .collect();
    PolytopeSpec { concept: Concept::Ircp, game: game.clone(), rows, maximin: Some(levels) }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub row: RowId,
    /// Negative: `coeffs . mu - rhs`.
    pub slack: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    Member,
    Violations(Vec<Violation>),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Singleton {
    Singleton(JointDistribution),
    NotSingleton(JointDistribution, JointDistribution),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WinklerReport {
    pub support_size: usize,
    /// Rank of the binding incentive rows.
    pub active_rank: usize,
    pub bound_holds: bool,
}

impl PolytopeSpec {
    pub fn dimension(&self) -> usize {
        self.game.num_profiles()
    }

    pub fn to_lp(&self) -> LinearProgram {
        let n = self.dimension();
        let mut lp = LinearProgram::new(n);
        for row in &self.rows {
            lp.add(row.coeffs.clone(), Relation::Ge, row.rhs.clone());
        }
        lp.add(vec![Rational::one(); n], Relation::Eq, Rational::one());
        lp
    }

    pub fn membership(&self, mu: &JointDistribution) -> Membership {
        let violations: Vec<Violation> = self
            .rows
            .iter()
            .filter_map(|r| {
                let slack = r.slack(mu);
                slack.is_negative().then_some(Violation { row: r.id, slack })
            })
            .collect();
        if violations.is_empty() {
            Membership::Member
        } else {
            Membership::Violations(violations)
        }
    }

    fn region(&self) -> Result<Region> {
        Region::new(&self.to_lp())
            .ok_or_else(|| Error::Internal(format!("{} polytope is empty", self.concept)))
    }

    /// Exact minimum and maximum of `mu(p)` over the polytope.
    pub fn coordinate_bounds(&self, p: &Profile) -> Result<(Rational, Rational)> {
        let k = self.game.profile_index(p.actions())?;
        let mut region = self.region()?;
        let mut e = vec![Rational::zero(); self.dimension()];
        e[k] = Rational::one();
        let lo = optimal_value(region.optimize(Sense::Minimize, &e))?;
        let hi = optimal_value(region.optimize(Sense::Maximize, &e))?;
        Ok((lo, hi))
    }

    /// Finds a member `mu0`, then maximizes each coordinate from a warm start.
    /// If no coordinate can exceed its value at `mu0` the polytope is `{mu0}`,
    /// since coordinates of every member sum to one.
    pub fn is_singleton(&self) -> Result<Singleton> {
        let mut region = self.region()?;
        let mu0 = region.point();
        let n = self.dimension();
        for k in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[k] = Rational::one();
            match region.optimize(Sense::Maximize, &e) {
                LpOutcome::Optimal { value, point } => {
                    if value > mu0[k] {
                        return Ok(Singleton::NotSingleton(to_distribution(&mu0)?, to_distribution(&point)?));
                    }
                }
                other => return Err(Error::Internal(format!("coordinate LP returned {other:?}"))),
            }
        }
        Ok(Singleton::Singleton(to_distribution(&mu0)?))
    }

    /// Rows of the constraint system binding at `mu`: binding incentive rows,
    /// `mu(a) >= 0` for `a` outside the support, and the sum-to-one row.
    fn active_rows(&self, mu: &JointDistribution) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
        let n = self.dimension();
        let incentive: Vec<Vec<Rational>> =
            self.rows.iter().filter(|r| r.slack(mu).is_zero()).map(|r| r.coeffs.clone()).collect();
        let mut all = incentive.clone();
        for k in (0..n).filter(|&k| mu.get(k).is_zero()) {
            let mut e = vec![Rational::zero(); n];
            e[k] = Rational::one();
            all.push(e);
        }
        all.push(vec![Rational::one(); n]);
        (incentive, all)
    }

    pub fn is_extreme_point(&self, mu: &JointDistribution) -> Result<bool> {
        self.require_member(mu)?;
        let (_, all) = self.active_rows(mu);
        Ok(linalg::rank(&all) == self.dimension())
    }

    /// Support size against one plus the rank of the binding incentive rows.
    pub fn winkler_support_bound(&self, mu: &JointDistribution) -> Result<WinklerReport> {
        if !self.is_extreme_point(mu)? {
            return Err(Error::Precondition("distribution is not an extreme point".into()));
        }
        let (incentive, _) = self.active_rows(mu);
        let active_rank = linalg::rank(&incentive);
        let support_size = mu.support().len();
        Ok(WinklerReport { support_size, active_rank, bound_holds: support_size <= active_rank + 1 })
    }

    fn require_member(&self, mu: &JointDistribution) -> Result<()> {
        if let Some(&k) = mu.support().last() {
            if k >= self.dimension() {
                return Err(Error::OutOfRange { index: k, size: self.dimension() });
            }
        }
        match self.membership(mu) {
            Membership::Member => Ok(()),
            Membership::Violations(v) => Err(Error::Precondition(format!(
                "distribution is not in the {} polytope ({} violated rows, first: {})",
                self.concept,
                v.len(),
                v[0].row
            ))),
        }
    }
}

fn optimal_value(out: LpOutcome) -> Result<Rational> {
    match out {
        LpOutcome::Optimal { value, .. } => Ok(value),
        other => Err(Error::Internal(format!("coordinate LP returned {other:?}"))),
    }
}

pub(crate) fn to_distribution(x: &[Rational]) -> Result<JointDistribution> {
    JointDistribution::from_dense(x)
}

/// Every pure Nash equilibrium with its strictness flag.
pub fn enumerate_pure_ne(game: &Game) -> Vec<(Profile, bool)> {
    let mut out = Vec::new();
    'profiles: for k in 0..game.num_profiles() {
        let mut strict = true;
        for i in 0..game.num_players() {
            let here = game.payoff_at(i, k);
            for a in (0..game.num_actions(i)).filter(|&a| a != game.action_at(k, i)) {
                let there = game.payoff_at(i, game.deviate(k, i, a));
                if there > here {
                    continue 'profiles;
                }
                if there == here {
                    strict = false;
                }
            }
        }
        out.push((game.profile_unchecked(k), strict));
    }
    out
}

/// Expected payoff of each pure action of player `i` against the others'
/// independent mixed actions.
pub fn pure_action_values(game: &Game, i: usize, mixes: &[MixedAction]) -> Vec<Rational> {
    (0..game.num_actions(i))
        .map(|a| {
            (0..game.num_opponent_profiles(i)).fold(Rational::zero(), |acc, o| {
                let k = game.join_opponent(i, o, a);
                let w = (0..game.num_players())
                    .filter(|&j| j != i)
                    .fold(Rational::one(), |w, j| w * &mixes[j].weights[game.action_at(k, j)]);
                if w.is_zero() {
                    acc
                } else {
                    acc + w * game.payoff_at(i, k)
                }
            })
        })
        .collect()
}

/// Best-response check of independent mixed actions: every action in each
/// player's support attains that player's best pure-action value.
pub fn is_nash_mixed(game: &Game, mixes: &[MixedAction]) -> bool {
    (0..game.num_players()).all(|i| {
        let values = pure_action_values(game, i, mixes);
        let best = values.iter().max().expect("at least two actions");
        mixes[i].support().iter().all(|&a| values[a] == *best)
    })
}

/// Nash check of a product distribution; errors if `mu` is correlated.
pub fn is_nash(game: &Game, mu: &JointDistribution) -> Result<bool> {
    let mixes = mu
        .as_product(game)
        .ok_or_else(|| Error::Precondition("distribution is not a product of mixed actions".into()))?;
    Ok(is_nash_mixed(game, &mixes))
}

/// All Nash equilibria of a nondegenerate 2x2 game as product distributions,
/// pure ones first in index order, then the fully mixed one if it exists.
pub fn mixed_ne_2x2(game: &Game) -> Result<Vec<JointDistribution>> {
    if game.shape() != [2, 2] {
        return Err(Error::Shape(format!("expected a 2x2 game, got {:?}", game.shape())));
    }
    let u = |i: usize, r: usize, c: usize| game.payoff(i, &[r, c]).clone();
    for c in 0..2 {
        if u(0, 0, c) == u(0, 1, c) {
            return Err(Error::Degenerate(format!("player 1 is indifferent against column {c}")));
        }
    }
    for r in 0..2 {
        if u(1, r, 0) == u(1, r, 1) {
            return Err(Error::Degenerate(format!("player 2 is indifferent against row {r}")));
        }
    }
    let mut out: Vec<JointDistribution> = enumerate_pure_ne(game)
        .into_iter()
        .map(|(p, _)| JointDistribution::point_mass(game.index_unchecked(p.actions())))
        .collect();
    // p = P(row 0) making the column player indifferent; q = P(col 0) likewise.
    let dp = u(1, 0, 0) - u(1, 1, 0) - u(1, 0, 1) + u(1, 1, 1);
    let dq = u(0, 0, 0) - u(0, 0, 1) - u(0, 1, 0) + u(0, 1, 1);
    if !dp.is_zero() && !dq.is_zero() {
        let p = (u(1, 1, 1) - u(1, 1, 0)) / dp;
        let q = (u(0, 1, 1) - u(0, 0, 1)) / dq;
        let inside = |x: &Rational| x.is_positive() && *x < Rational::one();
        if inside(&p) && inside(&q) {
            let one = Rational::one();
            let mixes = [
                MixedAction::new(0, vec![p.clone(), &one - &p])?,
                MixedAction::new(1, vec![q.clone(), &one - &q])?,
            ];
            out.push(JointDistribution::product(game, &mixes)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::rational::{int, rat};

    fn pm(game: &Game, p: &[usize]) -> JointDistribution {
        JointDistribution::point_mass(game.profile_index(p).unwrap())
    }

    #[test]
    fn row_counts() {
        let g = random_game(&[2, 3, 2], 1, -3, 3).unwrap();
        assert_eq!(build(&g, Concept::Cce).rows.len(), 7);
        assert_eq!(build(&g, Concept::Ce).rows.len(), 2 + 6 + 2);
        assert_eq!(build(&g, Concept::Ircp).rows.len(), 3);
    }

    #[test]
    fn rps_members() {
        let g = rock_paper_scissors();
        let diag = JointDistribution::uniform(&[0, 4, 8]);
        assert!(build(&g, Concept::Cce).membership(&diag).is_member());
        assert!(!build(&g, Concept::Ce).membership(&diag).is_member());
        let rp = JointDistribution::uniform(&[1, 3]);
        assert!(build(&g, Concept::Ircp).membership(&rp).is_member());
        assert!(!build(&g, Concept::Cce).membership(&rp).is_member());
    }

    #[test]
    fn pd_membership() {
        let g = prisoners_dilemma();
        let cc = pm(&g, &[0, 0]);
        match build(&g, Concept::Cce).membership(&cc) {
            Membership::Violations(v) => {
                assert_eq!(v.len(), 2);
                assert!(v.iter().all(|x| x.slack == int(-1)));
                assert!(v.iter().any(|x| x.row == RowId::Cce { player: 0, action: 1 }));
            }
            Membership::Member => panic!("(c,c) is not a CCE"),
        }
        assert!(build(&g, Concept::Ircp).membership(&cc).is_member());
        let mp = matching_pennies();
        assert!(build(&mp, Concept::Cce).membership(&JointDistribution::uniform(&[0, 1, 2, 3])).is_member());
    }

    #[test]
    fn bounds_examples() {
        let mp = build(&matching_pennies(), Concept::Cce);
        for p in [[0, 0], [1, 0]] {
            assert_eq!(mp.coordinate_bounds(&Profile(p.to_vec())).unwrap(), (rat(1, 4), rat(1, 4)));
        }
        let pd = build(&prisoners_dilemma(), Concept::Cce);
        assert_eq!(pd.coordinate_bounds(&Profile(vec![1, 1])).unwrap(), (int(1), int(1)));
        let t2 = build(&table2(), Concept::Ircp);
        assert_eq!(t2.coordinate_bounds(&Profile(vec![0, 1])).unwrap(), (int(0), int(0)));
    }

    #[test]
    fn singleton_examples() {
        let mp = build(&matching_pennies(), Concept::Cce);
        assert_eq!(mp.is_singleton().unwrap(), Singleton::Singleton(JointDistribution::uniform(&[0, 1, 2, 3])));
        let rps = build(&rock_paper_scissors(), Concept::Cce);
        match rps.is_singleton().unwrap() {
            Singleton::NotSingleton(a, b) => {
                assert_ne!(a, b);
                assert!(rps.membership(&a).is_member() && rps.membership(&b).is_member());
            }
            s => panic!("{s:?}"),
        }
        let g = parking(3, &int(1), &rat(1, 4), &rat(3, 5)).unwrap();
        assert_eq!(build(&g, Concept::Ircp).is_singleton().unwrap(), Singleton::Singleton(pm(&g, &[0, 0])));
    }

    #[test]
    fn extremality_examples() {
        let pd = prisoners_dilemma();
        assert!(build(&pd, Concept::Cce).is_extreme_point(&pm(&pd, &[1, 1])).unwrap());
        let mp = matching_pennies();
        let uniform = JointDistribution::uniform(&[0, 1, 2, 3]);
        let spec = build(&mp, Concept::Cce);
        assert!(spec.is_extreme_point(&uniform).unwrap());
        let w = spec.winkler_support_bound(&uniform).unwrap();
        assert_eq!(w.support_size, 4);
        assert!(w.active_rank >= 3 && w.bound_holds);
        let rps = rock_paper_scissors();
        let ne = JointDistribution::uniform(&(0..9).collect::<Vec<_>>());
        assert!(!build(&rps, Concept::Ircp).is_extreme_point(&ne).unwrap());
        assert!(build(&pd, Concept::Cce).is_extreme_point(&pm(&pd, &[0, 0])).is_err());
    }

    #[test]
    fn pure_ne_examples() {
        assert_eq!(enumerate_pure_ne(&prisoners_dilemma()), vec![(Profile(vec![1, 1]), true)]);
        assert!(enumerate_pure_ne(&matching_pennies()).is_empty());
        // table2(): (a1,a2) is strict, (b1,b2) is not.
        assert_eq!(
            enumerate_pure_ne(&table2()),
            vec![(Profile(vec![0, 0]), true), (Profile(vec![1, 1]), false)]
        );
    }

    #[test]
    fn two_by_two_equilibria() {
        let mp = mixed_ne_2x2(&matching_pennies()).unwrap();
        assert_eq!(mp, vec![JointDistribution::uniform(&[0, 1, 2, 3])]);
        let pd = mixed_ne_2x2(&prisoners_dilemma()).unwrap();
        assert_eq!(pd, vec![JointDistribution::point_mass(3)]);
        assert!(matches!(mixed_ne_2x2(&table2()), Err(Error::Degenerate(_))));
        assert!(mixed_ne_2x2(&rock_paper_scissors()).is_err());
    }
}
