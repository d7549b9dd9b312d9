use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{Game, JointDistribution, Profile};
use crate::lp::{self, LinearProgram, LpOutcome, Relation, Sense};
use crate::polytope::to_distribution;
use crate::rational::Rational;

fn guarantee(game: &Game, star: usize) -> bool {
    (0..game.num_players()).all(|i| {
        let a = game.action_at(star, i);
        let target = game.payoff_at(i, star);
        (0..game.num_opponent_profiles(i)).all(|o| game.payoff_at(i, game.join_opponent(i, o, a)) >= target)
    })
}

fn dominates(game: &Game, k: usize, star: usize) -> bool {
    let n = game.num_players();
    (0..n).all(|i| game.payoff_at(i, k) >= game.payoff_at(i, star))
        && (0..n).any(|i| game.payoff_at(i, k) > game.payoff_at(i, star))
}

/// Pure Pareto optimality (weak dominance, strict somewhere) plus the
/// unilateral guarantee `u_i(a*_i, a_{-i}) >= u_i(a*)`.
pub fn is_gue(game: &Game, a_star: &Profile) -> Result<bool> {
    let star = game.profile_index(a_star.actions())?;
    Ok(guarantee(game, star) && !(0..game.num_profiles()).any(|k| dominates(game, k, star)))
}

/// Variables `mu` over profiles, then `extra` free-sign columns.
fn lottery_lp(game: &Game, extra: usize) -> LinearProgram {
    let m = game.num_profiles();
    let mut lp = LinearProgram::new(m + extra);
    let mut simplex = vec![Rational::one(); m];
    simplex.resize(m + extra, Rational::zero());
    lp.add(simplex, Relation::Eq, Rational::one());
    lp
}

/// `max sum_i s_i` subject to `E_mu u_i >= u_i(a*) + s_i`, `s >= 0`.
fn dominance_lp(game: &Game, star: usize) -> LpOutcome {
    let (m, n) = (game.num_profiles(), game.num_players());
    let mut lp = lottery_lp(game, n);
    for i in 0..n {
        let mut row: Vec<Rational> = game.payoffs_of(i).to_vec();
        row.resize(m + n, Rational::zero());
        row[m + i] = -Rational::one();
        lp.add(row, Relation::Ge, game.payoff_at(i, star).clone());
    }
    let mut obj = vec![Rational::zero(); m];
    obj.resize(m + n, Rational::one());
    lp.set_objective(Sense::Maximize, obj);
    lp::solve(&lp)
}

/// Fractional Pareto optimality by the dominance LP, strictness by
/// minimizing `mu(a*)` over lotteries with payoff vector `u(a*)`, plus the
/// unilateral guarantee.
pub fn is_strict_fractional_gue(game: &Game, a_star: &Profile) -> Result<bool> {
    let star = game.profile_index(a_star.actions())?;
    if !guarantee(game, star) {
        return Ok(false);
    }
    match dominance_lp(game, star) {
        LpOutcome::Optimal { value, .. } if value.is_zero() => {}
        LpOutcome::Optimal { .. } => return Ok(false),
        other => return Err(Error::Internal(format!("dominance LP returned {other:?}"))),
    }
    let m = game.num_profiles();
    let mut lp = lottery_lp(game, 0);
    for i in 0..game.num_players() {
        lp.add(game.payoffs_of(i).to_vec(), Relation::Eq, game.payoff_at(i, star).clone());
    }
    let mut e = vec![Rational::zero(); m];
    e[star] = Rational::one();
    lp.set_objective(Sense::Minimize, e);
    match lp::solve(&lp) {
        LpOutcome::Optimal { value, .. } => Ok(value == Rational::one()),
        other => Err(Error::Internal(format!("strictness LP returned {other:?}"))),
    }
}

/// A lottery whose payoff vector Pareto-dominates `u(a*)`, with that payoff
/// vector. The lottery maximizing the smallest gain is preferred; if no
/// player can gain strictly everywhere at once, the dominance LP's optimum
/// is used.
pub fn dominating_lottery(game: &Game, a_star: &Profile) -> Result<Option<(JointDistribution, Vec<Rational>)>> {
    let star = game.profile_index(a_star.actions())?;
    let (m, n) = (game.num_profiles(), game.num_players());
    let mut lp = lottery_lp(game, 1);
    lp.set_free(m);
    for i in 0..n {
        let mut row: Vec<Rational> = game.payoffs_of(i).to_vec();
        row.push(-Rational::one());
        lp.add(row, Relation::Ge, game.payoff_at(i, star).clone());
    }
    let mut obj = vec![Rational::zero(); m];
    obj.push(Rational::one());
    lp.set_objective(Sense::Maximize, obj);
    let point = match lp::solve(&lp) {
        LpOutcome::Optimal { value, point } if value.is_positive() => point,
        LpOutcome::Optimal { .. } => match dominance_lp(game, star) {
            LpOutcome::Optimal { value, point } if value.is_positive() => point,
            LpOutcome::Optimal { .. } => return Ok(None),
            other => return Err(Error::Internal(format!("dominance LP returned {other:?}"))),
        },
        other => return Err(Error::Internal(format!("max-min LP returned {other:?}"))),
    };
    let mu = to_distribution(&point[..m])?;
    let payoffs = (0..n).map(|i| game.expected_payoff(i, &mu)).collect();
    Ok(Some((mu, payoffs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::rational::{int, rat};

    #[test]
    fn table3() {
        let g = crate::generators::table3();
        let a = Profile(vec![0, 0]);
        assert!(is_gue(&g, &a).unwrap());
        assert!(!is_gue(&g, &Profile(vec![1, 1])).unwrap());
        assert!(!is_strict_fractional_gue(&g, &a).unwrap());
        let (mu, pay) = dominating_lottery(&g, &a).unwrap().unwrap();
        assert_eq!(mu, JointDistribution::new([(4, rat(1, 2)), (8, rat(1, 2))]).unwrap());
        assert_eq!(pay, vec![rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn parking_strict_fractional() {
        let g = parking(3, &int(1), &rat(1, 4), &rat(3, 5)).unwrap();
        assert!(is_strict_fractional_gue(&g, &Profile(vec![0, 0])).unwrap());
        assert!(dominating_lottery(&g, &Profile(vec![0, 0])).unwrap().is_none());
    }

    #[test]
    fn pd_defection_dominated() {
        let g = prisoners_dilemma();
        let d = Profile(vec![1, 1]);
        assert!(!is_gue(&g, &d).unwrap());
        assert!(!is_strict_fractional_gue(&g, &d).unwrap());
    }
}
