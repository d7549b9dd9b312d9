use num_traits::{One, Signed, Zero};

use super::{enforcement_check_at, transformed_game, welfare_margin, Certification, Refutation, UniquenessCertificate};
use crate::error::{Error, Result};
use crate::game::{Game, JointDistribution, MixedAction, Profile};
use crate::polytope::{build_ircp, pure_action_values, Concept, PolytopeSpec, Singleton};
use crate::rational::Rational;
use crate::zerosum::{build_theorem1_auxiliary, maximin, theorem1_row_profile, MaximinResult};

/// A pure action attaining player `i`'s maximin level against every
/// opponent profile.
fn pure_maximin_action(game: &Game, i: usize, level: &Rational) -> Option<usize> {
    (0..game.num_actions(i)).find(|&a| {
        (0..game.num_opponent_profiles(i)).all(|o| game.payoff_at(i, game.join_opponent(i, o, a)) >= level)
    })
}

fn refute(spec: &PolytopeSpec, a: JointDistribution, b: JointDistribution, reason: String) -> Result<Certification> {
    let r = Refutation { concept: Concept::Ircp, witness_a: a, witness_b: b, reason };
    r.verify(&spec.game)?;
    Ok(Certification::Refuted(r))
}

/// Decides whether the IRCP is unique.
///
/// The candidate `a*` collects pure maximin actions. If some player has none,
/// or some player's level is slack at `a*`, two members are built directly.
/// Otherwise the zero-sum game "Maximizer picks `a != a*`, Minimizer picks a
/// player, payoff `u_i(a) - u_i(a*)`" decides: a negative value yields the
/// weights, a nonnegative one yields a second member.
pub fn certify_unique_ircp(game: &Game) -> Result<Certification> {
    let n = game.num_players();
    let levels: Vec<MaximinResult> = (0..n).map(|i| maximin(game, i)).collect();
    let spec = build_ircp(game, levels.iter().map(|m| m.value.clone()).collect());

    let mut star_actions = Vec::with_capacity(n);
    for i in 0..n {
        match pure_maximin_action(game, i, &levels[i].value) {
            Some(a) => star_actions.push(a),
            None => {
                let mixes: Vec<MixedAction> = levels.iter().map(|m| m.strategy.clone()).collect();
                let product = JointDistribution::product(game, &mixes)?;
                let values = pure_action_values(game, i, &mixes);
                let best = (0..values.len()).max_by(|&x, &y| values[x].cmp(&values[y]).then(y.cmp(&x))).unwrap();
                let mut deviated = mixes.clone();
                deviated[i] = MixedAction::pure(i, game.num_actions(i), best);
                let other = JointDistribution::product(game, &deviated)?;
                return refute(
                    &spec,
                    product,
                    other,
                    format!("player {} has no pure maximin action; the maximin product and a best response to it are both individually rational", i + 1),
                );
            }
        }
    }
    let a_star = Profile(star_actions);
    let star = game.index_unchecked(a_star.actions());

    for i in 0..n {
        let here = game.payoff_at(i, star);
        if *here > levels[i].value {
            let alt = (0..game.num_actions(i)).find(|&a| a != a_star.action(i)).expect("two actions");
            let b = game.deviate(star, i, alt);
            let there = game.payoff_at(i, b);
            let eps = if *there >= levels[i].value {
                Rational::one()
            } else {
                (here - &levels[i].value) / (here - there)
            };
            let mixed = JointDistribution::point_mass(star).mix(&JointDistribution::point_mass(b), &eps)?;
            return refute(
                &spec,
                JointDistribution::point_mass(star),
                mixed,
                format!("player {} gets {} at {} above the maximin level {}", i + 1, here, game.profile_label(star), levels[i].value),
            );
        }
    }

    let aux = build_theorem1_auxiliary(game, &a_star)?;
    let sol = aux.solve()?;
    if !sol.value.is_negative() {
        let mu = JointDistribution::new(
            sol.row_strategy
                .iter()
                .enumerate()
                .filter(|(_, w)| !w.is_zero())
                .map(|(r, w)| (theorem1_row_profile(game, &a_star, r), w.clone())),
        )?;
        return refute(
            &spec,
            JointDistribution::point_mass(star),
            mu,
            format!("some distribution avoiding {} gives every player at least the maximin level", game.profile_label(star)),
        );
    }

    let gamma = positive_weights(&aux.payoff, sol.col_strategy, &sol.value);
    let cert = certificate(game, Concept::Ircp, a_star, gamma)?;
    match spec.is_singleton()? {
        Singleton::Singleton(mu) if mu == JointDistribution::point_mass(star) => Ok(Certification::Certificate(cert)),
        other => Err(Error::Internal(format!("certificate issued but the IRCP polytope disagrees: {other:?}"))),
    }
}

/// Moves optimal Minimizer weights into the interior of the simplex while
/// keeping every row of `payoff . gamma` negative.
pub(crate) fn positive_weights(payoff: &[Vec<Rational>], gamma: Vec<Rational>, value: &Rational) -> Vec<Rational> {
    if gamma.iter().all(|g| g.is_positive()) {
        return gamma;
    }
    let n = gamma.len();
    let nn = Rational::from_integer((n as i64).into());
    // Largest row value under uniform weights.
    let d = payoff
        .iter()
        .map(|row| row.iter().fold(Rational::zero(), |acc, x| acc + x) / &nn)
        .max()
        .expect("nonempty matrix");
    let half = Rational::new(1.into(), 2.into());
    let t = if d > *value { (-value / (&d - value) * &half).min(half.clone()) } else { half };
    gamma.into_iter().map(|g| (Rational::one() - &t) * g + &t / &nn).collect()
}

pub(crate) fn certificate(game: &Game, concept: Concept, a_star: Profile, gamma: Vec<Rational>) -> Result<UniquenessCertificate> {
    let transformed = transformed_game(game, concept, &a_star, &gamma)?;
    let check = enforcement_check_at(&transformed, &a_star)?;
    if !check.holds() {
        return Err(Error::Internal(format!("weights do not produce an enforcement game: {check:?}")));
    }
    let slack = welfare_margin(&transformed, &a_star)?;
    Ok(UniquenessCertificate { concept, a_star, gamma, slack, transformed_game: transformed })
}

/// Certificate for given weights, if `gamma_i (u_i - u_i(a*))` is an
/// enforcement game at `a*`.
pub fn certify_ircp_with_weights(game: &Game, a_star: &Profile, gamma: &[Rational]) -> Result<Option<UniquenessCertificate>> {
    let transformed = transformed_game(game, Concept::Ircp, a_star, gamma)?;
    if !enforcement_check_at(&transformed, a_star)?.holds() {
        return Ok(None);
    }
    certificate(game, Concept::Ircp, a_star.clone(), gamma.to_vec()).map(Some)
}
