use num_traits::Zero;

use super::ircp::certificate;
use super::{certify_unique_ircp, enforcement_check_at, transformed_game, Certification, Refutation, UniquenessCertificate};
use crate::error::{Error, Result};
use crate::game::{Game, Profile};
use crate::polytope::{build, enumerate_pure_ne, Concept, Singleton};
use crate::rational::Rational;

/// Decides whether the CCE is a unique pure profile.
///
/// Each strict pure NE `a*` is tried in turn: the reduced game
/// `u_i(a) - u_i(a*_i, a_{-i})` has the same CCE set, and a unique IRCP there
/// hands back the weights. If no candidate certifies, the CCE polytope is
/// probed directly for two members; a mixed singleton is reported as such.
pub fn certify_unique_pure_cce(game: &Game) -> Result<Certification> {
    for (a_star, strict) in enumerate_pure_ne(game) {
        if !strict {
            continue;
        }
        let reduced = game.reduce_at(&a_star)?;
        if let Certification::Certificate(c) = certify_unique_ircp(&reduced)? {
            if c.a_star != a_star {
                return Err(Error::Internal(format!(
                    "reduced game at {:?} certified a different profile {:?}",
                    a_star.actions(),
                    c.a_star.actions()
                )));
            }
            return certificate(game, Concept::Cce, a_star, c.gamma).map(Certification::Certificate);
        }
    }
    match build(game, Concept::Cce).is_singleton()? {
        Singleton::NotSingleton(a, b) => {
            let r = Refutation {
                concept: Concept::Cce,
                witness_a: a,
                witness_b: b,
                reason: "the coarse correlated equilibrium polytope has two distinct points".into(),
            };
            r.verify(game)?;
            Ok(Certification::Refuted(r))
        }
        Singleton::Singleton(mu) if mu.is_pure().is_some() => {
            Err(Error::Internal("unique pure CCE but no strict NE certified".into()))
        }
        Singleton::Singleton(mu) => Ok(Certification::UniqueMixed(mu)),
    }
}

/// Certificate for given weights, if `gamma_i (u_i(a) - u_i(a*_i, a_{-i}))`
/// is an enforcement game at `a*`.
pub fn certify_cce_with_weights(game: &Game, a_star: &Profile, gamma: &[Rational]) -> Result<Option<UniquenessCertificate>> {
    let transformed = transformed_game(game, Concept::Cce, a_star, gamma)?;
    if !enforcement_check_at(&transformed, a_star)?.holds() {
        return Ok(None);
    }
    certificate(game, Concept::Cce, a_star.clone(), gamma.to_vec()).map(Some)
}

/// `Phi(a) = sum_i gamma_i (u_i(a) - u_i(a*_i, a_{-i}))` at profile `index`.
pub fn local_potential(game: &Game, a_star: &Profile, gamma: &[Rational], index: usize) -> Result<Rational> {
    game.profile_index(a_star.actions())?;
    if gamma.len() != game.num_players() {
        return Err(Error::Shape(format!("{} weights for {} players", gamma.len(), game.num_players())));
    }
    if index >= game.num_profiles() {
        return Err(Error::OutOfRange { index, size: game.num_profiles() });
    }
    Ok((0..game.num_players()).fold(Rational::zero(), |acc, i| {
        let d = game.payoff_at(i, index) - game.payoff_at(i, game.deviate(index, i, a_star.action(i)));
        acc + &gamma[i] * d
    }))
}

/// `min_{a != a*} -Phi(a)`; positive iff the weights certify `a*`.
pub fn potential_margin(game: &Game, a_star: &Profile, gamma: &[Rational]) -> Result<Rational> {
    let star = game.profile_index(a_star.actions())?;
    let mut best: Option<Rational> = None;
    for k in (0..game.num_profiles()).filter(|&k| k != star) {
        let m = -local_potential(game, a_star, gamma, k)?;
        if best.as_ref().is_none_or(|b| m < *b) {
            best = Some(m);
        }
    }
    best.ok_or_else(|| Error::Internal("game has a single profile".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::rational::{int, rat};
    use num_traits::Signed;

    #[test]
    fn pd_certified_at_defection() {
        let g = prisoners_dilemma();
        let c = certify_unique_pure_cce(&g).unwrap();
        let cert = c.certificate().unwrap();
        assert_eq!(cert.a_star, Profile(vec![1, 1]));
        assert_eq!(cert.gamma, vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(cert.slack, rat(1, 2));
        cert.verify(&g).unwrap();
        // Equal weights (1,1) work too: Phi < 0 on the three other profiles.
        let unit = certify_cce_with_weights(&g, &cert.a_star, &[int(1), int(1)]).unwrap().unwrap();
        assert_eq!(unit.slack, int(1));
        for k in 0..3 {
            assert!(local_potential(&g, &cert.a_star, &[int(1), int(1)], k).unwrap().is_negative());
        }
    }

    #[test]
    fn parking_certified() {
        let g = parking(3, &int(1), &rat(1, 4), &rat(3, 5)).unwrap();
        let c = certify_unique_pure_cce(&g).unwrap();
        assert_eq!(c.certificate().unwrap().a_star, Profile(vec![0, 0]));
    }

    #[test]
    fn rps_refuted() {
        let g = rock_paper_scissors();
        let c = certify_unique_pure_cce(&g).unwrap();
        c.refutation().unwrap().verify(&g).unwrap();
    }

    #[test]
    fn matching_pennies_is_unique_mixed() {
        let g = matching_pennies();
        match certify_unique_pure_cce(&g).unwrap() {
            Certification::UniqueMixed(mu) => assert_eq!(mu, crate::game::JointDistribution::uniform(&[0, 1, 2, 3])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_weights_rejected() {
        let g = prisoners_dilemma();
        assert!(certify_cce_with_weights(&g, &Profile(vec![0, 0]), &[int(1), int(1)]).unwrap().is_none());
        assert!(!potential_margin(&g, &Profile(vec![0, 0]), &[int(1), int(1)]).unwrap().is_positive());
    }
}
