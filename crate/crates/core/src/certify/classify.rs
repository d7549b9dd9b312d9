use num_traits::Zero;

use super::{certify_unique_pure_cce, Certification, Refutation, UniquenessCertificate};
use crate::error::{Error, Result};
use crate::game::{Game, JointDistribution, MixedAction, Profile};
use crate::polytope::{build, is_nash_mixed, pure_action_values, Concept, Singleton};
use crate::rational::Rational;
use crate::zerosum::{build_lemma3_auxiliary, lemma3_columns, strict_complementary_strategy};

#[derive(Clone, Debug, PartialEq)]
pub enum CceClassification {
    UniquePure { a_star: Profile, certificate: UniquenessCertificate },
    /// Exactly two players mix, each over two actions; `subgame` is the 2x2
    /// game they play with everyone else fixed.
    UniqueMixed2x2 { players: (usize, usize), subgame: Game, ne: JointDistribution },
    NotUnique(Refutation),
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuasiStrictnessCertificate {
    /// Weight of each player in the Minimizer's strategy.
    pub eta: Vec<Rational>,
    /// Per-player conditional strategies; their product is the CCE.
    pub sigma: Vec<MixedAction>,
}

fn product_of(game: &Game, nu: &JointDistribution) -> Result<Vec<MixedAction>> {
    if let Some(&k) = nu.support().last() {
        if k >= game.num_profiles() {
            return Err(Error::OutOfRange { index: k, size: game.num_profiles() });
        }
    }
    nu.as_product(game)
        .ok_or_else(|| Error::Precondition("distribution is not a product of mixed actions".into()))
}

/// A Nash equilibrium whose incentive constraints outside the support are
/// all slack.
pub fn is_quasi_strict(game: &Game, nu: &JointDistribution) -> Result<bool> {
    let mixes = product_of(game, nu)?;
    if !is_nash_mixed(game, &mixes) {
        return Ok(false);
    }
    Ok((0..game.num_players()).all(|i| {
        let values = pure_action_values(game, i, &mixes);
        let best = values.iter().max().expect("at least two actions");
        (0..values.len()).all(|b| !mixes[i].weights[b].is_zero() || values[b] < *best)
    }))
}

/// Factors the Minimizer's strict-complementary strategy of the zero-sum
/// game "Maximizer picks `b`, Minimizer picks `(i, a_i)`" as
/// `eta(i) sigma_i(a_i)` and checks that `sigma` reproduces `mu`.
pub fn quasi_strictness_certificate(game: &Game, mu: &JointDistribution) -> Result<QuasiStrictnessCertificate> {
    let aux = build_lemma3_auxiliary(game);
    let tau = strict_complementary_strategy(&aux);
    let n = game.num_players();
    let mut eta = vec![Rational::zero(); n];
    for (&(i, _), t) in lemma3_columns(game).iter().zip(&tau.weights) {
        eta[i] += t;
    }
    if let Some(i) = (0..n).find(|&i| eta[i].is_zero()) {
        return Err(Error::Precondition(format!(
            "player {} carries no weight in the strict-complementary strategy; the CCE is not unique",
            i + 1
        )));
    }
    let mut sigma = Vec::with_capacity(n);
    let mut col = 0;
    for i in 0..n {
        let k = game.num_actions(i);
        let weights = tau.weights[col..col + k].iter().map(|t| t / &eta[i]).collect();
        sigma.push(MixedAction::new(i, weights)?);
        col += k;
    }
    if JointDistribution::product(game, &sigma)? != *mu {
        return Err(Error::Precondition("factored strategy differs from the given distribution".into()));
    }
    Ok(QuasiStrictnessCertificate { eta, sigma })
}

/// `a > c, d > b, f > e, g > h` under some relabeling of each player's two
/// actions, with payoffs laid out as `u1 = [a, b, c, d]`, `u2 = [e, f, g, h]`.
pub fn is_matching_pennies_type(g2: &Game) -> bool {
    if g2.shape() != [2, 2] {
        return false;
    }
    for s1 in 0..2 {
        for s2 in 0..2 {
            let u = |i: usize, r: usize, c: usize| g2.payoff(i, &[r ^ s1, c ^ s2]).clone();
            if u(0, 0, 0) > u(0, 1, 0) && u(0, 1, 1) > u(0, 0, 1) && u(1, 0, 1) > u(1, 0, 0) && u(1, 1, 0) > u(1, 1, 1) {
                return true;
            }
        }
    }
    false
}

/// `prod k_i <= 1 + sum k_i` for support sizes `k_i >= 2`.
pub fn combinatorics_bound(k: &[u64]) -> Result<bool> {
    if let Some(&x) = k.iter().find(|&&x| x < 2) {
        return Err(Error::InvalidParameter(format!("support size {x} is below 2")));
    }
    let sum: u128 = 1 + k.iter().map(|&x| x as u128).sum::<u128>();
    let mut prod: u128 = 1;
    for &x in k {
        prod = prod.saturating_mul(x as u128);
        if prod > sum {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Predicted extremality (pure, or two players each mixing over two
/// actions) against the measured one in the CCE polytope.
pub fn classify_extreme_ne(game: &Game, nu: &JointDistribution) -> Result<(bool, bool)> {
    if !is_quasi_strict(game, nu)? {
        return Err(Error::Precondition("distribution is not a quasi-strict Nash equilibrium".into()));
    }
    let mixes = product_of(game, nu)?;
    let sizes: Vec<usize> = mixes.iter().map(|m| m.support().len()).filter(|&s| s > 1).collect();
    let predicted = sizes.is_empty() || sizes == [2, 2];
    let measured = build(game, Concept::Cce).is_extreme_point(nu)?;
    Ok((predicted, measured))
}

/// The 2x2 game played by the two mixing players of `mu` on their supports,
/// with the others held at their pure actions.
pub fn induced_subgame(game: &Game, mu: &JointDistribution) -> Result<(usize, usize, Game)> {
    let mixes = product_of(game, mu)?;
    let supports: Vec<Vec<usize>> = mixes.iter().map(|m| m.support()).collect();
    let mixing: Vec<usize> = (0..game.num_players()).filter(|&i| supports[i].len() > 1).collect();
    if mixing.len() != 2 || mixing.iter().any(|&i| supports[i].len() != 2) {
        return Err(Error::Precondition(format!(
            "expected two players mixing over two actions each, support sizes are {:?}",
            supports.iter().map(Vec::len).collect::<Vec<_>>()
        )));
    }
    let (p, q) = (mixing[0], mixing[1]);
    let base: Vec<usize> = supports.iter().map(|s| s[0]).collect();
    let labels = vec![
        supports[p].iter().map(|&a| game.action_label(p, a).to_string()).collect(),
        supports[q].iter().map(|&a| game.action_label(q, a).to_string()).collect(),
    ];
    let mut payoffs = vec![Vec::with_capacity(4), Vec::with_capacity(4)];
    for &x in &supports[p] {
        for &y in &supports[q] {
            let mut prof = base.clone();
            prof[p] = x;
            prof[q] = y;
            payoffs[0].push(game.payoff(p, &prof).clone());
            payoffs[1].push(game.payoff(q, &prof).clone());
        }
    }
    Ok((p, q, Game::new(None, labels, payoffs)?))
}

/// Unique-CCE classification: a certified pure profile, a 2x2
/// matching-pennies-type mixed equilibrium, or two distinct CCE.
pub fn classify_unique_cce(game: &Game) -> Result<CceClassification> {
    let mu = match build(game, Concept::Cce).is_singleton()? {
        Singleton::NotSingleton(a, b) => {
            let r = Refutation {
                concept: Concept::Cce,
                witness_a: a,
                witness_b: b,
                reason: "the coarse correlated equilibrium polytope has two distinct points".into(),
            };
            r.verify(game)?;
            return Ok(CceClassification::NotUnique(r));
        }
        Singleton::Singleton(mu) => mu,
    };
    if mu.is_pure().is_some() {
        return match certify_unique_pure_cce(game)? {
            Certification::Certificate(c) => Ok(CceClassification::UniquePure { a_star: c.a_star.clone(), certificate: c }),
            other => Err(Error::Internal(format!("unique pure CCE without a certificate: {other:?}"))),
        };
    }
    let (p, q, subgame) = induced_subgame(game, &mu)
        .map_err(|e| Error::Internal(format!("unique mixed CCE of the wrong shape: {e}")))?;
    if !is_matching_pennies_type(&subgame) {
        return Err(Error::Internal("unique mixed CCE whose 2x2 game is not of matching-pennies type".into()));
    }
    if !is_quasi_strict(game, &mu)? {
        return Err(Error::Internal("unique mixed CCE is not quasi-strict".into()));
    }
    Ok(CceClassification::UniqueMixed2x2 { players: (p, q), subgame, ne: mu })
}
