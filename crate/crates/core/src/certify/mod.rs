//! Uniqueness certificates and refutations.
//!
//! A [`UniquenessCertificate`] carries the welfare weights `gamma` and the
//! enforcement game they produce; a [`Refutation`] carries two distinct
//! members of the polytope in question. Both serialize to JSON and can be
//! re-checked from the game alone (see [`crate::report`]).

mod cce;
mod classify;
mod enforcement;
mod gue;
mod hull;
mod ircp;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::game::{Game, JointDistribution, OpponentShift, Profile};
use crate::io::{distribution_from_json, distribution_to_json, rational_from_value, rationals_from_json, rationals_to_json};
use crate::polytope::Concept;
use crate::rational::{format_rational, Rational};

pub use cce::{certify_cce_with_weights, certify_unique_pure_cce, local_potential, potential_margin};
pub use classify::{
    classify_extreme_ne, classify_unique_cce, combinatorics_bound, induced_subgame, is_matching_pennies_type,
    is_quasi_strict, quasi_strictness_certificate, CceClassification, QuasiStrictnessCertificate,
};
pub use enforcement::{check_enforcement, enforcement_check_at, EnforcementCheck, EnforcementVerdict};
pub use gue::{dominating_lottery, is_gue, is_strict_fractional_gue};
pub use hull::{conv_ne_vs_ircp, HullComparison};
pub use ircp::{certify_ircp_with_weights, certify_unique_ircp};

#[derive(Clone, Debug, PartialEq)]
pub struct UniquenessCertificate {
    pub concept: Concept,
    pub a_star: Profile,
    pub gamma: Vec<Rational>,
    /// `min_{a != a*} -sum_i gamma_i d_i(a)`, where `d_i(a)` is
    /// `u_i(a) - u_i(a*)` for IRCP and `u_i(a) - u_i(a*_i, a_{-i})` for CCE.
    pub slack: Rational,
    pub transformed_game: Game,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Refutation {
    pub concept: Concept,
    pub witness_a: JointDistribution,
    pub witness_b: JointDistribution,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certification {
    Certificate(UniquenessCertificate),
    Refuted(Refutation),
    /// The CCE is unique but mixed, so there is neither a pure certificate
    /// nor a pair of distinct members.
    UniqueMixed(JointDistribution),
}

impl Certification {
    pub fn certificate(&self) -> Option<&UniquenessCertificate> {
        match self {
            Certification::Certificate(c) => Some(c),
            _ => None,
        }
    }

    pub fn refutation(&self) -> Option<&Refutation> {
        match self {
            Certification::Refuted(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Certification::Certificate(c) => c.to_json(),
            Certification::Refuted(r) => r.to_json(),
            Certification::UniqueMixed(mu) => json!({"concept": "cce", "unique_mixed": distribution_to_json(mu)}),
        }
    }
}

/// The game transformed by a certificate's weights: an enforcement game at
/// `a_star` whenever the certificate is valid.
pub fn transformed_game(game: &Game, concept: Concept, a_star: &Profile, gamma: &[Rational]) -> Result<Game> {
    let star = game.profile_index(a_star.actions())?;
    match concept {
        Concept::Ircp => {
            let beta: Vec<Rational> = (0..game.num_players()).map(|i| -game.payoff_at(i, star).clone()).collect();
            game.affine_transform(gamma, &beta)
        }
        Concept::Cce => {
            let shift = OpponentShift::from_fn(game, |i, k| -game.payoff_at(i, game.deviate(k, i, a_star.action(i))).clone());
            game.strategic_transform(gamma, &shift)
        }
        Concept::Ce => Err(Error::InvalidParameter("certificates exist for ircp and cce only".into())),
    }
}

impl UniquenessCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "concept": self.concept.name(),
            "a_star": self.a_star.actions(),
            "gamma": rationals_to_json(&self.gamma),
            "slack": format_rational(&self.slack),
        })
    }

    /// Rebuilds a certificate from JSON and the game it refers to. The
    /// transformed game is recomputed, not read.
    pub fn from_json(game: &Game, v: &Value) -> Result<Self> {
        let concept: Concept = v["concept"]
            .as_str()
            .ok_or_else(|| Error::Format("certificate lacks \"concept\"".into()))?
            .parse()?;
        let a_star = Profile(
            v["a_star"]
                .as_array()
                .ok_or_else(|| Error::Format("certificate lacks \"a_star\"".into()))?
                .iter()
                .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| Error::Format("bad a_star entry".into())))
                .collect::<Result<Vec<_>>>()?,
        );
        let gamma = rationals_from_json(&v["gamma"])?;
        let slack = rational_from_value(&v["slack"])?;
        let transformed_game = transformed_game(game, concept, &a_star, &gamma)?;
        Ok(UniquenessCertificate { concept, a_star, gamma, slack, transformed_game })
    }

    /// Re-checks the certificate against `game`: the transformed game is an
    /// enforcement game at `a_star` and the stated slack is the exact margin.
    pub fn verify(&self, game: &Game) -> Result<()> {
        let rebuilt = transformed_game(game, self.concept, &self.a_star, &self.gamma)?;
        if rebuilt != self.transformed_game {
            return Err(Error::Internal("transformed game does not match the weights".into()));
        }
        let check = enforcement_check_at(&rebuilt, &self.a_star)?;
        if !check.holds() {
            return Err(Error::Internal(format!("transformed game is not an enforcement game: {check:?}")));
        }
        let margin = welfare_margin(&rebuilt, &self.a_star)?;
        if margin != self.slack {
            return Err(Error::Internal(format!("stated slack {} but margin is {}", self.slack, margin)));
        }
        Ok(())
    }
}

/// `min_{a != a*} -sum_i v_i(a)`.
pub(crate) fn welfare_margin(game: &Game, a_star: &Profile) -> Result<Rational> {
    let star = game.profile_index(a_star.actions())?;
    let mut best: Option<Rational> = None;
    for k in (0..game.num_profiles()).filter(|&k| k != star) {
        let w: Rational = -(0..game.num_players()).fold(Rational::zero(), |acc, i| acc + game.payoff_at(i, k));
        if best.as_ref().is_none_or(|b| w < *b) {
            best = Some(w);
        }
    }
    best.ok_or_else(|| Error::Internal("game has a single profile".into()))
}

impl Refutation {
    pub fn to_json(&self) -> Value {
        json!({
            "concept": self.concept.name(),
            "witnesses": [distribution_to_json(&self.witness_a), distribution_to_json(&self.witness_b)],
            "reason": self.reason,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let concept: Concept = v["concept"]
            .as_str()
            .ok_or_else(|| Error::Format("refutation lacks \"concept\"".into()))?
            .parse()?;
        let w = v["witnesses"]
            .as_array()
            .filter(|w| w.len() == 2)
            .ok_or_else(|| Error::Format("refutation needs exactly two witnesses".into()))?;
        Ok(Refutation {
            concept,
            witness_a: distribution_from_json(&w[0])?,
            witness_b: distribution_from_json(&w[1])?,
            reason: v["reason"].as_str().unwrap_or_default().to_string(),
        })
    }

    /// Both witnesses are members and they differ.
    pub fn verify(&self, game: &Game) -> Result<()> {
        if self.witness_a == self.witness_b {
            return Err(Error::Internal("refutation witnesses coincide".into()));
        }
        let spec = crate::polytope::build(game, self.concept);
        for w in [&self.witness_a, &self.witness_b] {
            if let Some(&k) = w.support().last() {
                if k >= game.num_profiles() {
                    return Err(Error::OutOfRange { index: k, size: game.num_profiles() });
                }
            }
            if !spec.membership(w).is_member() {
                return Err(Error::Internal(format!("witness is not a {} member", self.concept)));
            }
        }
        Ok(())
    }
}
