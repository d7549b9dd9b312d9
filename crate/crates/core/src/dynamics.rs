//! No-regret learning in self-play.
//!
//! Weight updates run in `f64`; the empirical distribution is kept as integer
//! play counts, so its regrets are exact rationals.
//!
//! - `external_mw`: multiplicative weights on full-information action
//!   payoffs, rate `eta0 / (range * sqrt(t))`.
//! - `internal_rm`: regret matching on action-pair regrets. Each player plays
//!   the stationary distribution of the switching matrix built from its
//!   positive pair regrets, or uniformly when none is positive.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::game::{Game, JointDistribution};
use crate::io::distribution_to_json;
use crate::rational::{format_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    ExternalMw,
    InternalRm,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::ExternalMw => "external_mw",
            Algorithm::InternalRm => "internal_rm",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "external_mw" | "external" | "mw" => Ok(Algorithm::ExternalMw),
            "internal_rm" | "internal" | "rm" => Ok(Algorithm::InternalRm),
            other => Err(Error::InvalidParameter(format!("unknown algorithm `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Checkpoint {
    pub step: u64,
    pub max_external_regret: Rational,
    pub max_internal_regret: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DynamicsRun {
    pub algorithm: Algorithm,
    pub steps: u64,
    pub seed: u64,
    pub learning_rate: f64,
    /// Play counts per profile index.
    pub counts: Vec<u64>,
    pub empirical: JointDistribution,
    pub max_external_regret: Rational,
    pub max_internal_regret: Rational,
    /// Regrets of the running empirical distribution at steps `1, 2, 4, ...`
    /// and at the last step.
    pub trajectory: Vec<Checkpoint>,
}

/// `max_{a'_i} sum_a mu(a) (u_i(a'_i, a_{-i}) - u_i(a))`.
pub fn external_regret(game: &Game, i: usize, mu: &JointDistribution) -> Rational {
    let here = game.expected_payoff(i, mu);
    (0..game.num_actions(i))
        .map(|b| game.deviation_payoff(i, b, mu) - &here)
        .max()
        .expect("at least one action")
}

/// `max_{from, to} sum_{a : a_i = from} mu(a) (u_i(to, a_{-i}) - u_i(a))`.
pub fn internal_regret(game: &Game, i: usize, mu: &JointDistribution) -> Rational {
    let k = game.num_actions(i);
    let mut gains = vec![vec![Rational::zero(); k]; k];
    for (&idx, w) in mu.iter() {
        let from = game.action_at(idx, i);
        let here = game.payoff_at(i, idx);
        for (to, g) in gains[from].iter_mut().enumerate() {
            *g += w * (game.payoff_at(i, game.deviate(idx, i, to)) - here);
        }
    }
    gains.into_iter().flatten().max().expect("at least one action")
}

/// Largest violation of a CE incentive row, zero for members.
pub fn ce_max_violation(game: &Game, mu: &JointDistribution) -> Rational {
    (0..game.num_players()).map(|i| internal_regret(game, i, mu)).max().unwrap().max(Rational::zero())
}

/// Largest violation of a CCE incentive row, zero for members.
pub fn cce_max_violation(game: &Game, mu: &JointDistribution) -> Rational {
    (0..game.num_players()).map(|i| external_regret(game, i, mu)).max().unwrap().max(Rational::zero())
}

fn empirical(counts: &[u64], steps: u64) -> JointDistribution {
    let total = BigInt::from(steps);
    JointDistribution::new(
        counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| (k, Rational::new(BigInt::from(c), total.clone()))),
    )
    .expect("counts sum to steps")
}

fn checkpoint(game: &Game, counts: &[u64], step: u64) -> Checkpoint {
    let mu = empirical(counts, step);
    let n = game.num_players();
    Checkpoint {
        step,
        max_external_regret: (0..n).map(|i| external_regret(game, i, &mu)).max().unwrap(),
        max_internal_regret: (0..n).map(|i| internal_regret(game, i, &mu)).max().unwrap(),
    }
}

fn sample(weights: &[f64], rng: &mut ChaCha8Rng) -> usize {
    match WeightedIndex::new(weights) {
        Ok(d) => d.sample(rng),
        // All weights underflowed or are invalid: fall back to the argmax.
        Err(_) => weights
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.total_cmp(y.1))
            .map(|(k, _)| k)
            .unwrap_or(0),
    }
}

fn payoff_f64(game: &Game) -> Vec<Vec<f64>> {
    game.payoff_rows().iter().map(|row| row.iter().map(|x| x.to_f64().unwrap_or(0.0)).collect()).collect()
}

/// Stationary distribution of the lazy switching chain `q[j][k]`
/// proportional to the positive regret of replacing `j` by `k`.
fn stationary(regret: &[Vec<f64>]) -> Vec<f64> {
    let k = regret.len();
    let row_sums: Vec<f64> = regret.iter().map(|r| r.iter().map(|x| x.max(0.0)).sum()).collect();
    let z = row_sums.iter().cloned().fold(0.0, f64::max);
    if z <= 0.0 {
        return vec![1.0 / k as f64; k];
    }
    let z = 2.0 * z;
    let mut p = vec![1.0 / k as f64; k];
    for _ in 0..64 {
        let mut next = vec![0.0; k];
        for j in 0..k {
            next[j] += p[j] * (1.0 - row_sums[j] / z);
            for to in 0..k {
                if to != j && regret[j][to] > 0.0 {
                    next[to] += p[j] * regret[j][to] / z;
                }
            }
        }
        p = next;
    }
    p
}

/// Runs `steps` rounds of self-play from the given seed.
pub fn run(game: &Game, algorithm: Algorithm, steps: u64, seed: u64, learning_rate: f64) -> Result<DynamicsRun> {
    if steps == 0 {
        return Err(Error::InvalidParameter("steps must be at least 1".into()));
    }
    if !(learning_rate.is_finite() && learning_rate > 0.0) {
        return Err(Error::InvalidParameter(format!("learning rate {learning_rate} must be positive")));
    }
    let n = game.num_players();
    let u = payoff_f64(game);
    let (lo, hi) = game.payoff_range();
    let range = (hi - lo).to_f64().filter(|r| *r > 0.0).unwrap_or(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; game.num_profiles()];
    let mut trajectory = Vec::new();
    let mut next_checkpoint = 1u64;

    // Cumulative action payoffs (external) or pair regrets (internal).
    let mut cumulative: Vec<Vec<f64>> = (0..n).map(|i| vec![0.0; game.num_actions(i)]).collect();
    let mut pair: Vec<Vec<Vec<f64>>> =
        (0..n).map(|i| vec![vec![0.0; game.num_actions(i)]; game.num_actions(i)]).collect();
    let mut profile = vec![0usize; n];

    for t in 1..=steps {
        for i in 0..n {
            let weights = match algorithm {
                Algorithm::ExternalMw => {
                    let eta = learning_rate / (range * (t as f64).sqrt());
                    let best = cumulative[i].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                    cumulative[i].iter().map(|s| (eta * (s - best)).exp()).collect::<Vec<f64>>()
                }
                Algorithm::InternalRm => stationary(&pair[i]),
            };
            profile[i] = sample(&weights, &mut rng);
        }
        let idx = game.index_unchecked(&profile);
        counts[idx] += 1;
        for i in 0..n {
            let here = u[i][idx];
            let played = profile[i];
            for b in 0..game.num_actions(i) {
                let there = u[i][game.deviate(idx, i, b)];
                match algorithm {
                    Algorithm::ExternalMw => cumulative[i][b] += there,
                    Algorithm::InternalRm => pair[i][played][b] += there - here,
                }
            }
        }
        if t == next_checkpoint {
            trajectory.push(checkpoint(game, &counts, t));
            next_checkpoint *= 2;
        }
    }
    if trajectory.last().map(|c| c.step) != Some(steps) {
        trajectory.push(checkpoint(game, &counts, steps));
    }
    let last = trajectory.last().expect("nonempty").clone();
    Ok(DynamicsRun {
        algorithm,
        steps,
        seed,
        learning_rate,
        empirical: empirical(&counts, steps),
        counts,
        max_external_regret: last.max_external_regret,
        max_internal_regret: last.max_internal_regret,
        trajectory,
    })
}

impl DynamicsRun {
    /// Run report; the distance field appears only when a certified point is
    /// supplied.
    pub fn report(&self, game: &Game, certified: Option<&JointDistribution>) -> Value {
        let mut v = json!({
            "algorithm": self.algorithm.name(),
            "seed": self.seed,
            "steps": self.steps,
            "learning_rate": self.learning_rate,
            "empirical": distribution_to_json(&self.empirical),
            "max_external_regret": format_rational(&self.max_external_regret),
            "max_internal_regret": format_rational(&self.max_internal_regret),
            "cce_max_violation": format_rational(&cce_max_violation(game, &self.empirical)),
            "ce_max_violation": format_rational(&ce_max_violation(game, &self.empirical)),
            "trajectory": self.trajectory.iter().map(|c| json!({
                "step": c.step,
                "max_external_regret": format_rational(&c.max_external_regret),
                "max_internal_regret": format_rational(&c.max_internal_regret),
            })).collect::<Vec<_>>(),
        });
        if let Some(target) = certified {
            v["distance_to_certified"] = Value::String(format_rational(&self.empirical.total_variation(target)));
        }
        v
    }

    /// Largest per-player marginal deviation from `target`, as `f64`.
    pub fn marginal_distance(&self, game: &Game, player: usize, target: &[Rational]) -> f64 {
        let m = self.empirical.marginal(game, player);
        m.weights.iter().zip(target).map(|(x, y)| (x - y).abs().to_f64().unwrap_or(f64::NAN)).fold(0.0, f64::max)
    }
}
