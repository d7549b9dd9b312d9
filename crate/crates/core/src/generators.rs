//! Named example games and seeded random families.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::{Game, OpponentShift, Profile};
use crate::rational::{int, rat, Rational};

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn two_player(name: &str, rows: &[&str], cols: &[&str], u1: &[i64], u2: &[i64]) -> Game {
    let payoffs = vec![u1.iter().map(|&x| int(x)).collect(), u2.iter().map(|&x| int(x)).collect()];
    Game::new(Some(name.into()), vec![labels(rows), labels(cols)], payoffs).expect("static game is well formed")
}

/// Cooperate/defect with `(c,c)=(2,2)`, `(c,d)=(0,3)`, `(d,c)=(3,0)`, `(d,d)=(1,1)`.
pub fn prisoners_dilemma() -> Game {
    two_player("prisoners_dilemma", &["c", "d"], &["c", "d"], &[2, 0, 3, 1], &[2, 3, 0, 1])
}

pub fn matching_pennies() -> Game {
    two_player("matching_pennies", &["H", "T"], &["H", "T"], &[1, -1, -1, 1], &[-1, 1, 1, -1])
}

pub fn rock_paper_scissors() -> Game {
    two_player(
        "rock_paper_scissors",
        &["rock", "paper", "scissors"],
        &["rock", "paper", "scissors"],
        &[0, -1, 1, 1, 0, -1, -1, 1, 0],
        &[0, 1, -1, -1, 0, 1, 1, -1, 0],
    )
}

/// Two drivers choose to pay `c` or to park illegally at one of `m` locations
/// on a loop. An inspector starts at a uniformly random location; an illegal
/// parker alone is fined `t` for sure, two at the same spot are each fined
/// with probability 1/2, and at distinct spots `l_i`, `l_j` the second
/// driver is caught with probability `((j - i) mod m) / m`.
pub fn parking(m: usize, v: &Rational, c: &Rational, t: &Rational) -> Result<Game> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("parking needs m >= 3 locations, got {m}")));
    }
    if !c.is_positive() || !t.is_positive() {
        return Err(Error::InvalidParameter("parking needs c > 0 and t > 0".into()));
    }
    let mut actions = vec!["pay".to_string()];
    actions.extend((1..=m).map(|l| format!("l{l}")));
    let mm = Rational::from_integer((m as i64).into());
    let caught = |me: usize, other: usize| -> Rational {
        // Probability that the driver at location `me` is caught when the
        // other violator parks at `other` (both 1-based).
        if me == other {
            rat(1, 2)
        } else {
            let d = (me + m - other) % m;
            Rational::from_integer((d as i64).into()) / &mm
        }
    };
    Game::from_fn_labeled(
        Some(format!("parking(m={m})")),
        vec![actions.clone(), actions],
        |i, p| {
            let (me, other) = (p[i], p[1 - i]);
            match (me, other) {
                (0, _) => v - c,
                (_, 0) => v - t,
                (x, y) => v - t * caught(x, y),
            }
        },
    )
}

/// The 2x2 family
///
/// ```text
///        a2      b2
/// a1  (a, e)  (b, f)
/// b1  (c, g)  (d, h)
/// ```
///
/// with `a > c`, `d > b`, `f > e`, `g > h`.
#[allow(clippy::too_many_arguments)]
pub fn mp_type(
    a: &Rational, b: &Rational, c: &Rational, d: &Rational,
    e: &Rational, f: &Rational, g: &Rational, h: &Rational,
) -> Result<Game> {
    let checks = [(a > c, "a > c"), (d > b, "d > b"), (f > e, "f > e"), (g > h, "g > h")];
    if let Some((_, which)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(Error::InvalidParameter(format!("matching-pennies type requires {which}")));
    }
    Game::new(
        Some("mp_type".into()),
        vec![labels(&["a1", "b1"]), labels(&["a2", "b2"])],
        vec![
            vec![a.clone(), b.clone(), c.clone(), d.clone()],
            vec![e.clone(), f.clone(), g.clone(), h.clone()],
        ],
    )
}

/// Two pure equilibria whose convex hull is the whole IRCP set.
pub fn table2() -> Game {
    two_player("table2", &["a1", "b1"], &["a2", "b2"], &[1, 1, 0, 1], &[1, 0, 1, 1])
}

/// A unique guaranteed-utility profile `(a1, a2)` with non-unique IRCP and CCE.
pub fn table3() -> Game {
    two_player(
        "table3",
        &["a1", "b1", "c1"],
        &["a2", "b2", "c2"],
        &[0, 0, 0, -1, 2, -1, -1, -1, -1],
        &[0, -1, -1, 0, -1, -1, 0, -1, 2],
    )
}

pub fn zero_game(shape: &[usize]) -> Result<Game> {
    Ok(Game::from_fn(shape, |_, _| Rational::zero())?.with_name("zero"))
}

/// Integer payoffs drawn uniformly from `[lo, hi]`.
pub fn random_game(shape: &[usize], seed: u64, lo: i64, hi: i64) -> Result<Game> {
    if lo > hi {
        return Err(Error::InvalidParameter(format!("empty payoff range [{lo}, {hi}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Game::from_fn(shape, |_, _| int(rng.random_range(lo..=hi)))?.with_name(format!("random(seed={seed})")))
}

/// A game invariant under every permutation of the `n` players, each with `k`
/// actions: `u_i(a)` depends on `a_i` and the multiset of the others' actions.
pub fn random_symmetric_game(n: usize, k: usize, seed: u64, lo: i64, hi: i64) -> Result<Game> {
    if lo > hi {
        return Err(Error::InvalidParameter(format!("empty payoff range [{lo}, {hi}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut table = std::collections::BTreeMap::new();
    let shape = vec![k; n];
    let g = Game::from_fn(&shape, |i, p| {
        let mut others: Vec<usize> = p.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &a)| a).collect();
        others.sort_unstable();
        table
            .entry((p[i], others))
            .or_insert_with(|| int(rng.random_range(lo..=hi)))
            .clone()
    })?;
    Ok(g.with_name(format!("random_symmetric(seed={seed})")))
}

/// Parameters `(a, b, c, d, e, f, g, h)` of a random matching-pennies-type game
/// with small integer payoffs.
pub fn random_mp_type_params(seed: u64) -> [Rational; 8] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pair = |rng: &mut ChaCha8Rng| {
        let low = rng.random_range(-5i64..=5);
        let gap = rng.random_range(1i64..=6);
        (low + gap, low)
    };
    let (a, c) = pair(&mut rng);
    let (d, b) = pair(&mut rng);
    let (f, e) = pair(&mut rng);
    let (g, h) = pair(&mut rng);
    [int(a), int(b), int(c), int(d), int(e), int(f), int(g), int(h)]
}

pub fn random_mp_type(seed: u64) -> Game {
    let [a, b, c, d, e, f, g, h] = random_mp_type_params(seed);
    mp_type(&a, &b, &c, &d, &e, &f, &g, &h).expect("parameters satisfy the inequalities")
}

/// A random game affinely equivalent to an enforcement game, together with
/// its self-enforcing profile.
pub fn random_enforcement_game(shape: &[usize], seed: u64) -> Result<(Game, Profile)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a_star: Vec<usize> = shape.iter().map(|&k| rng.random_range(0..k)).collect();
    let base = Game::from_fn(shape, |i, p| {
        if p == a_star.as_slice() {
            Rational::zero()
        } else if p[i] == a_star[i] {
            int(rng.random_range(0i64..=4))
        } else {
            int(rng.random_range(-6i64..=4))
        }
    })?;
    let n = shape.len();
    let mut payoffs = base.payoff_rows().to_vec();
    for k in 0..base.num_profiles() {
        let p = base.profile_from_index(k)?;
        if p.actions() == a_star.as_slice() {
            continue;
        }
        let welfare: Rational = (0..n).map(|i| payoffs[i][k].clone()).sum();
        if !welfare.is_negative() {
            let j = (0..n).find(|&j| p.action(j) != a_star[j]).expect("profile differs from a*");
            payoffs[j][k] -= welfare + Rational::one();
        }
    }
    let enforcement = Game::new(None, base.action_labels().to_vec(), payoffs)?;
    let gamma: Vec<Rational> = (0..n).map(|_| int(rng.random_range(1i64..=4))).collect();
    let beta: Vec<Rational> = (0..n).map(|_| int(rng.random_range(-3i64..=3))).collect();
    let g = enforcement.affine_transform(&gamma, &beta)?.with_name(format!("random_enforcement(seed={seed})"));
    Ok((g, Profile(a_star)))
}

/// A random game strategically equivalent to an enforcement game: the
/// enforcement game of [`random_enforcement_game`] plus random shifts
/// depending on opponents' actions.
pub fn random_strategic_enforcement_game(shape: &[usize], seed: u64) -> Result<(Game, Profile)> {
    let (g, a_star) = random_enforcement_game(shape, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed);
    let shift = OpponentShift::from_fn(&g, |_, _| int(rng.random_range(-4i64..=4)));
    let n = g.num_players();
    let h = g.strategic_transform(&vec![Rational::one(); n], &shift)?;
    Ok((h.with_name(format!("random_strategic_enforcement(seed={seed})")), a_star))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parking_matrix_entries() {
        let g = parking(3, &int(1), &rat(1, 4), &rat(3, 5)).unwrap();
        // (l1, l2)
        assert_eq!(g.payoff(0, &[1, 2]), &rat(3, 5));
        assert_eq!(g.payoff(1, &[1, 2]), &rat(4, 5));
        // (pay, pay)
        assert_eq!(g.payoff(0, &[0, 0]), &rat(3, 4));
        assert_eq!(g.payoff(1, &[0, 0]), &rat(3, 4));
        // (l1, l3) = (v - t/3, v - 2t/3), diagonal = v - t/2
        assert_eq!(g.payoff(0, &[1, 3]), &(int(1) - rat(1, 5)));
        assert_eq!(g.payoff(1, &[1, 3]), &(int(1) - rat(2, 5)));
        assert_eq!(g.payoff(0, &[2, 2]), &rat(7, 10));
        // (pay, l_j) = (v - c, v - t)
        assert_eq!(g.payoff(1, &[0, 2]), &rat(2, 5));
    }

    #[test]
    fn parking_caught_probabilities_sum_per_row() {
        for m in 3..7usize {
            let t = int(1);
            let g = parking(m, &int(1), &rat(1, 4), &t).unwrap();
            for i in 1..=m {
                // Player 2's expected fine over j != i, divided by t.
                let total: Rational = (1..=m).filter(|&j| j != i).map(|j| int(1) - g.payoff(1, &[i, j])).sum();
                assert_eq!(total, Rational::from_integer(((m - 1) as i64).into()) / int(2));
            }
        }
    }

    #[test]
    fn parking_parameter_errors() {
        assert!(parking(2, &int(1), &rat(1, 4), &int(1)).is_err());
        assert!(parking(3, &int(1), &int(0), &int(1)).is_err());
        assert!(parking(3, &int(1), &int(1), &int(-1)).is_err());
    }

    #[test]
    fn table3_entry() {
        let g = table3();
        assert_eq!(g.payoff(0, &[1, 1]), &int(2));
        assert_eq!(g.payoff(1, &[1, 1]), &int(-1));
    }

    #[test]
    fn mp_type_validates() {
        let ok = random_mp_type_params(3);
        assert!(mp_type(&ok[0], &ok[1], &ok[2], &ok[3], &ok[4], &ok[5], &ok[6], &ok[7]).is_ok());
        // a = c violates a > c.
        assert!(mp_type(&int(1), &int(0), &int(1), &int(1), &int(0), &int(1), &int(1), &int(0)).is_err());
    }

    #[test]
    fn symmetry_of_named_games() {
        assert!(prisoners_dilemma().is_symmetric());
        assert!(!matching_pennies().is_symmetric());
        assert!(parking(3, &int(1), &rat(1, 4), &rat(3, 5)).unwrap().is_symmetric());
        assert!(rock_paper_scissors().is_symmetric());
        for seed in 0..20 {
            assert!(random_symmetric_game(3, 2, seed, -3, 3).unwrap().is_symmetric());
            assert!(!random_mp_type(seed).is_symmetric());
        }
    }

    #[test]
    fn seeded_generators_are_deterministic() {
        assert_eq!(random_game(&[2, 3], 7, -5, 5).unwrap(), random_game(&[2, 3], 7, -5, 5).unwrap());
        assert_ne!(random_game(&[2, 3], 7, -5, 5).unwrap(), random_game(&[2, 3], 8, -5, 5).unwrap());
    }
}
