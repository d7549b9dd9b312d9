#![allow(dead_code)]

use eqcert::generators::{random_enforcement_game, random_strategic_enforcement_game};
use eqcert::rational::{int, rat};
use eqcert::{Game, JointDistribution, Rational};
use proptest::prelude::*;

pub fn shape_strategy(max_players: usize, max_actions: usize, max_profiles: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(2..=max_actions, 2..=max_players)
        .prop_filter("too many profiles", move |s| s.iter().product::<usize>() <= max_profiles)
}

pub fn game_with_shape(shape: Vec<usize>, lo: i64, hi: i64) -> impl Strategy<Value = Game> {
    let m: usize = shape.iter().product();
    let n = shape.len();
    prop::collection::vec(prop::collection::vec(lo..=hi, m), n).prop_map(move |rows| {
        let labels = shape.iter().map(|&k| (0..k).map(|a| format!("a{a}")).collect()).collect();
        let payoffs = rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect();
        Game::new(None, labels, payoffs).expect("well-formed random game")
    })
}

/// Small-integer games with at most `max_profiles` profiles.
pub fn small_game(max_players: usize, max_actions: usize, max_profiles: usize) -> impl Strategy<Value = Game> {
    shape_strategy(max_players, max_actions, max_profiles).prop_flat_map(|s| game_with_shape(s, -3, 3))
}

/// Raw random games mixed with games equivalent to enforcement games, so
/// both sides of every equivalence get exercised.
pub fn certify_game() -> impl Strategy<Value = Game> {
    let shapes = prop::sample::select(vec![vec![2, 2], vec![2, 3], vec![3, 3], vec![2, 2, 2], vec![3, 2, 2]]);
    prop_oneof![
        2 => small_game(3, 3, 12),
        1 => (shapes.clone(), any::<u64>()).prop_map(|(s, seed)| random_enforcement_game(&s, seed).unwrap().0),
        1 => (shapes, any::<u64>()).prop_map(|(s, seed)| random_strategic_enforcement_game(&s, seed).unwrap().0),
    ]
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

pub fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=20, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

/// A distribution over `size` profiles with small integer weights.
pub fn distribution(size: usize) -> impl Strategy<Value = JointDistribution> {
    prop::collection::vec(0i64..=3, size).prop_filter_map("all zero", |w| {
        let total: i64 = w.iter().sum();
        if total == 0 {
            return None;
        }
        JointDistribution::from_dense(&w.iter().map(|&x| rat(x, total)).collect::<Vec<_>>()).ok()
    })
}

/// A game together with a random distribution over its profiles.
pub fn game_and_distribution(max_profiles: usize) -> impl Strategy<Value = (Game, JointDistribution)> {
    small_game(3, 3, max_profiles).prop_flat_map(|g| {
        let m = g.num_profiles();
        (Just(g), distribution(m))
    })
}
