//! Certificates survive small payoff perturbations: every payoff moved by
//! less than the slack-derived radius keeps the same a* and weights.

use eqcert::certify::{certify_cce_with_weights, certify_unique_pure_cce};
use eqcert::generators::random_strategic_enforcement_game;
use eqcert::rational::{format_rational, int, rat};
use eqcert::Game;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> eqcert::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for seed in 0..5 {
        let (g, _) = random_strategic_enforcement_game(&[3, 3], seed)?;
        let cert = certify_unique_pure_cce(&g)?.certificate().cloned().expect("generated games are certifiable");
        let n = int(g.num_players() as i64);
        let top = cert.gamma.iter().max().unwrap().clone();
        let radius = &cert.slack / (int(2) * n * top);
        let rows = g
            .payoff_rows()
            .iter()
            .map(|row| row.iter().map(|u| u + &radius * rat(rng.random_range(-999..=999), 1000)).collect())
            .collect();
        let perturbed = Game::new(None, g.action_labels().to_vec(), rows)?;
        let kept = certify_cce_with_weights(&perturbed, &cert.a_star, &cert.gamma)?.is_some();
        println!("seed {seed}: slack {}, radius {}, certificate kept: {kept}", format_rational(&cert.slack), format_rational(&radius));
    }
    Ok(())
}
