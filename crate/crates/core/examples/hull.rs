//! Whether the convex hull of Nash equilibria fills the IRCP polytope.

use eqcert::certify::{conv_ne_vs_ircp, HullComparison};
use eqcert::generators::{prisoners_dilemma, rock_paper_scissors, table2, zero_game};
use eqcert::polytope::{enumerate_pure_ne, mixed_ne_2x2};
use eqcert::{Game, JointDistribution};

fn main() -> eqcert::Result<()> {
    let rps = rock_paper_scissors();
    let rps_ne = vec![JointDistribution::uniform(&(0..9).collect::<Vec<_>>())];
    let cases: Vec<(&str, Game, Option<Vec<JointDistribution>>)> = vec![
        ("table 2", table2(), None),
        ("prisoner's dilemma", prisoners_dilemma(), Some(mixed_ne_2x2(&prisoners_dilemma())?)),
        ("zero game", zero_game(&[2, 2])?, None),
        ("rock-paper-scissors", rps, Some(rps_ne)),
    ];
    for (name, g, ne) in cases {
        let ne = ne.unwrap_or_else(|| {
            enumerate_pure_ne(&g).iter().map(|(p, _)| JointDistribution::point_mass(g.profile_index(p.actions()).unwrap())).collect()
        });
        let verdict = match conv_ne_vs_ircp(&g, &ne)? {
            HullComparison::Equal => "conv NE = IRCP".to_string(),
            HullComparison::ProperSubset(w) => format!("proper subset, IRCP vertex outside: {:?}", w.support().iter().map(|&k| g.profile_label(k)).collect::<Vec<_>>()),
            HullComparison::Inconclusive => "too large to decide".into(),
        };
        println!("{name}: {} equilibria listed, {verdict}", ne.len());
    }
    Ok(())
}
