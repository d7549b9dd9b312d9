//! Games of matching-pennies type: the unique CCE is the mixed equilibrium,
//! and it is quasi-strict and extreme.

use eqcert::certify::{classify_extreme_ne, classify_unique_cce, is_quasi_strict, quasi_strictness_certificate, CceClassification};
use eqcert::generators::{matching_pennies, random_mp_type};
use eqcert::rational::format_rational;

fn main() -> eqcert::Result<()> {
    let mut games = vec![matching_pennies()];
    games.extend((0..5).map(random_mp_type));
    for g in &games {
        let rows: Vec<String> = g.payoff_rows().iter().map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(" ")).collect();
        match classify_unique_cce(g)? {
            CceClassification::UniqueMixed2x2 { ne, .. } => {
                let marginals: Vec<String> = (0..2)
                    .map(|i| ne.marginal(g, i).weights.iter().map(format_rational).collect::<Vec<_>>().join(","))
                    .collect();
                let eta = quasi_strictness_certificate(g, &ne)?.eta;
                println!(
                    "[{}]  NE ({})  quasi-strict {}  (predicted, measured) extreme {:?}  eta {}",
                    rows.join(" | "),
                    marginals.join(") x ("),
                    is_quasi_strict(g, &ne)?,
                    classify_extreme_ne(g, &ne)?,
                    eta.iter().map(format_rational).collect::<Vec<_>>().join(",")
                );
            }
            other => println!("unexpected classification {other:?}"),
        }
    }
    Ok(())
}
