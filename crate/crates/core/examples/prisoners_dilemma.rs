//! Unique CCE without a unique IRCP: the prisoner's dilemma.

use eqcert::certify::{certify_unique_ircp, certify_unique_pure_cce, Certification};
use eqcert::generators::prisoners_dilemma;
use eqcert::rational::format_rational;
use eqcert::zerosum::{build_theorem1_auxiliary, maximin};
use eqcert::Profile;

fn main() -> eqcert::Result<()> {
    let g = prisoners_dilemma();
    for i in 0..2 {
        println!("maximin of player {}: {}", i + 1, format_rational(&maximin(&g, i).value));
    }
    let aux = build_theorem1_auxiliary(&g, &Profile(vec![1, 1]))?;
    println!("auxiliary game at (d,d) has value {}", format_rational(&aux.solve()?.value));
    for (row, payoff) in aux.rows.iter().zip(&aux.payoff) {
        println!("  {row:>6}: {}", payoff.iter().map(format_rational).collect::<Vec<_>>().join("  "));
    }

    if let Certification::Refuted(r) = certify_unique_ircp(&g)? {
        println!("IRCP refuted: {}", r.reason);
    }
    if let Certification::Certificate(c) = certify_unique_pure_cce(&g)? {
        println!("CCE certificate: {}", serde_json::to_string_pretty(&c.to_json()).unwrap());
        c.verify(&g)?;
    }
    Ok(())
}
