//! Guaranteed-utility equilibria on the table3() game: (a1, a2) is the only
//! GUE, yet a lottery over two other profiles dominates it.

use eqcert::certify::{dominating_lottery, is_gue, is_strict_fractional_gue};
use eqcert::generators::table3;
use eqcert::rational::format_rational;

fn main() -> eqcert::Result<()> {
    let g = table3();
    for p in g.profiles() {
        let k = g.profile_index(p.actions())?;
        println!("{:>8}: GUE {:<5} strict fractional {}", g.profile_label(k), is_gue(&g, &p)?, is_strict_fractional_gue(&g, &p)?);
    }
    let a = g.profiles().next().unwrap();
    if let Some((mu, payoff)) = dominating_lottery(&g, &a)? {
        let parts: Vec<String> = mu.iter().map(|(&k, p)| format!("{} {}", format_rational(p), g.profile_label(k))).collect();
        println!("dominating lottery {} pays ({})", parts.join(" + "), payoff.iter().map(format_rational).collect::<Vec<_>>().join(", "));
    }
    Ok(())
}
