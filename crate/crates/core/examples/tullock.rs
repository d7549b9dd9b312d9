//! Tullock contests on effort grids: the certificate at (1/4, 1/4), the sign
//! of the per-player term, and modified exponents.

use eqcert::certify::certify_unique_pure_cce;
use eqcert::contest::{tullock_game, tullock_term_analysis, uniform_grid, verify_prop3, ContestSpec};
use eqcert::rational::{format_rational, int, rat};
use eqcert::Rational;

fn main() -> eqcert::Result<()> {
    let a = tullock_term_analysis();
    println!(
        "term polynomial {} {} {}: discriminant {}, vertex {}, nonpositive with one zero: {}",
        format_rational(&a.coeffs[0]),
        format_rational(&a.coeffs[1]),
        format_rational(&a.coeffs[2]),
        format_rational(&a.discriminant),
        format_rational(&a.vertex),
        a.nonpositive_with_unique_zero()
    );

    let grid = vec![uniform_grid(1, 16, 16); 2];
    let g = tullock_game(&[int(1), int(1)], &grid)?;
    let cert = certify_unique_pure_cce(&g)?;
    let c = cert.certificate().expect("grid Tullock is certified");
    let efforts: Vec<String> = c.a_star.actions().iter().map(|&k| format_rational(&grid[0][k])).collect();
    println!("16x16 grid: unique CCE at ({}), slack {}", efforts.join(", "), format_rational(&c.slack));

    for r in [rat(1, 2), int(1), rat(3, 2), int(2)] {
        let star = &r / int(4);
        // Efforts star * q^2 keep every ratio a perfect square, so t^r stays rational.
        let grid: Vec<Rational> = [rat(1, 2), rat(2, 3), int(1), rat(3, 2), int(2)].iter().map(|q| &star * q * q).collect();
        let report = verify_prop3(&ContestSpec::tullock(r.clone(), vec![int(1), int(1)]), &[star.clone(), star.clone()], &[grid.clone(), grid])?;
        println!("r = {}: a* = {} passes = {}", format_rational(&r), format_rational(&star), report.passes());
    }
    Ok(())
}
