//! An asymmetric Tullock contest with quadratic costs: the weighted local
//! potential with weights 1/v_i, then the certificate on the grid game.

use eqcert::contest::{certify_prop3_grid, uniform_grid, verify_prop3, ContestSpec, Cost, Success};
use eqcert::rational::{format_rational, int, rat};

fn main() -> eqcert::Result<()> {
    // Values (2, 1) and costs 2x^2, 4x^2 put the interior equilibrium at (1/3, 1/6).
    let spec = ContestSpec::new(
        Success::Tullock { r: int(1) },
        vec![int(2), int(1)],
        vec![Cost::Power { coef: int(2), exp: int(2) }, Cost::Power { coef: int(4), exp: int(2) }],
    )?;
    let anchor = [rat(1, 3), rat(1, 6)];
    let grid = vec![uniform_grid(1, 8, 12); 2];
    let report = verify_prop3(&spec, &anchor, &grid)?;
    println!(
        "weights ({}), {} profiles checked, passes: {}",
        report.gamma.iter().map(format_rational).collect::<Vec<_>>().join(", "),
        report.profiles_checked,
        report.passes()
    );
    let cert = certify_prop3_grid(&spec, &anchor, &grid)?;
    println!("certificate gamma ({}), slack {}", cert.gamma.iter().map(format_rational).collect::<Vec<_>>().join(", "), format_rational(&cert.slack));
    Ok(())
}
