//! The band of ratio-based success functions admitting a strict equilibrium
//! at (c, c), and its two edges.

use eqcert::contest::{band_functions, band_mix, ratio_band_violation, Success};
use eqcert::rational::{format_rational, int, rat};
use eqcert::Rational;

fn main() -> eqcert::Result<()> {
    let c = rat(1, 4);
    let (upper, lower) = band_functions(&c)?;
    println!("{:>6} {:>8} {:>8} {:>8}", "t", "upper", "lower", "tullock");
    let tullock = Success::Tullock { r: int(1) };
    for t in [rat(1, 5), rat(1, 3), rat(1, 2), int(1), int(2), int(3), int(5)] {
        println!(
            "{:>6} {:>8} {:>8} {:>8}",
            format_rational(&t),
            format_rational(&upper.ratio_value(&t)?),
            format_rational(&lower.ratio_value(&t)?),
            format_rational(&tullock.ratio_value(&t)?)
        );
    }

    let grid: Vec<Rational> = (1..1000).map(|k| rat(k, 1000)).collect();
    let candidates = [
        ("tullock r=1", tullock),
        ("tullock r=3", Success::Tullock { r: int(3) }),
        ("upper edge", upper),
        ("mix eps=1/100", band_mix(&c, &rat(1, 100))?),
    ];
    for (name, f) in candidates {
        match ratio_band_violation(&f, &c, &grid)? {
            None => println!("{name}: inside the band"),
            Some(t) => println!("{name}: leaves the band at t = {}", format_rational(&t)),
        }
    }
    Ok(())
}
