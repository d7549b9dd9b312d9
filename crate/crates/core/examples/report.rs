//! Full analysis of a game loaded from JSON, written out and re-verified
//! from the JSON alone.

use eqcert::generators::parking;
use eqcert::io::{load_game, save_game};
use eqcert::rational::{int, rat};
use eqcert::report::{analyze, verify_report, AnalysisOptions};

fn main() -> eqcert::Result<()> {
    let bytes = save_game(&parking(3, &int(1), &rat(1, 4), &rat(3, 5))?);
    let g = load_game(&bytes)?;
    let report = analyze(&g, &AnalysisOptions::default())?.to_json();
    println!("{}", serde_json::to_string_pretty(&report)?);
    let summary = verify_report(&report)?;
    println!("re-verified {} checks, passed: {}", summary.checks, summary.passed());
    Ok(())
}
