//! The `eqcert` command line. Exit codes: 0 success (for `certify`, a
//! certificate), 1 negative answer (refuted, no pure certificate, or a failed
//! verification), 2 input or internal error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::certify::{certify_unique_ircp, certify_unique_pure_cce, Certification};
use crate::contest::{discretize, ratio_band_violation, verify_prop3, ContestSpec};
use crate::dynamics::{self, Algorithm};
use crate::error::{Error, Result};
use crate::game::{Game, JointDistribution, Profile};
use crate::generators;
use crate::io::{game_to_json, read_game, save_game};
use crate::polytope::Concept;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::report::{analyze, verify_report, AnalysisOptions};

#[derive(Parser, Debug)]
#[command(name = "eqcert", version, about = "Exact equilibrium polytopes and uniqueness certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the requested polytopes, test each for a single point and run
    /// the uniqueness pipelines.
    Analyze {
        game: PathBuf,
        #[arg(long, default_value = "ne,ce,cce,ircp")]
        concepts: String,
        #[arg(long)]
        check_unique: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Certify a unique IRCP or a unique pure CCE, or refute it.
    Certify {
        game: PathBuf,
        #[arg(long, default_value = "cce")]
        concept: String,
        /// Expected profile as comma-separated action indices.
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a game from a built-in family.
    Generate(GenerateArgs),
    /// Check a contest descriptor on an effort grid.
    Contest {
        spec: PathBuf,
        /// `lo:hi:step` or a comma-separated list of rationals.
        #[arg(long)]
        grid: String,
        /// Grid for the second player, if different.
        #[arg(long)]
        grid2: Option<String>,
        /// Equilibrium anchor `a1,a2` for the potential sweep.
        #[arg(long)]
        anchor: Option<String>,
        #[arg(long)]
        prop3: bool,
        /// Check the success function against the band for this effort.
        #[arg(long)]
        band: Option<String>,
        /// Discretize on the grid and certify a unique pure CCE.
        #[arg(long)]
        certify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run no-regret self-play.
    Simulate {
        game: PathBuf,
        #[arg(long, default_value = "external_mw")]
        algo: String,
        #[arg(long, default_value_t = 10_000)]
        steps: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10.0)]
        rate: f64,
        /// Report the distance to the certified unique CCE, if any.
        #[arg(long)]
        certified: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check every claim embedded in a report written by this tool.
    Verify { report: PathBuf },
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// pd, mp, rps, parking, mp-type, table2, table3, zero, random,
    /// random-symmetric, tullock-grid
    pub family: String,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub v: Option<String>,
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long)]
    pub t: Option<String>,
    /// Eight comma-separated payoffs `a..h` for mp-type.
    #[arg(long)]
    pub params: Option<String>,
    /// Comma-separated action counts.
    #[arg(long)]
    pub shape: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = -5)]
    pub lo: i64,
    #[arg(long, default_value_t = 5)]
    pub hi: i64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn rationals(list: &str) -> Result<Vec<Rational>> {
    list.split(',').map(|s| parse_rational(s.trim())).collect()
}

/// `lo:hi:step` (inclusive) or a comma-separated list.
pub fn parse_grid(s: &str) -> Result<Vec<Rational>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [lo, hi, step] => {
            let (lo, hi, step) = (parse_rational(lo)?, parse_rational(hi)?, parse_rational(step)?);
            if step <= Rational::from_integer(0.into()) {
                return Err(Error::InvalidParameter("grid step must be positive".into()));
            }
            let mut out = Vec::new();
            let mut x = lo;
            while x <= hi {
                out.push(x.clone());
                x += &step;
            }
            Ok(out)
        }
        [_] => rationals(s),
        _ => Err(Error::Format(format!("grid `{s}` is neither lo:hi:step nor a list"))),
    }
}

fn parse_profile(s: &str) -> Result<Profile> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Format(format!("bad action index `{x}`"))))
        .collect::<Result<Vec<_>>>()
        .map(Profile)
}

fn emit(v: &Value, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn need<T>(x: Option<T>, flag: &str) -> Result<T> {
    x.ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required for this family")))
}

fn rational_flag(x: &Option<String>, flag: &str) -> Result<Rational> {
    parse_rational(need(x.as_deref(), flag)?)
}

fn shape_flag(x: &Option<String>) -> Result<Vec<usize>> {
    need(x.as_deref(), "shape")?
        .split(',')
        .map(|k| k.trim().parse::<usize>().map_err(|_| Error::Format(format!("bad shape entry `{k}`"))))
        .collect()
}

pub fn generate(a: &GenerateArgs) -> Result<Game> {
    match a.family.as_str() {
        "pd" => Ok(generators::prisoners_dilemma()),
        "mp" => Ok(generators::matching_pennies()),
        "rps" => Ok(generators::rock_paper_scissors()),
        "table2" => Ok(generators::table2()),
        "table3" => Ok(generators::table3()),
        "parking" => generators::parking(
            need(a.m, "m")?,
            &rational_flag(&a.v, "v")?,
            &rational_flag(&a.c, "c")?,
            &rational_flag(&a.t, "t")?,
        ),
        "mp-type" => match a.params.as_deref() {
            Some(p) => {
                let x = rationals(p)?;
                if x.len() != 8 {
                    return Err(Error::InvalidParameter("mp-type needs eight payoffs a..h".into()));
                }
                generators::mp_type(&x[0], &x[1], &x[2], &x[3], &x[4], &x[5], &x[6], &x[7])
            }
            None => Ok(generators::random_mp_type(need(a.seed, "seed")?)),
        },
        "zero" => generators::zero_game(&shape_flag(&a.shape)?),
        "random" => generators::random_game(&shape_flag(&a.shape)?, need(a.seed, "seed")?, a.lo, a.hi),
        "random-symmetric" => {
            let shape = shape_flag(&a.shape)?;
            if shape.is_empty() || shape.iter().any(|&k| k != shape[0]) {
                return Err(Error::InvalidParameter("symmetric games need equal action counts".into()));
            }
            generators::random_symmetric_game(shape.len(), shape[0], need(a.seed, "seed")?, a.lo, a.hi)
        }
        "tullock-grid" => {
            let grid = parse_grid(need(a.t.as_deref(), "t (grid)")?)?;
            discretize(&ContestSpec::standard_tullock(), &[grid.clone(), grid])
        }
        other => Err(Error::InvalidParameter(format!("unknown family `{other}`"))),
    }
}

fn certification_exit(c: &Certification, target: Option<&Profile>) -> i32 {
    match (c, target) {
        (Certification::Certificate(cert), Some(t)) if cert.a_star != *t => 1,
        (Certification::Certificate(_), _) => 0,
        _ => 1,
    }
}

fn run_command(cmd: &Command) -> Result<i32> {
    match cmd {
        Command::Analyze { game, concepts, check_unique, json } => {
            let g = read_game(game)?;
            let report = analyze(&g, &AnalysisOptions::parse_concepts(concepts, *check_unique)?)?;
            emit(&report.to_json(), json.as_deref())?;
            Ok(0)
        }
        Command::Certify { game, concept, target, out } => {
            let g = read_game(game)?;
            let target = target.as_deref().map(parse_profile).transpose()?;
            if let Some(t) = &target {
                g.profile_index(t.actions())?;
            }
            let c = match concept.parse::<Concept>()? {
                Concept::Ircp => certify_unique_ircp(&g)?,
                Concept::Cce => certify_unique_pure_cce(&g)?,
                Concept::Ce => return Err(Error::InvalidParameter("certify supports ircp and cce".into())),
            };
            let code = certification_exit(&c, target.as_ref());
            emit(&json!({"kind": "certification", "game": game_to_json(&g), "certification": c.to_json()}), out.as_deref())?;
            Ok(code)
        }
        Command::Generate(a) => {
            let g = generate(a)?;
            match &a.out {
                Some(p) => std::fs::write(p, save_game(&g))?,
                None => print!("{}", String::from_utf8_lossy(&save_game(&g))),
            }
            Ok(0)
        }
        Command::Contest { spec, grid, grid2, anchor, prop3, band, certify, out } => {
            let s = ContestSpec::from_json(&std::fs::read(spec)?)?;
            let g1 = parse_grid(grid)?;
            let g2 = grid2.as_deref().map(parse_grid).transpose()?.unwrap_or_else(|| g1.clone());
            let grids = [g1.clone(), g2];
            let grid_json: Vec<Vec<String>> = grids.iter().map(|g| g.iter().map(format_rational).collect()).collect();
            let mut v = json!({"kind": "contest", "spec": s.to_json(), "grids": grid_json});
            let mut code = 0;
            if *prop3 {
                let a = rationals(need(anchor.as_deref(), "anchor")?)?;
                let r = verify_prop3(&s, &a, &grids)?;
                code = code.max(if r.passes() { 0 } else { 1 });
                v["prop3"] = json!({"passes": r.passes(), "anchor": a.iter().map(format_rational).collect::<Vec<_>>(),
                    "report": serde_json::to_value(&r)?});
            }
            if let Some(c) = band {
                let c = parse_rational(c)?;
                let one = Rational::from_integer(1.into());
                let inner: Vec<Rational> = g1.iter().filter(|t| t.numer() > &0.into() && **t < one).cloned().collect();
                let bad = ratio_band_violation(&s.success, &c, &inner)?;
                code = code.max(if bad.is_none() { 0 } else { 1 });
                v["band"] = json!({"c": format_rational(&c), "points": inner.len(), "passes": bad.is_none(),
                    "first_violation": bad.map(|t| format_rational(&t))});
            }
            if *certify {
                let g = discretize(&s, &grids)?;
                let c = certify_unique_pure_cce(&g)?;
                code = code.max(certification_exit(&c, None));
                v["certification"] = c.to_json();
                v["game"] = game_to_json(&g);
            }
            emit(&v, out.as_deref())?;
            Ok(code)
        }
        Command::Simulate { game, algo, steps, seed, rate, certified, out } => {
            let g = read_game(game)?;
            let alg: Algorithm = algo.parse()?;
            let r = dynamics::run(&g, alg, *steps, *seed, *rate)?;
            let target: Option<JointDistribution> = if *certified {
                match certify_unique_pure_cce(&g)? {
                    Certification::Certificate(c) => Some(JointDistribution::point_mass(g.profile_index(c.a_star.actions())?)),
                    _ => None,
                }
            } else {
                None
            };
            emit(&json!({"kind": "dynamics", "game": game_to_json(&g), "run": r.report(&g, target.as_ref())}), out.as_deref())?;
            Ok(0)
        }
        Command::Verify { report } => {
            let v: Value = serde_json::from_slice(&std::fs::read(report)?)?;
            let s = verify_report(&v)?;
            emit(&json!({"checks": s.checks, "passed": s.passed(), "failures": s.failures}), None)?;
            Ok(if s.passed() { 0 } else { 1 })
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code. Panics inside the solvers become exit
/// code 2.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match std::panic::catch_unwind(|| run_command(&cli.command)) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            2
        }
        Err(_) => {
            eprintln!("error: internal failure (see panic message above)");
            2
        }
    }
}
