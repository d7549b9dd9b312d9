//! Vertex enumeration by brute-force basis selection, used as an oracle for
//! the simplex results on small instances.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Zero};

use super::{solve, LinearProgram, LpOutcome, Relation, Sense};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::Rational;

pub const MAX_VERTEX_DIMENSION: usize = 12;

const MAX_BASES: u128 = 20_000_000;

/// All vertices of the (bounded) feasible region of `lp`, sorted, without
/// duplicates. The objective is ignored.
///
/// Every equality is kept active; each choice of enough further inequalities
/// (bounds included) to make the system square and nonsingular is solved and
/// kept if the solution is feasible.
pub fn enumerate_vertices(lp: &LinearProgram) -> Result<Vec<Vec<Rational>>> {
    let n = lp.num_vars();
    if n > MAX_VERTEX_DIMENSION {
        return Err(Error::InvalidParameter(format!(
            "vertex enumeration supports at most {MAX_VERTEX_DIMENSION} variables, got {n}"
        )));
    }
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    check_bounded(lp)?;

    let mut equalities: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut inequalities: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for c in &lp.constraints {
        match c.relation {
            Relation::Eq => equalities.push((c.coeffs.clone(), c.rhs.clone())),
            Relation::Le | Relation::Ge => inequalities.push((c.coeffs.clone(), c.rhs.clone())),
        }
    }
    for j in 0..n {
        let unit: Vec<Rational> = (0..n).map(|k| if k == j { Rational::one() } else { Rational::zero() }).collect();
        if let Some(l) = &lp.lower[j] {
            inequalities.push((unit.clone(), l.clone()));
        }
        if let Some(u) = &lp.upper[j] {
            inequalities.push((unit, u.clone()));
        }
    }

    let eq_rows: Vec<Vec<Rational>> = equalities.iter().map(|(a, _)| a.clone()).collect();
    let keep = linalg::independent_rows(&eq_rows);
    let need = n - keep.len();
    let bases = binomial(inequalities.len() as u128, need as u128);
    if bases > MAX_BASES {
        return Err(Error::InvalidParameter(format!("{bases} candidate bases exceed the oracle's budget")));
    }

    let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for choice in (0..inequalities.len()).combinations(need) {
        let (a, b): (Vec<Vec<Rational>>, Vec<Rational>) = keep
            .iter()
            .map(|&k| &equalities[k])
            .chain(choice.iter().map(|&k| &inequalities[k]))
            .cloned()
            .unzip();
        if let Some(x) = linalg::solve(&a, &b) {
            if lp.is_feasible(&x) {
                found.insert(x);
            }
        }
    }
    Ok(found.into_iter().collect())
}

fn check_bounded(lp: &LinearProgram) -> Result<()> {
    for j in 0..lp.num_vars() {
        let mut e = vec![Rational::zero(); lp.num_vars()];
        e[j] = Rational::one();
        for sense in [Sense::Maximize, Sense::Minimize] {
            let mut probe = lp.clone();
            probe.set_objective(sense, e.clone());
            match solve(&probe) {
                LpOutcome::Unbounded => {
                    return Err(Error::Precondition(format!("region is unbounded in variable {j}")))
                }
                LpOutcome::Infeasible => return Ok(()),
                LpOutcome::Optimal { .. } => {}
            }
        }
    }
    Ok(())
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}
