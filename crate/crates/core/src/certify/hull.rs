use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::game::{Game, JointDistribution};
use crate::lp::{self, enumerate_vertices, LinearProgram, LpOutcome, Relation, Sense, MAX_VERTEX_DIMENSION};
use crate::polytope::{build, is_nash, to_distribution, Concept};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum HullComparison {
    Equal,
    /// An IRCP vertex outside the convex hull of the listed equilibria.
    ProperSubset(JointDistribution),
    /// The game is too large for vertex enumeration.
    Inconclusive,
}

fn in_hull(points: &[Vec<Rational>], target: &[Rational]) -> bool {
    let mut lp = LinearProgram::new(points.len());
    for k in 0..target.len() {
        lp.add(points.iter().map(|p| p[k].clone()).collect(), Relation::Eq, target[k].clone());
    }
    lp.add(vec![Rational::one(); points.len()], Relation::Eq, Rational::one());
    lp.set_objective(Sense::Maximize, vec![Rational::zero(); points.len()]);
    matches!(lp::solve(&lp), LpOutcome::Optimal { .. })
}

/// Compares the convex hull of the given Nash equilibria with the IRCP
/// polytope by enumerating IRCP vertices. Pure vertices are tested first.
pub fn conv_ne_vs_ircp(game: &Game, ne_list: &[JointDistribution]) -> Result<HullComparison> {
    let spec = build(game, Concept::Ircp);
    for nu in ne_list {
        if !is_nash(game, nu)? {
            return Err(Error::Precondition("listed distribution is not a Nash equilibrium".into()));
        }
        if !spec.membership(nu).is_member() {
            return Err(Error::Internal("Nash equilibrium outside the IRCP polytope".into()));
        }
    }
    let n = game.num_profiles();
    if n > MAX_VERTEX_DIMENSION {
        return Ok(HullComparison::Inconclusive);
    }
    let mut vertices = match enumerate_vertices(&spec.to_lp()) {
        Ok(v) => v,
        Err(Error::InvalidParameter(_)) => return Ok(HullComparison::Inconclusive),
        Err(e) => return Err(e),
    };
    vertices.sort_by_key(|v| v.iter().filter(|x| !x.is_zero()).count());
    let points: Vec<Vec<Rational>> = ne_list.iter().map(|nu| nu.to_dense(n)).collect();
    for v in vertices {
        if points.is_empty() || !in_hull(&points, &v) {
            return Ok(HullComparison::ProperSubset(to_distribution(&v)?));
        }
    }
    Ok(HullComparison::Equal)
}
