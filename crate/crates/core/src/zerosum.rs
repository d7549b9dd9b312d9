//! Two-player zero-sum matrix games, maximin levels, and the auxiliary
//! zero-sum games behind the uniqueness theorems.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::game::{Game, JointDistribution, MixedAction, Profile};
use crate::lp::{solve, LinearProgram, LpOutcome, Region, Relation, Sense};
use crate::rational::Rational;

/// Zero-sum game; `payoff[r][c]` goes to the row player (Maximizer).
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixGame {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub payoff: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSumSolution {
    pub value: Rational,
    /// An optimal strategy of the row player (a basic optimal solution).
    pub row_strategy: Vec<Rational>,
    /// An optimal strategy of the column player (a basic optimal solution).
    pub col_strategy: Vec<Rational>,
}

impl MatrixGame {
    pub fn new(rows: Vec<String>, cols: Vec<String>, payoff: Vec<Vec<Rational>>) -> Result<Self> {
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::Shape("matrix game needs at least one row and one column".into()));
        }
        if payoff.len() != rows.len() || payoff.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::Shape("payoff matrix does not match labels".into()));
        }
        Ok(MatrixGame { rows, cols, payoff })
    }

    /// Unlabeled matrix game.
    pub fn from_matrix(payoff: Vec<Vec<Rational>>) -> Result<Self> {
        let m = payoff.len();
        let n = payoff.first().map_or(0, Vec::len);
        Self::new((0..m).map(|r| format!("r{r}")).collect(), (0..n).map(|c| format!("c{c}")).collect(), payoff)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    /// `max_x min_c x^T M e_c` with an optimal `x`.
    pub fn row_optimum(&self) -> (Rational, Vec<Rational>) {
        let (m, n) = (self.num_rows(), self.num_cols());
        // Variables: x_0..x_{m-1}, v (free).
        let mut lp = LinearProgram::new(m + 1);
        lp.set_free(m);
        let mut obj = vec![Rational::zero(); m + 1];
        obj[m] = Rational::one();
        lp.set_objective(Sense::Maximize, obj);
        for c in 0..n {
            let mut row: Vec<Rational> = (0..m).map(|r| self.payoff[r][c].clone()).collect();
            row.push(-Rational::one());
            lp.add(row, Relation::Ge, Rational::zero());
        }
        lp.add(simplex_row(m, 1), Relation::Eq, Rational::one());
        let (value, mut x) = expect_optimal(solve(&lp));
        x.truncate(m);
        (value, x)
    }

    /// `min_y max_r e_r^T M y` with an optimal `y`.
    pub fn col_optimum(&self) -> (Rational, Vec<Rational>) {
        let (m, n) = (self.num_rows(), self.num_cols());
        let mut lp = LinearProgram::new(n + 1);
        lp.set_free(n);
        let mut obj = vec![Rational::zero(); n + 1];
        obj[n] = Rational::one();
        lp.set_objective(Sense::Minimize, obj);
        for r in 0..m {
            let mut row = self.payoff[r].clone();
            row.push(-Rational::one());
            lp.add(row, Relation::Le, Rational::zero());
        }
        lp.add(simplex_row(n, 1), Relation::Eq, Rational::one());
        let (value, mut y) = expect_optimal(solve(&lp));
        y.truncate(n);
        (value, y)
    }

    /// Solves both players' LPs; the two values agree by LP duality and
    /// any disagreement is reported as an internal error.
    pub fn solve(&self) -> Result<ZeroSumSolution> {
        let (v_row, row_strategy) = self.row_optimum();
        let (v_col, col_strategy) = self.col_optimum();
        if v_row != v_col {
            return Err(Error::Internal(format!("minimax values differ: {v_row} vs {v_col}")));
        }
        Ok(ZeroSumSolution { value: v_row, row_strategy, col_strategy })
    }

    /// Row player's expected payoff from mixed row `x` against pure column `c`.
    pub fn row_payoff_vs_col(&self, x: &[Rational], c: usize) -> Rational {
        x.iter().zip(&self.payoff).filter(|(w, _)| !w.is_zero()).fold(Rational::zero(), |acc, (w, row)| acc + w * &row[c])
    }

    /// Row player's expected payoff from pure row `r` against mixed column `y`.
    pub fn row_payoff_vs_mixed_col(&self, r: usize, y: &[Rational]) -> Rational {
        y.iter().zip(&self.payoff[r]).filter(|(w, _)| !w.is_zero()).fold(Rational::zero(), |acc, (w, p)| acc + w * p)
    }
}

fn simplex_row(k: usize, extra: usize) -> Vec<Rational> {
    let mut row = vec![Rational::one(); k];
    row.extend(std::iter::repeat_n(Rational::zero(), extra));
    row
}

fn expect_optimal(out: LpOutcome) -> (Rational, Vec<Rational>) {
    match out {
        LpOutcome::Optimal { value, point } => (value, point),
        other => unreachable!("matrix-game LP is feasible and bounded, got {other:?}"),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaximinResult {
    pub value: Rational,
    pub strategy: MixedAction,
}

/// Player `i`'s payoff matrix: rows are own actions, columns are opponent
/// profiles in [`Game::opponent_index`] order.
pub fn player_matrix(game: &Game, i: usize) -> MatrixGame {
    let payoff = (0..game.num_actions(i))
        .map(|a| {
            (0..game.num_opponent_profiles(i))
                .map(|o| game.payoff_at(i, game.join_opponent(i, o, a)).clone())
                .collect()
        })
        .collect();
    MatrixGame {
        rows: game.action_labels()[i].clone(),
        cols: (0..game.num_opponent_profiles(i)).map(|o| format!("o{o}")).collect(),
        payoff,
    }
}

/// The level player `i` guarantees with a mixed action against every pure
/// opponent profile.
pub fn maximin(game: &Game, i: usize) -> MaximinResult {
    let (value, weights) = player_matrix(game, i).row_optimum();
    MaximinResult { value, strategy: MixedAction { player: i, weights } }
}

/// The lowest level to which the other players, correlating, can hold
/// player `i`. The punishment is keyed by opponent-profile index
/// ([`Game::opponent_index`]).
pub fn minimax_dual(game: &Game, i: usize) -> (Rational, JointDistribution) {
    let (value, y) = player_matrix(game, i).col_optimum();
    let punishment = JointDistribution::from_dense(&y).expect("LP solution is a distribution");
    (value, punishment)
}

/// An optimal column strategy whose support is as large as possible: the
/// average of, for each column `s`, an optimal strategy maximizing the weight
/// on `s`.
pub fn strict_complementary_strategy(mg: &MatrixGame) -> MixedAction {
    let (value, _) = mg.col_optimum();
    let (m, n) = (mg.num_rows(), mg.num_cols());
    let mut lp = LinearProgram::new(n);
    for r in 0..m {
        lp.add(mg.payoff[r].clone(), Relation::Le, value.clone());
    }
    lp.add(simplex_row(n, 0), Relation::Eq, Rational::one());
    let mut face = Region::new(&lp).expect("optimal face is nonempty");
    let mut total = vec![Rational::zero(); n];
    for s in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[s] = Rational::one();
        let point = match face.optimize(Sense::Maximize, &e) {
            LpOutcome::Optimal { point, .. } => point,
            other => unreachable!("optimal face is a bounded polytope, got {other:?}"),
        };
        for (t, p) in total.iter_mut().zip(point) {
            *t += p;
        }
    }
    let k = Rational::from_integer((n as i64).into());
    MixedAction { player: 1, weights: total.into_iter().map(|t| t / &k).collect() }
}

/// Maximizer picks a profile `a != a*`, Minimizer picks a player `i`;
/// Maximizer receives `u_i(a) - u_i(a*)`.
pub fn build_theorem1_auxiliary(game: &Game, a_star: &Profile) -> Result<MatrixGame> {
    let star = game.profile_index(a_star.actions())?;
    let n = game.num_players();
    let mut rows = Vec::new();
    let mut payoff = Vec::new();
    for k in (0..game.num_profiles()).filter(|&k| k != star) {
        rows.push(game.profile_label(k));
        payoff.push((0..n).map(|i| game.payoff_at(i, k) - game.payoff_at(i, star)).collect());
    }
    MatrixGame::new(rows, (1..=n).map(|i| format!("player {i}")).collect(), payoff)
}

/// Row profile index of row `r` in the game from [`build_theorem1_auxiliary`].
pub fn theorem1_row_profile(game: &Game, a_star: &Profile, r: usize) -> usize {
    let star = game.index_unchecked(a_star.actions());
    if r < star {
        r
    } else {
        r + 1
    }
}

/// Maximizer picks a profile `b`, Minimizer picks a pair `(i, a_i)`;
/// Maximizer receives `u_i(b) - u_i(a_i, b_{-i})`. Columns are ordered by
/// player, then action.
pub fn build_lemma3_auxiliary(game: &Game) -> MatrixGame {
    let pairs = lemma3_columns(game);
    let payoff = (0..game.num_profiles())
        .map(|b| {
            pairs
                .iter()
                .map(|&(i, a)| game.payoff_at(i, b) - game.payoff_at(i, game.deviate(b, i, a)))
                .collect()
        })
        .collect();
    MatrixGame {
        rows: (0..game.num_profiles()).map(|k| game.profile_label(k)).collect(),
        cols: pairs.iter().map(|&(i, a)| format!("{}:{}", i + 1, game.action_label(i, a))).collect(),
        payoff,
    }
}

pub fn lemma3_columns(game: &Game) -> Vec<(usize, usize)> {
    (0..game.num_players()).flat_map(|i| (0..game.num_actions(i)).map(move |a| (i, a))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::rational::{int, rat};

    #[test]
    fn rps_maximin_is_uniform_zero() {
        let g = rock_paper_scissors();
        for i in 0..2 {
            let m = maximin(&g, i);
            assert_eq!(m.value, int(0));
            assert_eq!(m.strategy.weights, vec![rat(1, 3); 3]);
            let (v, p) = minimax_dual(&g, i);
            assert_eq!(v, int(0));
            assert_eq!(p, JointDistribution::uniform(&[0, 1, 2]));
        }
    }

    #[test]
    fn parking_maximin_is_paying() {
        let g = parking(3, &int(1), &rat(1, 4), &rat(3, 5)).unwrap();
        for i in 0..2 {
            let m = maximin(&g, i);
            assert_eq!(m.value, rat(3, 4));
            assert_eq!(m.strategy.is_pure(), Some(0));
            assert_eq!(minimax_dual(&g, i).0, rat(3, 4));
        }
    }

    #[test]
    fn pd_and_mp_values() {
        let pd = prisoners_dilemma();
        let m = maximin(&pd, 0);
        assert_eq!(m.value, int(1));
        assert_eq!(m.strategy.is_pure(), Some(1));
        let mp = matching_pennies();
        assert_eq!(minimax_dual(&mp, 0).0, int(0));
        assert_eq!(minimax_dual(&mp, 1).0, int(0));
    }

    #[test]
    fn strict_complementary_examples() {
        let mp = MatrixGame::from_matrix(vec![vec![int(1), int(-1)], vec![int(-1), int(1)]]).unwrap();
        assert_eq!(strict_complementary_strategy(&mp).weights, vec![rat(1, 2), rat(1, 2)]);
        let m = MatrixGame::from_matrix(vec![vec![int(0), int(0)], vec![int(-1), int(0)]]).unwrap();
        // Both columns answer the unique row optimum (1, 0) at the value 0.
        let s = strict_complementary_strategy(&m);
        assert_eq!(s.support(), vec![0, 1]);
        let dominant = MatrixGame::from_matrix(vec![vec![int(3), int(1)], vec![int(0), int(0)]]).unwrap();
        assert_eq!(strict_complementary_strategy(&dominant).weights, vec![int(0), int(1)]);
    }

    #[test]
    fn enforcement_auxiliary_examples() {
        let parking = parking(3, &int(1), &rat(1, 4), &rat(3, 5)).unwrap();
        let aux = build_theorem1_auxiliary(&parking, &Profile(vec![0, 0])).unwrap();
        assert_eq!((aux.num_rows(), aux.num_cols()), (15, 2));
        assert!(aux.solve().unwrap().value < int(0));

        let pd = prisoners_dilemma();
        let aux = build_theorem1_auxiliary(&pd, &Profile(vec![1, 1])).unwrap();
        assert_eq!(aux.num_rows(), 3);
        assert_eq!(aux.payoff[0], vec![int(1), int(1)]);
        assert!(aux.solve().unwrap().value >= int(0));
    }

    #[test]
    fn deviation_auxiliary_examples() {
        let mp = build_lemma3_auxiliary(&matching_pennies());
        assert_eq!((mp.num_rows(), mp.num_cols()), (4, 4));
        assert_eq!(mp.solve().unwrap().value, int(0));
        let pd = build_lemma3_auxiliary(&prisoners_dilemma());
        let sol = pd.solve().unwrap();
        assert_eq!(sol.value, int(0));
        assert_eq!(sol.row_strategy, vec![int(0), int(0), int(0), int(1)]);
    }
}
