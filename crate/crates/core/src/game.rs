//! Finite normal-form games over exact rationals.
//!
//! Profiles are laid out lexicographically with player 1 varying slowest, so
//! profile `(a_1, ..., a_n)` has index `sum_i a_i * prod_{j > i} |A_j|`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{sum, Rational};

/// A pure action profile, one action index per player.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile(pub Vec<usize>);

impl Profile {
    pub fn new(actions: Vec<usize>) -> Self {
        Profile(actions)
    }

    pub fn actions(&self) -> &[usize] {
        &self.0
    }

    pub fn action(&self, player: usize) -> usize {
        self.0[player]
    }

    /// The profile with `player`'s action replaced.
    pub fn with(&self, player: usize, action: usize) -> Profile {
        let mut v = self.0.clone();
        v[player] = action;
        Profile(v)
    }
}

impl From<Vec<usize>> for Profile {
    fn from(v: Vec<usize>) -> Self {
        Profile(v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Game {
    name: Option<String>,
    actions: Vec<Vec<String>>,
    /// `payoffs[i][k]` is player `i`'s payoff at the profile with index `k`.
    payoffs: Vec<Vec<Rational>>,
    strides: Vec<usize>,
}

impl Game {
    pub fn new(
        name: Option<String>,
        actions: Vec<Vec<String>>,
        payoffs: Vec<Vec<Rational>>,
    ) -> Result<Game> {
        if actions.is_empty() {
            return Err(Error::Shape("a game needs at least one player".into()));
        }
        for (i, a) in actions.iter().enumerate() {
            if a.len() < 2 {
                return Err(Error::Shape(format!(
                    "player {} has {} action(s); at least 2 are required",
                    i + 1,
                    a.len()
                )));
            }
        }
        let size: usize = actions.iter().map(Vec::len).product();
        if payoffs.len() != actions.len() {
            return Err(Error::Shape(format!(
                "{} payoff rows for {} players",
                payoffs.len(),
                actions.len()
            )));
        }
        for (i, row) in payoffs.iter().enumerate() {
            if row.len() != size {
                return Err(Error::Shape(format!(
                    "player {} has {} payoffs, expected {}",
                    i + 1,
                    row.len(),
                    size
                )));
            }
        }
        let mut strides = vec![1; actions.len()];
        for i in (0..actions.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * actions[i + 1].len();
        }
        Ok(Game { name, actions, payoffs, strides })
    }

    /// Builds a game with default labels `a0, a1, ...` from a payoff function.
    pub fn from_fn<F>(shape: &[usize], mut f: F) -> Result<Game>
    where
        F: FnMut(usize, &[usize]) -> Rational,
    {
        let actions: Vec<Vec<String>> = shape
            .iter()
            .map(|&k| (0..k).map(|a| format!("a{a}")).collect())
            .collect();
        Self::from_fn_labeled(None, actions, |i, p| f(i, p))
    }

    pub fn from_fn_labeled<F>(
        name: Option<String>,
        actions: Vec<Vec<String>>,
        mut f: F,
    ) -> Result<Game>
    where
        F: FnMut(usize, &[usize]) -> Rational,
    {
        let shape: Vec<usize> = actions.iter().map(Vec::len).collect();
        let profiles: Vec<Vec<usize>> = shape.iter().map(|&k| 0..k).multi_cartesian_product().collect();
        let payoffs = (0..shape.len())
            .map(|i| profiles.iter().map(|p| f(i, p)).collect())
            .collect();
        Game::new(name, actions, payoffs)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn num_players(&self) -> usize {
        self.actions.len()
    }

    pub fn num_actions(&self, player: usize) -> usize {
        self.actions[player].len()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.actions.iter().map(Vec::len).collect()
    }

    pub fn num_profiles(&self) -> usize {
        self.payoffs[0].len()
    }

    pub fn action_labels(&self) -> &[Vec<String>] {
        &self.actions
    }

    pub fn action_label(&self, player: usize, action: usize) -> &str {
        &self.actions[player][action]
    }

    /// Human-readable profile label such as `(pay,l1)`.
    pub fn profile_label(&self, index: usize) -> String {
        let names: Vec<&str> = (0..self.num_players()).map(|i| self.action_label(i, self.action_at(index, i))).collect();
        format!("({})", names.join(","))
    }

    pub fn payoff_rows(&self) -> &[Vec<Rational>] {
        &self.payoffs
    }

    pub fn payoffs_of(&self, player: usize) -> &[Rational] {
        &self.payoffs[player]
    }

    pub fn payoff_at(&self, player: usize, index: usize) -> &Rational {
        &self.payoffs[player][index]
    }

    pub fn payoff(&self, player: usize, profile: &[usize]) -> &Rational {
        &self.payoffs[player][self.index_unchecked(profile)]
    }

    pub fn profile_index(&self, profile: &[usize]) -> Result<usize> {
        if profile.len() != self.num_players() {
            return Err(Error::Shape(format!(
                "profile has {} entries for {} players",
                profile.len(),
                self.num_players()
            )));
        }
        for (i, &a) in profile.iter().enumerate() {
            if a >= self.num_actions(i) {
                return Err(Error::OutOfRange { index: a, size: self.num_actions(i) });
            }
        }
        Ok(self.index_unchecked(profile))
    }

    pub(crate) fn index_unchecked(&self, profile: &[usize]) -> usize {
        profile.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    pub fn profile_from_index(&self, index: usize) -> Result<Profile> {
        if index >= self.num_profiles() {
            return Err(Error::OutOfRange { index, size: self.num_profiles() });
        }
        Ok(self.profile_unchecked(index))
    }

    pub(crate) fn profile_unchecked(&self, index: usize) -> Profile {
        Profile(
            self.strides
                .iter()
                .zip(&self.actions)
                .map(|(s, a)| (index / s) % a.len())
                .collect(),
        )
    }

    /// Action of `player` at profile `index`.
    pub fn action_at(&self, index: usize, player: usize) -> usize {
        (index / self.strides[player]) % self.actions[player].len()
    }

    /// Index of the profile obtained from `index` by switching `player` to `action`.
    pub fn deviate(&self, index: usize, player: usize, action: usize) -> usize {
        let current = self.action_at(index, player);
        index + action * self.strides[player] - current * self.strides[player]
    }

    pub fn profiles(&self) -> impl Iterator<Item = Profile> + '_ {
        (0..self.num_profiles()).map(|k| self.profile_unchecked(k))
    }

    /// Number of opponent profiles `|A_{-i}|`.
    pub fn num_opponent_profiles(&self, player: usize) -> usize {
        self.num_profiles() / self.num_actions(player)
    }

    /// Lexicographic index of `a_{-i}` within `A_{-i}` for the profile with index `index`.
    pub fn opponent_index(&self, player: usize, index: usize) -> usize {
        let base = self.deviate(index, player, 0);
        let stride = self.strides[player];
        let k = self.num_actions(player);
        // Drop player's digit from the mixed-radix representation.
        (base / (stride * k)) * stride + base % stride
    }

    /// Index of the profile with `a_{-i}` given by `opponent` and `a_i = action`.
    pub fn join_opponent(&self, player: usize, opponent: usize, action: usize) -> usize {
        let stride = self.strides[player];
        let k = self.num_actions(player);
        (opponent / stride) * stride * k + action * stride + opponent % stride
    }

    pub fn expected_payoff(&self, player: usize, mu: &JointDistribution) -> Rational {
        mu.iter()
            .fold(Rational::zero(), |acc, (k, w)| acc + w * &self.payoffs[player][*k])
    }

    /// Expected payoff to `player` from ignoring the distribution's
    /// recommendation and always playing `action`.
    pub fn deviation_payoff(&self, player: usize, action: usize, mu: &JointDistribution) -> Rational {
        mu.iter().fold(Rational::zero(), |acc, (k, w)| {
            acc + w * &self.payoffs[player][self.deviate(*k, player, action)]
        })
    }

    /// Smallest and largest payoff over all players and profiles.
    pub fn payoff_range(&self) -> (Rational, Rational) {
        let mut it = self.payoffs.iter().flatten();
        let first = it.next().cloned().unwrap_or_else(Rational::zero);
        it.fold((first.clone(), first), |(lo, hi), x| {
            (if *x < lo { x.clone() } else { lo }, if *x > hi { x.clone() } else { hi })
        })
    }

    /// `v_i(a) = gamma_i (u_i(a) + beta_i)`.
    pub fn affine_transform(&self, gamma: &[Rational], beta: &[Rational]) -> Result<Game> {
        self.check_weights(gamma)?;
        if beta.len() != self.num_players() {
            return Err(Error::Shape(format!("{} shifts for {} players", beta.len(), self.num_players())));
        }
        let payoffs = self
            .payoffs
            .iter()
            .zip(gamma.iter().zip(beta))
            .map(|(row, (g, b))| row.iter().map(|u| g * (u + b)).collect())
            .collect();
        Game::new(self.name.clone(), self.actions.clone(), payoffs)
    }

    /// `v_i(a_i, a_{-i}) = gamma_i (u_i(a_i, a_{-i}) + beta_i(a_{-i}))`.
    pub fn strategic_transform(&self, gamma: &[Rational], beta: &OpponentShift) -> Result<Game> {
        self.check_weights(gamma)?;
        beta.check_shape(self)?;
        let payoffs = (0..self.num_players())
            .map(|i| {
                (0..self.num_profiles())
                    .map(|k| &gamma[i] * (&self.payoffs[i][k] + &beta.values[i][self.opponent_index(i, k)]))
                    .collect()
            })
            .collect();
        Game::new(self.name.clone(), self.actions.clone(), payoffs)
    }

    fn check_weights(&self, gamma: &[Rational]) -> Result<()> {
        if gamma.len() != self.num_players() {
            return Err(Error::Shape(format!("{} weights for {} players", gamma.len(), self.num_players())));
        }
        if let Some((i, g)) = gamma.iter().enumerate().find(|(_, g)| !g.is_positive()) {
            return Err(Error::InvalidParameter(format!("weight for player {} is {g}, must be positive", i + 1)));
        }
        Ok(())
    }

    /// The reduced game `u'_i(a) = u_i(a) - u_i(a*_i, a_{-i})`, whose CCE set
    /// equals that of `self`.
    pub fn reduce_at(&self, a_star: &Profile) -> Result<Game> {
        self.profile_index(a_star.actions())?;
        let shift = OpponentShift::from_fn(self, |i, k| -self.payoff_at(i, self.deviate(k, i, a_star.action(i))).clone());
        self.strategic_transform(&vec![Rational::one(); self.num_players()], &shift)
    }

    /// True iff all action sets have equal size and payoffs are invariant
    /// under every permutation of player roles.
    pub fn is_symmetric(&self) -> bool {
        let n = self.num_players();
        let k = self.num_actions(0);
        if (0..n).any(|i| self.num_actions(i) != k) {
            return false;
        }
        for perm in (0..n).permutations(n) {
            for idx in 0..self.num_profiles() {
                let a = self.profile_unchecked(idx);
                // Player perm[i] takes over player i's action.
                let mut b = vec![0; n];
                for i in 0..n {
                    b[perm[i]] = a.0[i];
                }
                let jdx = self.index_unchecked(&b);
                for i in 0..n {
                    if self.payoffs[perm[i]][jdx] != self.payoffs[i][idx] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Per-player additive shifts `beta_i(a_{-i})`, stored densely over `A_{-i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct OpponentShift {
    pub values: Vec<Vec<Rational>>,
}

impl OpponentShift {
    pub fn constant(game: &Game, beta: &[Rational]) -> Self {
        OpponentShift {
            values: (0..game.num_players())
                .map(|i| vec![beta[i].clone(); game.num_opponent_profiles(i)])
                .collect(),
        }
    }

    /// Evaluates `f(i, k)` at the profile `k` with `a_i = 0` for every
    /// `a_{-i}`, so the result depends on opponents' actions only.
    pub fn from_fn<F: FnMut(usize, usize) -> Rational>(game: &Game, mut f: F) -> Self {
        OpponentShift {
            values: (0..game.num_players())
                .map(|i| {
                    (0..game.num_opponent_profiles(i))
                        .map(|o| f(i, game.join_opponent(i, o, 0)))
                        .collect()
                })
                .collect(),
        }
    }

    fn check_shape(&self, game: &Game) -> Result<()> {
        if self.values.len() != game.num_players()
            || self
                .values
                .iter()
                .enumerate()
                .any(|(i, v)| v.len() != game.num_opponent_profiles(i))
        {
            return Err(Error::Shape("opponent shift does not match the game's shape".into()));
        }
        Ok(())
    }
}

/// A probability distribution over action profiles, keyed by profile index.
/// Zero weights are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointDistribution {
    weights: BTreeMap<usize, Rational>,
}

impl JointDistribution {
    pub fn new<I: IntoIterator<Item = (usize, Rational)>>(entries: I) -> Result<Self> {
        let mut weights: BTreeMap<usize, Rational> = BTreeMap::new();
        for (k, w) in entries {
            if w.is_negative() {
                return Err(Error::InvalidParameter(format!("negative probability {w} at profile {k}")));
            }
            *weights.entry(k).or_insert_with(Rational::zero) += w;
        }
        weights.retain(|_, w| !w.is_zero());
        let total = sum(weights.values());
        if !total.is_one() {
            return Err(Error::InvalidParameter(format!("probabilities sum to {total}, not 1")));
        }
        Ok(JointDistribution { weights })
    }

    pub fn from_dense(weights: &[Rational]) -> Result<Self> {
        Self::new(weights.iter().cloned().enumerate())
    }

    pub fn point_mass(index: usize) -> Self {
        JointDistribution { weights: BTreeMap::from([(index, Rational::one())]) }
    }

    pub fn uniform(indices: &[usize]) -> Self {
        let w = Rational::new(1.into(), (indices.len() as i64).into());
        Self::new(indices.iter().map(|&k| (k, w.clone()))).expect("uniform weights sum to one")
    }

    /// Product distribution of independent mixed actions (one per player).
    pub fn product(game: &Game, mixes: &[MixedAction]) -> Result<Self> {
        if mixes.len() != game.num_players() {
            return Err(Error::Shape(format!("{} mixed actions for {} players", mixes.len(), game.num_players())));
        }
        for (i, m) in mixes.iter().enumerate() {
            if m.weights.len() != game.num_actions(i) {
                return Err(Error::Shape(format!("mixed action for player {} has wrong length", i + 1)));
            }
        }
        let supports: Vec<Vec<usize>> = mixes.iter().map(|m| m.support()).collect();
        let entries = supports.iter().map(|s| s.iter().copied()).multi_cartesian_product().map(|p| {
            let w = p.iter().enumerate().fold(Rational::one(), |acc, (i, &a)| acc * &mixes[i].weights[a]);
            (game.index_unchecked(&p), w)
        });
        Self::new(entries)
    }

    pub fn get(&self, index: usize) -> Rational {
        self.weights.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &Rational)> {
        self.weights.iter()
    }

    pub fn support(&self) -> Vec<usize> {
        self.weights.keys().copied().collect()
    }

    pub fn is_pure(&self) -> Option<usize> {
        (self.weights.len() == 1).then(|| *self.weights.keys().next().unwrap())
    }

    pub fn to_dense(&self, size: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); size];
        for (k, w) in &self.weights {
            v[*k] = w.clone();
        }
        v
    }

    /// `(1 - alpha) * self + alpha * other`.
    pub fn mix(&self, other: &JointDistribution, alpha: &Rational) -> Result<Self> {
        let keep = Rational::one() - alpha;
        Self::new(
            self.weights
                .iter()
                .map(|(k, w)| (*k, w * &keep))
                .chain(other.weights.iter().map(|(k, w)| (*k, w * alpha))),
        )
    }

    pub fn marginal(&self, game: &Game, player: usize) -> MixedAction {
        let mut weights = vec![Rational::zero(); game.num_actions(player)];
        for (k, w) in &self.weights {
            weights[game.action_at(*k, player)] += w;
        }
        MixedAction { player, weights }
    }

    /// The marginals, if the distribution equals their product.
    pub fn as_product(&self, game: &Game) -> Option<Vec<MixedAction>> {
        let marginals: Vec<MixedAction> = (0..game.num_players()).map(|i| self.marginal(game, i)).collect();
        let product = JointDistribution::product(game, &marginals).ok()?;
        (product == *self).then_some(marginals)
    }

    /// Total variation distance `(1/2) sum |p - q|`.
    pub fn total_variation(&self, other: &JointDistribution) -> Rational {
        let keys: std::collections::BTreeSet<usize> =
            self.weights.keys().chain(other.weights.keys()).copied().collect();
        let total = keys
            .into_iter()
            .fold(Rational::zero(), |acc, k| acc + (self.get(k) - other.get(k)).abs());
        total / Rational::from_integer(2.into())
    }
}

/// A mixed action of a single player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedAction {
    pub player: usize,
    pub weights: Vec<Rational>,
}

impl MixedAction {
    pub fn new(player: usize, weights: Vec<Rational>) -> Result<Self> {
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidParameter("negative probability in mixed action".into()));
        }
        if !sum(&weights).is_one() {
            return Err(Error::InvalidParameter("mixed action does not sum to 1".into()));
        }
        Ok(MixedAction { player, weights })
    }

    pub fn pure(player: usize, num_actions: usize, action: usize) -> Self {
        let mut weights = vec![Rational::zero(); num_actions];
        weights[action] = Rational::one();
        MixedAction { player, weights }
    }

    pub fn support(&self) -> Vec<usize> {
        self.weights.iter().enumerate().filter(|(_, w)| !w.is_zero()).map(|(a, _)| a).collect()
    }

    pub fn is_pure(&self) -> Option<usize> {
        let s = self.support();
        (s.len() == 1).then(|| s[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn zero_game(shape: &[usize]) -> Game {
        Game::from_fn(shape, |_, _| int(0)).unwrap()
    }

    #[test]
    fn lexicographic_indexing() {
        assert_eq!(zero_game(&[2, 2]).profile_index(&[0, 0]).unwrap(), 0);
        assert_eq!(zero_game(&[2, 3]).profile_index(&[1, 2]).unwrap(), 5);
        let g = zero_game(&[2, 2, 2]);
        assert_eq!(g.profile_index(&[1, 0, 1]).unwrap(), 5);
        assert_eq!(g.profile_from_index(5).unwrap(), Profile(vec![1, 0, 1]));
    }

    #[test]
    fn indexing_errors() {
        let g = zero_game(&[2, 3]);
        assert!(matches!(g.profile_index(&[0, 3]), Err(Error::OutOfRange { .. })));
        assert!(g.profile_index(&[0]).is_err());
        assert!(matches!(g.profile_from_index(6), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(Game::from_fn(&[1, 2], |_, _| int(0)).is_err());
        assert!(Game::new(None, vec![vec!["x".into(), "y".into()]], vec![vec![int(0)]]).is_err());
    }

    #[test]
    fn opponent_index_roundtrip() {
        let g = zero_game(&[2, 3, 2]);
        for i in 0..3 {
            for k in 0..g.num_profiles() {
                let o = g.opponent_index(i, k);
                assert!(o < g.num_opponent_profiles(i));
                assert_eq!(g.join_opponent(i, o, g.action_at(k, i)), k);
            }
        }
    }

    #[test]
    fn distribution_validation() {
        assert!(JointDistribution::new([(0, rat(1, 2)), (1, rat(1, 3))]).is_err());
        assert!(JointDistribution::new([(0, rat(3, 2)), (1, rat(-1, 2))]).is_err());
        let d = JointDistribution::new([(0, rat(1, 2)), (1, rat(1, 2)), (2, int(0))]).unwrap();
        assert_eq!(d.support(), vec![0, 1]);
    }

    #[test]
    fn product_and_marginals() {
        let g = zero_game(&[2, 2]);
        let half = MixedAction::new(0, vec![rat(1, 2), rat(1, 2)]).unwrap();
        let pure = MixedAction::pure(1, 2, 1);
        let d = JointDistribution::product(&g, &[half, pure]).unwrap();
        assert_eq!(d.get(1), rat(1, 2));
        assert_eq!(d.get(3), rat(1, 2));
        assert!(d.as_product(&g).is_some());
        let corr = JointDistribution::new([(0, rat(1, 2)), (3, rat(1, 2))]).unwrap();
        assert!(corr.as_product(&g).is_none());
    }

    #[test]
    fn affine_rejects_nonpositive_weight() {
        let g = zero_game(&[2, 2]);
        assert!(g.affine_transform(&[int(1), int(0)], &[int(0), int(0)]).is_err());
        assert!(g.affine_transform(&[int(1), int(-1)], &[int(0), int(0)]).is_err());
    }
}
