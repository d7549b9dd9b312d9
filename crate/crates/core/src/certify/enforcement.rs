use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::game::{Game, Profile};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnforcementCheck {
    pub a_star: Profile,
    /// `v_i(a*) = 0` for all `i`.
    pub zero_at_star: bool,
    /// `v_i(a*_i, a_{-i}) >= 0` for all `i` and `a_{-i}`.
    pub unilateral_guarantee: bool,
    /// `sum_i v_i(a) < 0` for all `a != a*`.
    pub welfare_negative_elsewhere: bool,
}

impl EnforcementCheck {
    pub fn holds(&self) -> bool {
        self.zero_at_star && self.unilateral_guarantee && self.welfare_negative_elsewhere
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnforcementVerdict {
    Yes(Profile),
    No(String),
}

fn welfare(game: &Game, k: usize) -> Rational {
    (0..game.num_players()).fold(Rational::zero(), |acc, i| acc + game.payoff_at(i, k))
}

fn guarantee_failure(game: &Game, star: usize) -> Option<(usize, usize)> {
    for i in 0..game.num_players() {
        let a = game.action_at(star, i);
        for o in 0..game.num_opponent_profiles(i) {
            let k = game.join_opponent(i, o, a);
            if game.payoff_at(i, k).is_negative() {
                return Some((i, k));
            }
        }
    }
    None
}

fn welfare_failure(game: &Game, star: usize) -> Option<usize> {
    (0..game.num_profiles()).find(|&k| k != star && !welfare(game, k).is_negative())
}

pub fn enforcement_check_at(game: &Game, a_star: &Profile) -> Result<EnforcementCheck> {
    let star = game.profile_index(a_star.actions())?;
    Ok(EnforcementCheck {
        a_star: a_star.clone(),
        zero_at_star: (0..game.num_players()).all(|i| game.payoff_at(i, star).is_zero()),
        unilateral_guarantee: guarantee_failure(game, star).is_none(),
        welfare_negative_elsewhere: welfare_failure(game, star).is_none(),
    })
}

/// Looks for the (necessarily unique) self-enforcing profile.
pub fn check_enforcement(game: &Game) -> EnforcementVerdict {
    let candidates: Vec<usize> = (0..game.num_profiles())
        .filter(|&k| (0..game.num_players()).all(|i| game.payoff_at(i, k).is_zero()))
        .collect();
    for &k in &candidates {
        if guarantee_failure(game, k).is_none() && welfare_failure(game, k).is_none() {
            return EnforcementVerdict::Yes(game.profile_unchecked(k));
        }
    }
    let Some(&k) = candidates.first() else {
        return EnforcementVerdict::No("no profile gives every player zero".into());
    };
    let at = game.profile_label(k);
    if let Some((i, j)) = guarantee_failure(game, k) {
        return EnforcementVerdict::No(format!(
            "at {at}: player {} keeping its action gets {} at {}",
            i + 1,
            game.payoff_at(i, j),
            game.profile_label(j)
        ));
    }
    let j = welfare_failure(game, k).expect("one condition fails");
    EnforcementVerdict::No(format!("at {at}: welfare at {} is {}, not negative", game.profile_label(j), welfare(game, j)))
}
