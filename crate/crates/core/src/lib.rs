//! Exact equilibrium polytopes (NE, CE, CCE, IRCP) of finite normal-form
//! games, uniqueness certificates and their refutations.
//!
//! All arithmetic that feeds a certificate is exact rational arithmetic. See
//! the `examples/` directory for one runnable program per capability.

pub mod certify;
pub mod cli;
pub mod contest;
pub mod dynamics;
pub mod error;
pub mod game;
pub mod generators;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod rational;
pub mod report;
pub mod zerosum;

pub use error::{Error, Result};
pub use game::{Game, JointDistribution, MixedAction, OpponentShift, Profile};
pub use rational::Rational;
