//! Exact analysis of mediated data sharing between competing sellers.
//!
//! Games are finite Bayesian games: a consumer type is drawn from a prior,
//! each seller sees a partition cell and offers one good, and the surplus of
//! a sale is split evenly among everyone offering the desired good
//! (optionally including an always-informed outside competitor). All
//! quantities are exact rationals.

pub mod analysis;
pub mod engine;
pub mod equilibrium;
pub mod error;
pub mod game;
pub mod mediators;
pub mod rational;
pub mod scenarios;
pub mod segments;
pub mod strategy;

pub use error::{Error, Result};
pub use game::{validate_game, GameSpec, ValidatedGame};
pub use rational::{Lottery, Q};
