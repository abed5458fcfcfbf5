//! Reliability extensions of cooperative games.
//!
//! A simple cooperative game assigns every coalition of agents a value of 0
//! or 1. Its *reliability extension* lets each agent survive independently
//! with a given probability and values a coalition at the probability that
//! its surviving members win. This crate builds such games (s-t network
//! connectivity, minimal winning sets, weighted voting, typed games),
//! values them exactly, computes or estimates Shapley values with rigorous
//! confidence intervals, and decides core questions by veto analysis,
//! typed-game linear programming, brute-force LP, and a constructive method
//! for convex bases.
//!
//! Exact algorithms are exponential and refuse to run above configurable
//! agent caps rather than silently degrading; Monte Carlo estimation covers
//! the rest. Sampling is deterministic for a fixed seed regardless of
//! thread count.

pub mod cli;
pub mod coalition;
pub mod core;
pub mod error;
pub mod games;
mod kahan;
pub mod lp;
pub mod netgame;
pub mod reliability;
pub mod shapley;

#[cfg(test)]
pub(crate) mod testgames;

pub use coalition::Coalition;
pub use error::{Error, Result};
pub use games::{BaseGame, ExplicitGame, SimpleGame, TableGame, TypedGame, WeightedVotingGame};
pub use netgame::Network;
pub use reliability::ReliabilityGame;
pub use shapley::{SamplingMode, ShapleyEstimate};
