//! Random walks on the two-dimensional K-comb lattice.
//!
//! The walk moves vertically with probability 1/2 each way, except on a
//! finite set of horizontal lines `y = m_j` where it steps up or down with
//! probability `p_j` and left or right with probability `1/2 - p_j`.
//!
//! * [`lattice`]: configuration, direct stepper, exact finite-N law.
//! * [`coupling`]: the equivalent two-walk construction with geometric
//!   horizontal runs, and its step accounting.
//! * [`localtime`]: local times of simple symmetric walks.
//! * [`geom_bound`]: maximal tail bound for centered geometric sums.
//! * [`limit_stats`]: limit-law oracles, KS / chi-square checks, scaling
//!   exponents, LIL series.
//! * [`cli`]: the `kcomb` command-line front end.
//!
//! Probability-valued code is generic over [`Probability`] (`f32`, `f64`,
//! exact rationals); the aliases below fix the common choices.

pub mod cli;
pub mod coupling;
pub mod error;
pub mod geom_bound;
pub mod lattice;
pub mod limit_stats;
pub mod localtime;
pub mod rng;
pub mod scalar;
pub mod stats;

pub use error::{Error, Result};
pub use lattice::{KCombConfig, LineSpec, Position, RecordMode};
pub use rng::SeedSpec;
pub use scalar::Probability;

pub use num_rational::BigRational;

/// Configuration with `f64` probabilities (simulation default).
pub type Config = KCombConfig<f64>;
/// Configuration with exact rational probabilities.
pub type RationalConfig = KCombConfig<BigRational>;
pub type Table = lattice::DistributionTable<f64>;
pub type RationalTable = lattice::DistributionTable<BigRational>;
pub type Trajectory = lattice::Trajectory<f64>;

/// The classical comb: one line at `y = 0` with `p = 1/4`.
pub fn classical_comb() -> Config {
    lattice::validate_config(&[(0, 0.25)]).expect("valid")
}
