use thiserror::Error;

/// Errors produced by the lattice, coupling and statistics layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("configuration has no horizontal lines")]
    EmptyConfig,
    #[error("horizontal level m={0} appears more than once")]
    DuplicateLevel(i64),
    #[error("probability {value} outside the open interval {range}")]
    InvalidProbability { value: f64, range: &'static str },
    #[error("exact distribution requested for {n_steps} steps (maximum {max})")]
    TooLargeForExact { n_steps: u64, max: u64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("insufficient grid: {0}")]
    InsufficientGrid(String),
    #[error("path has a non-unit increment at index {index}")]
    InvalidPath { index: usize },
    #[error("local time table is empty")]
    EmptyTable,
    #[error("scale must be positive, got {0}")]
    InvalidScale(f64),
    #[error("configurations are not comparable: {0}")]
    NotComparable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("config line {line}: {msg}")]
    ConfigParse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
