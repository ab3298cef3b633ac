use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a generalized Cartan matrix at ({row}, {col}): {reason}")]
    NotGcm { row: usize, col: usize, reason: String },

    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,

    #[error("weights have different bases")]
    BaseMismatch,

    #[error("height cutoff mismatch: {0} vs {1}")]
    HeightMismatch(usize, usize),

    #[error("result of height {height} exceeds cutoff {cutoff} at offset {offset:?}")]
    TruncationOverflow { offset: Vec<i64>, height: i64, cutoff: usize },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("subspace is not closed under the action at offset {offset:?}")]
    NotActionClosed { offset: Vec<i64> },

    #[error("negative multiplicity {value} for highest weight offset {offset:?}")]
    NegativeMultiplicity { offset: Vec<i64>, value: i64 },

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("character mismatch: {0}")]
    CharacterMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
