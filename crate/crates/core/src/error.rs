use thiserror::Error;

/// Errors produced by the steering toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("subsystem index {index} out of range for {count} subsystems")]
    SubsystemOutOfRange { index: usize, count: usize },

    #[error("matrix is not Hermitian (residual {0:e})")]
    NotHermitian(f64),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("state vector is not normalized (squared norm {0})")]
    Unnormalized(f64),

    #[error("all-zero coefficient vector")]
    ZeroCoefficients,

    #[error("{count} settings exceed the exact enumeration limit of {limit}")]
    TooManySettings { count: usize, limit: usize },

    #[error("unknown builtin state `{0}`")]
    UnknownState(String),

    #[error("linear program failed numerically: {0}")]
    LpFailure(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
