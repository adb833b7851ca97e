use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("size {size} does not have the parity required by {what}")]
    SizeParityMismatch { size: usize, what: &'static str },

    #[error("partner offset {offset} out of range for size {size}")]
    OffsetOverflow { offset: i64, size: usize },

    #[error("singular evaluation: {0}")]
    SingularEvaluation(String),

    #[error("degenerate point: kernel of T - I has dimension {dim}")]
    DegeneratePoint { dim: usize },

    #[error("base component vanishes at this point; normalization impossible")]
    BaseComponentZero,

    #[error("grid evaluation failed at {point:?}: {reason}")]
    GridEvaluationFailure { point: Vec<i64>, reason: String },

    #[error("configuration is not half-turn symmetric")]
    AsymmetricConfig,

    #[error("tracing inconsistency: {0}")]
    TracingInconsistency(String),

    #[error("cache corruption in {path}: {reason}")]
    CacheCorruption { path: String, reason: String },

    #[error("configuration error: {0}")]
    ConfigError(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
