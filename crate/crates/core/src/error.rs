use thiserror::Error;

/// Errors produced by the core operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite coordinate at index {index}: {value}")]
    NonFinite { index: usize, value: f64 },

    #[error("invalid norm spec: {0}")]
    InvalidSpec(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{operation} is undefined for the zero vector")]
    ZeroVector { operation: &'static str },

    #[error("norm is not smooth at the given point; violating direction {witness:?}")]
    NonsmoothPoint { witness: Vec<f64> },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("singular matrix")]
    SingularMatrix,
}

pub type Result<T> = std::result::Result<T, Error>;
