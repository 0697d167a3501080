use thiserror::Error;

/// Errors raised by the spectral machinery and the telegraph solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Gegenbauer parameter must satisfy alpha > -1/2, got {0}")]
    InvalidAlpha(f64),

    #[error("domain length must be positive and finite, got {0}")]
    InvalidLength(f64),

    #[error("{what}: expected length {expected}, got {actual}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("{what}: expected shape {expected:?}, got {actual:?}")]
    ShapeMismatch {
        what: &'static str,
        expected: (usize, usize),
        actual: (usize, usize),
    },

    #[error("value out of floating-point range: {0}")]
    Range(String),

    #[error("root refinement for C_{degree} (alpha = {alpha}) did not converge")]
    RootNotConverged { degree: usize, alpha: f64 },

    #[error("matrix is singular to working precision: pivot {pivot:e} in column {column}")]
    Singular { column: usize, pivot: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
