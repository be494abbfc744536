use thiserror::Error;

/// Errors shared by every evaluator in the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Argument lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation requested exactly at a pole.
    #[error("pole: {0}")]
    Pole(String),

    /// A factor that must be nonzero vanishes (reflection sine, product factor, B-root).
    #[error("singular point: {0}")]
    Singular(String),

    /// Adaptive quadrature or a series failed to meet its tolerance.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// A result magnitude left the representable binary64 range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// Malformed input (bad coefficient list, out-of-range order, ...).
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
