use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested integral, series or transform does not converge.
    #[error("divergent: {0}")]
    Divergent(String),

    /// An intermediate quantity overflowed or underflowed past usability.
    #[error("overflow: {0}")]
    Overflow(String),

    /// An iterative routine exhausted its iteration budget.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// A matrix that must be invertible is numerically singular.
    #[error("singular matrix: {0}")]
    Singular(String),

    /// Input data violates a documented precondition.
    #[error("invalid data: {0}")]
    InvalidData(String),

    /// Reading or writing an external file failed.
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
