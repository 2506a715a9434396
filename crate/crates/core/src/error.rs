//! Crate error type.

use thiserror::Error;

/// Errors raised by constructions and checkers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("element is not in the expected subspace (residual {residual:.3e}): {what}")]
    NotInSpan { what: String, residual: f64 },
    #[error("operator is not adjointable (residual {0:.3e})")]
    NotAdjointable(f64),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("precondition violated: {what} (witness: {witness})")]
    Precondition { what: String, witness: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{pointer}: {message}")]
    Input { pointer: String, message: String },
}

/// Crate result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn precondition(what: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Precondition { what: what.into(), witness: witness.into() }
    }
}
