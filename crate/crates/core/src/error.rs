//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by distribution evaluation, fitting, and data ingestion.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A data file (or string) could not be parsed into a dataset.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An iterative solver exhausted its iteration budget. The message
    /// carries the last iterate for diagnosis.
    #[error("did not converge: {0}")]
    NonConvergence(String),

    /// Adaptive quadrature exceeded its subdivision cap.
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    /// A model name not in the supported set.
    #[error("unknown model: {0}")]
    UnknownModel(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
