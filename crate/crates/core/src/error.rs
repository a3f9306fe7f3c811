use thiserror::Error;

/// Errors raised by the estimation and simulation pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The input makes a statistic undefined (e.g. a zero variance estimate).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A quantity is mathematically undefined for the requested parameters.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("fit failure: {0}")]
    FitFailure(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
