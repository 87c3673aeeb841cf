//! Error type shared by all modules.

/// Errors surfaced by the library.
///
/// `VerificationFailed` means an eagerly-checked mathematical invariant did
/// not hold for the given input (e.g. a tampered family file); `Internal`
/// means a self-check that should be unconditionally true failed, which
/// indicates a bug rather than bad input.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::BudgetExceeded(msg.into())
    }
}
