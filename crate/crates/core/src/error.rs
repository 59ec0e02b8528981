use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or mis-shaped input (dimension mismatch, bad tensor extents, bad JSON).
    #[error("input error: {0}")]
    Input(String),
    /// An operation was called on data that does not satisfy its precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A chain would exceed the configured state-space cap.
    #[error("resource cap exceeded: requires dimension {required}, cap is {cap}")]
    Resource { required: u128, cap: u128 },
    /// The input lies outside the supported class (e.g. needs a field extension of ℚ).
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A construction produced data that failed its own exact re-check.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
