use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A guarded enumeration would exceed its configured limit.
    #[error("resource limit exceeded: {what} count {count} exceeds limit {limit}")]
    ResourceLimit {
        what: &'static str,
        count: usize,
        limit: usize,
    },

    /// The swap action on `B_r(G)` would not be free.
    #[error("action not free: {0}")]
    NotFree(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("matching defect: {0}")]
    MatchingDefect(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
