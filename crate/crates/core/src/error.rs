use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Caller supplied parameters outside an operation's domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Sampled points or forms kept failing the rank gate.
    #[error("genericity gate failed after {rounds} rounds: {detail}")]
    GenericityFailure { rounds: usize, detail: String },

    /// The symmetric-square injectivity rank stayed short of its target.
    #[error("certification failed: {0}")]
    CertificationFailure(String),

    /// A proven inequality was violated; always an implementation bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
