use thiserror::Error;

/// Errors raised by oracles, enumerators and instance loaders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: out-of-range ids, inconsistent schema fields.
    #[error("invalid input: {0}")]
    Input(String),
    /// A documented precondition of an operation does not hold.
    #[error("contract violation: {0}")]
    Contract(String),
    /// An exhaustive routine was asked to run past its size guard.
    #[error("size guard exceeded: {0}")]
    Guard(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Contract(msg.into()))
}
