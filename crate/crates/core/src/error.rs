use thiserror::Error;

/// Errors raised by the counting, series and enumeration routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller supplied arguments outside an operation's domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A result that must hold by construction did not (integrality, oracle agreement).
    #[error("invariant violation: {0}")]
    Invariant(String),
    /// Exhaustive enumeration was asked to go beyond its size guard.
    #[error("enumeration cap exceeded: {blocks} blocks requested, cap is {cap}")]
    CapExceeded { blocks: u64, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

pub(crate) fn invariant<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invariant(msg.into()))
}
