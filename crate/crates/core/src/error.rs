use thiserror::Error;

/// Errors raised by the library.
///
/// [`Error::Invariant`] is reserved for results that would contradict one of
/// the covering theorems or lemmas; callers treat it differently from
/// ordinary usage mistakes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Operands that cannot be combined, e.g. elements of different fields.
    #[error("usage error: {0}")]
    Usage(String),
    /// The input is valid but outside what this library supports.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A requested size exceeds a cost guard.
    #[error("cost guard: {0}")]
    CostGuard(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
    /// A computed result contradicts a proven statement.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
