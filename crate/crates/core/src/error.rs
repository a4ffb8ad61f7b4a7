use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured ceiling or invariant was violated.
    #[error("configuration error: {0}")]
    Config(String),
    /// Malformed textual input (rationals, grid specs, names).
    #[error("parse error: {0}")]
    Parse(String),
    /// Two independent enclosures of the same quantity were disjoint.
    #[error("inconsistent enclosures: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
