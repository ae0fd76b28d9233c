use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An operand is outside the domain of the operation (wrong ring, shape,
    /// off-constraint point, non-unitary group element, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A quantity that must be inverted has a vanishing (or non-positive) body.
    #[error("singular: {0}")]
    Singular(String),
    /// A numeric procedure did not reach its tolerance.
    #[error("numeric failure: {0}")]
    Numeric(String),
    /// Unknown chart, case or other named entity.
    #[error("lookup failed: {0}")]
    Lookup(String),
    /// Invalid run configuration.
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
