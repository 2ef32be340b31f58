use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested integral does not converge for these inputs.
    #[error("divergent integral: {0}")]
    Divergent(String),

    /// An exact computation produced a value that must be impossible, e.g. a
    /// non-integral coefficient where integrality is a theorem.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("quadrature did not converge: {0}")]
    NoConvergence(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
