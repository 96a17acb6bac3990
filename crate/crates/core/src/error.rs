use thiserror::Error;

use crate::graph6::Graph6Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Graph6(#[from] Graph6Error),

    /// A vertex count or group order exceeds what the operation supports.
    #[error("size cap exceeded: {what} = {value}, limit {limit}")]
    SizeCap {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    /// The input does not satisfy the hypothesis of a theorem checker.
    #[error("rejected input: {0}")]
    Rejected(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("unknown graph name `{0}`")]
    UnknownName(String),
}

impl Error {
    pub(crate) fn size_cap(what: &'static str, value: usize, limit: usize) -> Self {
        Error::SizeCap { what, value, limit }
    }
}
