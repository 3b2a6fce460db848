use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong inside the toolkit.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("catalog error at line {line}, column {column}: {msg}")]
    Catalog { line: usize, column: usize, msg: String },

    #[error("group {name}: built order {actual} does not match expected order {expected}")]
    OrderMismatch { name: String, expected: u128, actual: u128 },

    #[error("element is not in the group")]
    NotInGroup,

    #[error("not a subgroup of the given group")]
    NotSubgroup,

    #[error("group is not transitive")]
    Intransitive,

    #[error("partition is not invariant under the group")]
    NotInvariant,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource bound exceeded: {0}")]
    Resource(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
