use thiserror::Error;

/// Errors raised by the group, field and module routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("enumeration cap exceeded: needed {needed}, cap {cap}")]
    CapExceeded { needed: String, cap: u64 },

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree {0} exceeds the supported ceiling of {1}")]
    DegreeTooLarge(usize, usize),

    #[error("field error: {0}")]
    Field(String),

    #[error("mismatched field specifications")]
    FieldMismatch,

    #[error("division by zero in finite field")]
    ZeroInverse,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown group: {0}")]
    UnknownGroup(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("data error: {0}")]
    Data(String),

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("element is not expressible in the generators: {0}")]
    NotExpressible(String),
}

impl Error {
    pub fn cap(needed: impl ToString, cap: u64) -> Self {
        Error::CapExceeded {
            needed: needed.to_string(),
            cap,
        }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
