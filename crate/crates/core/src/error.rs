use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },
    #[error("negative exponent {0} is not allowed here")]
    NegativeExponent(i64),
    #[error("zero polynomial has no leading form")]
    ZeroPolynomial,
    #[error("{0}")]
    OutOfRange(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is not invariant under the given map")]
    NotInvariant,
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("window violation: {0}")]
    Window(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn out_of_range(msg: impl Into<String>) -> Self {
        Error::OutOfRange(msg.into())
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
