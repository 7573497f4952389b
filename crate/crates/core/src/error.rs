use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("trivial relation: both sides are the same word")]
    TrivialRelation,
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("no witness: {0}")]
    NoWitness(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
