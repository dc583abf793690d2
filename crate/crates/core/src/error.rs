use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("atom `{atom}` is not part of the signature")]
    SignatureMismatch { atom: String },

    #[error("signature has {size} atoms, exceeding the world enumeration cap of {cap}")]
    Capacity { size: usize, cap: usize },

    #[error("duplicate atom `{0}` in signature")]
    DuplicateAtom(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown atom `{atom}` at offset {offset}")]
    UnknownAtom { atom: String, offset: usize },

    #[error("line {line}: {error}")]
    Line { line: usize, error: Box<Error> },

    #[error("duplicate conditional id `{id}` on line {line}")]
    DuplicateId { id: String, line: usize },

    #[error("duplicate conditional id `{0}`")]
    DuplicateConditional(String),

    #[error("malformed rational `{0}`")]
    MalformedRational(String),

    #[error("unknown conditional id `{0}`")]
    UnknownId(String),

    #[error("conditional ids do not match: {0}")]
    IdSetMismatch(String),

    #[error("belief base is inconsistent; no conditional of {{{}}} is tolerated", .remainder.join(", "))]
    Inconsistent { remainder: Vec<String> },

    #[error("threshold must be non-negative, got {0}")]
    NegativeThreshold(String),

    #[error("forgetting rate must satisfy 0 <= delta < 1, got {0}")]
    DeltaOutOfRange(String),

    #[error("invalid threshold schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid session state: {0}")]
    InvalidState(String),
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Error {
        Error::Line { line, error: Box::new(self) }
    }
}
