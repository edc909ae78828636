use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("undeclared symbol `{name}` at {line}:{col}")]
    Undeclared { name: String, line: usize, col: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("exact division failed: {0}")]
    Division(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("conjecture violated: {0}")]
    ConjectureViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
