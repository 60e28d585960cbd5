use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GkmError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("edge {0} has zero weight")]
    ZeroWeight(usize),
    #[error("unknown field `{0}`")]
    UnknownField(String),
    #[error("edge id {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("invalid connection: {0}")]
    InvalidConnection(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, GkmError>;
