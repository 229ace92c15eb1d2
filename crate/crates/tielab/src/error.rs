use thiserror::Error;

/// Errors surfaced by fallible operations. Structural misuse of the algebra
/// types (mixing variable sets, radicands, or cyclotomic orders in arithmetic
/// operators) panics instead: those are programming errors, not input errors.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("unknown variable: {0}")]
    UnknownVariable(String),
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("incompatible request: {0}")]
    Incompatible(String),
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("inconsistent diagram: {0}")]
    InconsistentDiagram(String),
    #[error("unoriented diagram: {0}")]
    Unoriented(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
