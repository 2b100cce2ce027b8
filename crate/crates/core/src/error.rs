use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to {0}")]
    ContextMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("matrix is not transitive: {0}")]
    NotTransitive(String),
    #[error("entry ({row}, {col}) of the transitive matrix is not central")]
    NonCentral { row: usize, col: usize },
    #[error("invalid cut sequence: {0}")]
    InvalidCuts(String),
    #[error("{what} = {got} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, got: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
