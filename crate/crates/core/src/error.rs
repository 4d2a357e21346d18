use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("structure violation: {what} (magnitude {violation:e})")]
    StructureViolation { what: String, violation: f64 },
    #[error("numerically singular input (smallest singular value {sigma_min:e})")]
    SingularInput { sigma_min: f64 },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
