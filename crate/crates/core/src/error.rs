use crate::arith::Overflow;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OctaError {
    #[error("contract violation: {0}")]
    Contract(String),
    #[error(transparent)]
    Overflow(#[from] Overflow),
    #[error("enumerating {what} needs {size} elements, above the cap of {cap} (set OCTA_MAX_ENUM to raise it)")]
    EnumerationTooLarge { what: String, size: u128, cap: u128 },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, OctaError>;

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(OctaError::Contract(msg.into()))
}
