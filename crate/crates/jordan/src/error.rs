use hermsym_exact::{ExactError, Q};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JordanError {
    #[error("unsupported space: {0}")]
    UnsupportedSpace(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("pair is not quasi-invertible (generic norm {delta})")]
    NotQuasiInvertible { delta: Box<Q> },
    #[error("operator does not lie in the structure algebra")]
    NotInL,
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub type Result<T, E = JordanError> = std::result::Result<T, E>;
