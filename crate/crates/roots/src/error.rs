use hermsym_jordan::JordanError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid signature {0:?}: expected a non-increasing tuple of length equal to the rank")]
    InvalidSignature(Vec<u32>),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("unsupported space: {0}")]
    UnsupportedSpace(String),
    #[error("not an eigenvector: {0}")]
    NotEigenvector(String),
    #[error("{0} is not a noncompact positive root")]
    NotNoncompact(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Jordan(#[from] JordanError),
}

pub type Result<T, E = RootError> = std::result::Result<T, E>;
