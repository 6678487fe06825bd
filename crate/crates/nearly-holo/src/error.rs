use hermsym_exact::ExactError;
use hermsym_jordan::JordanError;
use hermsym_roots::RootError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NhError {
    #[error("the metric is singular at this point")]
    SingularMetric,
    #[error("reconstruction mismatch: {0}")]
    ReconstructionMismatch(String),
    #[error("sections live on different spaces or bundles: {0}")]
    SpaceMismatch(String),
    #[error("not quasi-invertible: {0}")]
    NotQuasiInvertible(String),
    #[error("not in the structure group: {0}")]
    NotInStructureGroup(String),
    #[error("not in the structure algebra: {0}")]
    NotInL(String),
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Jordan(#[from] JordanError),
    #[error(transparent)]
    Roots(#[from] RootError),
}

pub type Result<T, E = NhError> = std::result::Result<T, E>;
