use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("polynomial is not a perfect {power}-th power (first inconsistency at degree {degree})")]
    NotAPerfectPower { power: u32, degree: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    ShapeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = ExactError> = std::result::Result<T, E>;
