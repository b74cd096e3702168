use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::cmat::TensorError;
use crate::elliptic::EllipticError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum YbeError {
    #[error("{model}: point {point} rejected ({reason})")]
    DomainViolation { model: String, point: String, reason: String },
    #[error("{0}: no R-matrix is available for this model")]
    MissingR(String),
    #[error("{model}: derivative stencil around {theta} leaves the domain")]
    StencilOutOfDomain { model: String, theta: C64 },
    #[error("transform payload is singular: {0}")]
    SingularPayload(String),
    #[error("unknown model id '{0}'")]
    UnknownModel(String),
    #[error("no hermiticity/normality condition set for '{0}'")]
    UnknownConditionSet(String),
    #[error("preset config: {0}")]
    Preset(String),
    #[error("transform spec: {0}")]
    TransformFile(String),
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

impl YbeError {
    /// True for errors caused by where a model was evaluated rather than how
    /// the tool was invoked.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            YbeError::DomainViolation { .. }
                | YbeError::StencilOutOfDomain { .. }
                | YbeError::SingularPayload(_)
                | YbeError::Elliptic(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, YbeError>;
