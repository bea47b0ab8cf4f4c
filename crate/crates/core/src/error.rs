use alloc::string::String;

use crate::space::SpaceModel;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{value} lies outside the domain ({lo}, {hi})")]
    DomainViolation { value: f64, lo: f64, hi: f64 },

    /// The adaptive quadrature exhausted its panel budget (or hit an open
    /// endpoint it may not touch) with the error estimate still above tolerance.
    #[error("quadrature did not converge: value {value:e}, error estimate {error_estimate:e} after {panels} panels")]
    NonConvergence {
        value: f64,
        error_estimate: f64,
        panels: usize,
    },

    #[error("model {model} is not supported here: {reason}")]
    UnsupportedModel {
        model: SpaceModel,
        reason: &'static str,
    },

    #[error("invalid point: {0}")]
    InvalidPoint(&'static str),

    #[error("enumeration depth {depth} is below the required {required}")]
    DepthInsufficient { depth: u32, required: u32 },

    #[error("group self-check failed: {0}")]
    SelfCheckFailed(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("unknown model identifier `{0}`")]
    UnknownModel(String),
}

impl Error {
    pub(crate) fn unsupported(model: SpaceModel, reason: &'static str) -> Self {
        Error::UnsupportedModel { model, reason }
    }
}
