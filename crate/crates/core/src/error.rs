use thiserror::Error;

/// Errors raised by the economic primitives, the solver and the sweep.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("{quantity} = {value} is outside the domain: {reason}")]
    Domain {
        quantity: &'static str,
        value: f64,
        reason: String,
    },

    #[error("bracket [{lo}, {hi}] does not straddle the {predicate} threshold")]
    Bracket {
        lo: f64,
        hi: f64,
        predicate: &'static str,
    },

    #[error("calibration failed: {0}")]
    Calibration(String),
}

impl ModelError {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        ModelError::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(quantity: &'static str, value: f64, reason: impl Into<String>) -> Self {
        ModelError::Domain {
            quantity,
            value,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, ModelError>;
