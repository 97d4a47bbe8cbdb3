use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The function has a pole at the requested argument.
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    /// The argument lies outside the domain where the object is defined.
    #[error("domain error in {function}: {reason}")]
    Domain { function: &'static str, reason: String },

    /// The result does not fit in an f64.
    #[error("overflow in {function} at {at}")]
    Overflow { function: &'static str, at: String },

    /// The requested tolerance cannot be met within the configured budget.
    #[error("precision not reached in {function}: estimate {estimate:.3e} > target {target:.3e}")]
    Precision {
        function: &'static str,
        estimate: f64,
        target: f64,
    },

    /// An integrand or summand produced NaN or infinity.
    #[error("non-finite value in {function} at {at}")]
    NonFinite { function: &'static str, at: String },

    /// Invalid configuration (quadrature order, heights, matrix shape, ...).
    #[error("invalid input to {function}: {reason}")]
    Invalid { function: &'static str, reason: String },
}

impl Error {
    pub(crate) fn domain(function: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            function,
            reason: reason.into(),
        }
    }

    pub(crate) fn invalid(function: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            function,
            reason: reason.into(),
        }
    }

    pub(crate) fn pole(function: &'static str, at: impl std::fmt::Display) -> Self {
        Error::Pole {
            function,
            at: at.to_string(),
        }
    }

    pub(crate) fn non_finite(function: &'static str, at: impl std::fmt::Display) -> Self {
        Error::NonFinite {
            function,
            at: at.to_string(),
        }
    }

    /// True for failures caused by the argument (poles, domain, invalid input),
    /// false for failures of the numerical scheme itself.
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. } | Error::Domain { .. } | Error::Invalid { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
