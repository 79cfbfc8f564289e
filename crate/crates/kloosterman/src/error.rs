use thiserror::Error;

/// Errors for invalid parameters and malformed inputs.
///
/// Internal consistency violations (a character sum with a nonzero ω-component,
/// an inexact division in a formula that is provably integral) are bugs, not
/// user errors; those panic instead of returning a variant here.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("modulus is reducible over F_3: divisible by {factor}")]
    ReducibleModulus { factor: String },

    #[error("sign/parity mismatch: {0}")]
    Parity(String),

    #[error("enumeration scale exceeded: {0}")]
    ScaleExceeded(String),

    #[error("malformed field spec {input:?}: {reason}")]
    FieldSpec { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
