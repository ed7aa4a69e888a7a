use alloc::string::String;

use crate::C64;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Input is degenerate for the requested operation (zero polynomial,
    /// constant in the elimination variable, ...).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    /// An iteration did not converge; `best` is the last iterate.
    #[error("numeric failure: {what}")]
    Numeric { what: String, best: Option<C64> },
    /// Argument outside the domain of the operation (e.g. off the open disk).
    #[error("domain error: {0}")]
    Domain(String),
    /// A documented precondition does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// Output that the underlying theorem rules out; signals a numerical
    /// classification failure upstream.
    #[error("theory violation: {0}")]
    TheoryViolation(String),
    /// Two computed quantities that must agree do not.
    #[error("consistency error: {0}")]
    Consistency(String),
    /// A scalar parameter is outside the range where a construction exists.
    #[error("value {value} out of range: must be at least {bound}")]
    OutOfRange { value: f64, bound: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("singular system: {0}")]
    Singular(String),
}

impl Error {
    pub(crate) fn numeric(what: impl Into<String>, best: Option<C64>) -> Self {
        Error::Numeric { what: what.into(), best }
    }
}
