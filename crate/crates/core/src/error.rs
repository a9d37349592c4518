use thiserror::Error;

/// Failures raised by the library. Verification outcomes are never errors;
/// they travel inside reports.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("{n} coordinates exceeds the cap of {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("cascade level {level} would have {size} coordinates (cap {cap})")]
    LevelCap { level: usize, size: usize, cap: usize },
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("domain mismatch: n = {0} vs n = {1}")]
    DomainMismatch(usize, usize),
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParam {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("{0}")]
    Incompatible(String),
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParam {
        name,
        value,
        reason,
    }
}
