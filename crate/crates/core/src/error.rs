use alloc::string::String;

/// Errors raised by the exact and numeric routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at {0}")]
    Pole(String),
    #[error("coefficients live in different fields (conductors {0} and {1})")]
    MixedFields(u64, u64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported in exact mode: {0}")]
    Unsupported(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
