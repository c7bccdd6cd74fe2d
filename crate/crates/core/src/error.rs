use thiserror::Error;

/// Errors raised by the exact-arithmetic layer.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is structurally invalid (bad dimensions, out-of-range
    /// subset, zero superdiagonal exponent, malformed element, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A mathematical precondition does not hold for the given input
    /// (e.g. a determinant-(-1) matrix where SL(n,Z) is required).
    #[error("precondition violation: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
