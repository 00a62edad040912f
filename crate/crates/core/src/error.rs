use thiserror::Error;

/// Errors raised by the tail-bound machinery.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("invalid argument: {0}")]
    Validation(String),

    /// The point lies below the validity floor of a bound.
    #[error("{what} is only valid for x > {floor} (got x = {x})")]
    OutsideValidity { what: &'static str, floor: f64, x: f64 },

    /// A quadrature did not reach its tolerance.
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    /// A root or inversion problem has no solution on the searched range.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// A formula is undefined at the requested parameter.
    #[error("undefined: {0}")]
    Undefined(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Validation(msg.into()))
}
