//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed arguments, mismatched lengths, bad parameter ranges.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Evaluation point outside the declared domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A weight/mesh/matrix failed a validity check.
    #[error("validation failed: {0}")]
    Validation(String),

    /// An iterative method ran out of iterations. Carries the last
    /// achieved residual so callers can decide whether to accept it.
    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    Convergence { iterations: usize, residual: f64 },

    /// Numerical failure with a best-effort estimate attached.
    #[error("numerical error: {context} (estimate {estimate:.17e})")]
    Numerical { context: String, estimate: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
