use thiserror::Error;

use crate::series::SumResult;

/// Failures raised by the numerical core.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// The direct sum hit its term budget before the tail certificate met the tolerance.
    #[error(
        "series not converged after {k_max} terms (partial sum {}, tail bound {})",
        best.value,
        best.tail_bound
    )]
    Truncation { k_max: u64, best: SumResult },

    #[error(
        "quadrature did not reach the requested accuracy after {subdivisions} subdivisions \
         (estimate {estimate}, error {error})"
    )]
    Quadrature {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    /// The truncated Euler-MacLaurin expansion went non-positive, so its logarithm is undefined.
    #[error("Euler-MacLaurin expansion is non-positive ({0}); the temperature is too low for it")]
    NonPositiveExpansion(f64),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
