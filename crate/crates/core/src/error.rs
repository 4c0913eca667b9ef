use thiserror::Error;

/// Failures reported by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole of the gamma function at z = {re}{im:+}i")]
    Pole { re: f64, im: f64 },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("input not contained in its grid: edge magnitude {edge:.3e} exceeds {limit:.3e}")]
    Truncation { edge: f64, limit: f64 },

    #[error("interpolation outside sampled range: {0}")]
    Interpolation(String),

    #[error("quadrature error: {0}")]
    Quadrature(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
