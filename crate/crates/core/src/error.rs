use thiserror::Error;

/// Errors raised by evaluation, sampling and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of a real function (e.g. `log_gamma(0)`).
    #[error("domain error: {0}")]
    Domain(String),
    /// A principal-branch power or root was requested with `Re(base) <= 0`.
    #[error("branch error: {0}")]
    Branch(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    /// Series argument or kernel point outside the region where the evaluation is valid.
    #[error("convergence region violated: {0}")]
    Region(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("series did not converge within {shells} shells (last shell magnitude {tail:e})")]
    NonConvergence { shells: usize, tail: f64 },
    #[error("denominator vanishes: {0}")]
    Singular(String),
    #[error("sampling error: {0}")]
    Sampling(String),
    #[error("quadrature error: {0}")]
    Quadrature(String),
    /// Malformed input: wrong dimension, inadmissible index, bad parameter.
    #[error("usage error: {0}")]
    Usage(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than by the mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Usage(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
