use thiserror::Error;

/// Errors produced by the numerical layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside a function's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An (n, p) query the half-plane representation does not cover.
    #[error("inadmissible query: {0}")]
    Inadmissible(String),

    /// Adaptive quadrature exhausted its panel budget before reaching the
    /// requested tolerance. Carries the best value obtained so far.
    #[error("quadrature did not converge: value {value}, error estimate {err_estimate}, {panels} panels")]
    Convergence {
        value: f64,
        err_estimate: f64,
        panels: usize,
    },

    /// Malformed input (CSV density files, exponent strings).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn inadmissible(msg: impl Into<String>) -> Self {
        Error::Inadmissible(msg.into())
    }
}
