use thiserror::Error;

/// Errors produced by the sphere-filon library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("order N = {0} is too small (need N >= 2)")]
    OrderTooSmall(usize),

    #[error("associated Legendre index out of range: |m| = {m} > n = {n}")]
    OrderOutOfRange { n: usize, m: i64 },

    #[error("wavenumber must be {requirement}, got {kappa}")]
    InvalidWavenumber { kappa: f64, requirement: &'static str },

    #[error("root finder did not converge for node {index} of the N = {order} Gauss-Lobatto rule")]
    NoConvergence { order: usize, index: usize },

    #[error("degree mismatch: series has degree {series}, kernel supports up to {kernel}")]
    DegreeMismatch { series: usize, kernel: usize },

    #[error("sample array shape mismatch: expected {expected} values, got {actual}")]
    ShapeMismatch { expected: usize, actual: usize },

    #[error("gradient requested at a pole (theta = {0})")]
    PoleGradient(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
