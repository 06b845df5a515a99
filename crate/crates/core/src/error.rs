//! Error type shared by all modules.

use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// `|gamma * ell|` would overflow `exp` while assembling a capacitance matrix.
    #[error("gauge exponent overflow: |gamma*ell| = {value} >= 710 in resonator {index}")]
    GaugeOverflow { index: usize, value: f64 },

    /// A sub/sup product is non-positive, so no real-spectrum similarity exists.
    #[error("not symmetrizable: sub[{index}]*sup[{index}] = {product} <= 0")]
    NotSymmetrizable { index: usize, product: f64 },

    /// The diagonal similarity scale left the normal floating-point range.
    #[error("similarity scale overflow at index {index}")]
    ScaleOverflow { index: usize },

    #[error("inverse iteration did not converge for shift {shift} after {iterations} iterations")]
    NoConvergence { shift: f64, iterations: usize },

    /// Reported by `toeplitz_params_of` with the first offending entry.
    #[error("not Toeplitz-with-corners: {band}[{index}] = {value}, expected {expected} within {tol}")]
    NotToeplitz {
        band: &'static str,
        index: usize,
        value: f64,
        expected: f64,
        tol: f64,
    },

    #[error("degenerate decay fit: {surviving} samples above the floor, need at least 3")]
    DegenerateFit { surviving: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// The `M_j` / `zeta` recurrence exceeded 1e300.
    #[error("stability bound recurrence overflowed at j = {j}")]
    BoundOverflow { j: usize },

    #[error("solver residual {residual} exceeds certificate threshold {threshold} for eigenvalue {lambda}")]
    ResidualTooLarge {
        lambda: f64,
        residual: f64,
        threshold: f64,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("config file: {0}")]
    Config(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
