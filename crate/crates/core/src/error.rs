use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation hit a pole of a Möbius map.
    #[error("pole: {0}")]
    Pole(String),

    /// Malformed argument (empty list, bad grid size, non-positive tolerance, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
    #[error("quadrature did not reach tolerance {tol:e} (error estimate {error_estimate:e})")]
    Accuracy { best: Complex64, error_estimate: f64, tol: f64 },

    /// Point lies on (or numerically too close to) a boundary curve.
    #[error("region membership indeterminate: point {point} is within {distance:e} of the curve")]
    Indeterminate { point: Complex64, distance: f64 },

    /// A search that should have bracketed a root did not.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
