//! Error type shared across the toolkit.

use std::fmt;

/// Errors raised by matrix kernels, module operations and integral checks.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand dimensions are incompatible.
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
    /// Matrix is not Hermitian within the requested tolerance.
    NotHermitian { deviation: f64 },
    /// Matrix has an eigenvalue below the PSD tolerance band.
    NotPsd { min_eigenvalue: f64 },
    /// A sampled value at the given node is not PSD.
    NotPsdAtNode { node: usize, min_eigenvalue: f64 },
    /// Pivot below the singularity threshold during LU factorization.
    Singular { pivot: f64 },
    /// Iteration cap exceeded.
    NoConvergence { iterations: usize },
    /// Matrix entries must be finite.
    NonFinite,
    /// Measure weights are invalid (negative, or sum too far from 1).
    InvalidMeasure(String),
    /// Two sampled functions do not share the same measure.
    MeasureMismatch,
    /// Operation requires scalar (1x1) module elements.
    NotScalar { rows: usize, cols: usize },
    /// Malformed instance or configuration data.
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ShapeMismatch { expected, found } => write!(
                f,
                "shape mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, found {rows}x{cols}")
            }
            Error::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (deviation {deviation:.3e})")
            }
            Error::NotPsd { min_eigenvalue } => write!(
                f,
                "matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})"
            ),
            Error::NotPsdAtNode {
                node,
                min_eigenvalue,
            } => write!(
                f,
                "sampled value at node {node} is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})"
            ),
            Error::Singular { pivot } => {
                write!(f, "matrix is singular (pivot {pivot:.3e} below threshold)")
            }
            Error::NoConvergence { iterations } => {
                write!(f, "iteration did not converge within {iterations} steps")
            }
            Error::NonFinite => write!(f, "matrix entries must be finite"),
            Error::InvalidMeasure(msg) => write!(f, "invalid measure: {msg}"),
            Error::MeasureMismatch => write!(f, "sampled functions use different measures"),
            Error::NotScalar { rows, cols } => {
                write!(f, "operation requires scalar samples, found {rows}x{cols}")
            }
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
