//! Numerical toolkit for Gruss-type inequalities over finite-dimensional
//! Hilbert C*-modules.
//!
//! The module X is realized as n x k complex matrices over the C*-algebra
//! of k x k complex matrices, with inner product `<x, y> = x* y`. Functions
//! into X are sampled against discrete probability measures, Bochner
//! integrals become weighted sums, and every identity and inequality of the
//! theory — the Schwarz suite, the Korkine identity, translation invariance,
//! the four-term inequality chain and its sharpness witness, and the
//! matrix-exponential application — is computable and checkable at double
//! precision.

pub mod applications;
pub mod cstar;
pub mod error;
pub mod gruss;
pub mod instance;
pub mod integration;
pub mod linalg;
pub mod random;

pub use error::{Error, Result};
pub use linalg::{c64, Complex64, ComplexMatrix};
