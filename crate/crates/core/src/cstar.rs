//! The Hilbert C*-module X of n x k complex matrices over the algebra of
//! k x k complex matrices, with inner product `<x, y> = x* y`.
//!
//! Every finitely generated Hilbert module over a matrix algebra embeds this
//! way, and n = k recovers the algebra as a module over itself. Positive
//! linear functionals are trace pairings against a PSD density, which is
//! their general form on a matrix algebra.

use crate::error::{Error, Result};
use crate::linalg::{is_psd, operator_norm, psd_sqrt, spectral_radius, Complex64, ComplexMatrix};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Neg, Sub};

/// Tolerance band used for PSD clamping of Gram-type matrices.
pub const PSD_BAND: f64 = 1e-9;

/// Element of the C*-algebra: a k x k complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement(ComplexMatrix);

impl AlgebraElement {
    pub fn new(value: ComplexMatrix) -> Result<Self> {
        value.require_square()?;
        Ok(Self(value))
    }

    pub fn zero(k: usize) -> Self {
        Self(ComplexMatrix::zeros(k, k))
    }

    pub fn identity(k: usize) -> Self {
        Self(ComplexMatrix::identity(k))
    }

    pub fn scalar(z: Complex64) -> Self {
        Self(ComplexMatrix::scalar(z))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn hermitian_part(&self) -> Self {
        Self(
            self.0
                .hermitian_part()
                .expect("algebra elements are square"),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.matmul(&other.0))
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        Self(self.0.scale_re(factor))
    }

    pub fn norm(&self) -> f64 {
        operator_norm(&self.0)
    }

    pub fn spectral_radius(&self) -> Result<f64> {
        spectral_radius(&self.0)
    }

    /// Minimum eigenvalue of the Hermitian part; the PSD margin.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        let (_, margin) = is_psd(&self.0, PSD_BAND)?;
        Ok(margin)
    }

    /// PSD square root, clamping eigenvalues within the tolerance band.
    pub fn psd_sqrt(&self) -> Result<Self> {
        Ok(Self(psd_sqrt(&self.0, PSD_BAND)?))
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(&self.0 + &rhs.0)
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(&self.0 - &rhs.0)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement(-&self.0)
    }
}

/// Element of the module X: an n x k complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleElement(ComplexMatrix);

impl ModuleElement {
    pub fn new(value: ComplexMatrix) -> Self {
        Self(value)
    }

    pub fn zero(n: usize, k: usize) -> Self {
        Self(ComplexMatrix::zeros(n, k))
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        Self(self.0.scale_re(factor))
    }

    /// Whether the element sits in the algebra itself (n = k).
    pub fn is_algebra_valued(&self) -> bool {
        self.0.is_square()
    }

    /// Reinterprets a square module element as an algebra element.
    pub fn as_algebra(&self) -> Result<AlgebraElement> {
        AlgebraElement::new(self.0.clone())
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                expected: self.shape(),
                found: other.shape(),
            });
        }
        Ok(())
    }

    /// Algebra-valued inner product `<x, y> = x* y`.
    pub fn inner(&self, other: &Self) -> Result<AlgebraElement> {
        self.check_same_shape(other)?;
        AlgebraElement::new(self.0.adjoint().matmul(&other.0))
    }

    /// Right module action x . a.
    pub fn right_action(&self, a: &AlgebraElement) -> Result<Self> {
        if self.0.cols() != a.dim() {
            return Err(Error::ShapeMismatch {
                expected: (self.0.cols(), self.0.cols()),
                found: (a.dim(), a.dim()),
            });
        }
        Ok(Self(self.0.matmul(a.matrix())))
    }

    /// |x|: the PSD square root of `<x, x>`.
    pub fn absolute_value(&self) -> Result<AlgebraElement> {
        self.inner(self)?.psd_sqrt()
    }

    /// `<x, x>` as a Hermitian PSD algebra element (exactly symmetrized).
    pub fn gram(&self) -> AlgebraElement {
        AlgebraElement(
            self.0
                .adjoint()
                .matmul(&self.0)
                .hermitian_part()
                .expect("gram matrices are square"),
        )
    }

    /// Module norm ||x|| = ||<x, x>||^(1/2); the largest singular value.
    pub fn norm(&self) -> f64 {
        operator_norm(&self.0)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.frobenius_norm()
    }
}

impl Add for &ModuleElement {
    type Output = ModuleElement;
    fn add(self, rhs: &ModuleElement) -> ModuleElement {
        ModuleElement(&self.0 + &rhs.0)
    }
}

impl Sub for &ModuleElement {
    type Output = ModuleElement;
    fn sub(self, rhs: &ModuleElement) -> ModuleElement {
        ModuleElement(&self.0 - &rhs.0)
    }
}

impl Neg for &ModuleElement {
    type Output = ModuleElement;
    fn neg(self) -> ModuleElement {
        ModuleElement(-&self.0)
    }
}

/// Positive linear functional phi(a) = trace(density * a) with PSD density.
#[derive(Debug, Clone)]
pub struct PositiveFunctional {
    density: ComplexMatrix,
}

impl PositiveFunctional {
    pub fn new(density: ComplexMatrix) -> Result<Self> {
        let (flag, margin) = is_psd(&density, PSD_BAND)?;
        if !flag {
            return Err(Error::NotPsd {
                min_eigenvalue: margin,
            });
        }
        Ok(Self { density })
    }

    /// Normalized trace functional (a state).
    pub fn normalized_trace(k: usize) -> Self {
        Self {
            density: ComplexMatrix::identity(k).scale_re(1.0 / k as f64),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.density.rows()
    }

    pub fn density(&self) -> &ComplexMatrix {
        &self.density
    }

    pub fn apply(&self, a: &AlgebraElement) -> Complex64 {
        self.density.matmul(a.matrix()).trace()
    }

    /// Real part of phi(a); exact for Hermitian arguments.
    pub fn apply_re(&self, a: &AlgebraElement) -> f64 {
        self.apply(a).re
    }
}

/// Gram-form Schwarz check: G = ||<x,x>|| <y,y> - <y,x><x,y> with its
/// minimum eigenvalue. The inequality asserts G is PSD.
///
/// The product order is <y,x><x,y> = (x* y)^* (x* y), the only ordering
/// under which the bound holds for rectangular modules.
pub fn schwarz_basic_margin(x: &ModuleElement, y: &ModuleElement) -> Result<(AlgebraElement, f64)> {
    let xx_norm = x.gram().norm();
    let yy = y.gram();
    let xy = x.inner(y)?;
    let yx = y.inner(x)?;
    let g = &yy.scale_re(xx_norm) - &yx.mul(&xy);
    let g = g.hermitian_part();
    let margin = g.min_eigenvalue()?;
    Ok((g, margin))
}

/// Functional Schwarz: phi<x,x> phi<y,y> - |phi<x,y>|^2 >= 0.
pub fn schwarz_functional_margin(
    phi: &PositiveFunctional,
    x: &ModuleElement,
    y: &ModuleElement,
) -> Result<f64> {
    check_functional_dim(phi, x)?;
    let xx = phi.apply_re(&x.gram());
    let yy = phi.apply_re(&y.gram());
    let xy = phi.apply(&x.inner(y)?);
    Ok(xx * yy - xy.norm_sqr())
}

/// Spectral-radius Schwarz: phi<x,x> r(<y,y>) - phi(<x,y><y,x>) >= 0.
pub fn schwarz_radius_margin(
    phi: &PositiveFunctional,
    x: &ModuleElement,
    y: &ModuleElement,
) -> Result<f64> {
    check_functional_dim(phi, x)?;
    let xx = phi.apply_re(&x.gram());
    let radius = y.gram().spectral_radius()?;
    let mixed = phi.apply_re(&x.inner(y)?.mul(&y.inner(x)?).hermitian_part());
    Ok(xx * radius - mixed)
}

/// C*-seminorm Schwarz with the operator norm as the (maximal) seminorm:
/// ||<x,x>|| ||<y,y>|| - ||<x,y>||^2 >= 0.
pub fn schwarz_seminorm_margin(x: &ModuleElement, y: &ModuleElement) -> Result<f64> {
    let xy = x.inner(y)?;
    Ok(x.gram().norm() * y.gram().norm() - xy.norm() * xy.norm())
}

fn check_functional_dim(phi: &PositiveFunctional, x: &ModuleElement) -> Result<()> {
    let k = x.shape().1;
    if phi.dim() != k {
        return Err(Error::ShapeMismatch {
            expected: (k, k),
            found: (phi.dim(), phi.dim()),
        });
    }
    Ok(())
}

/// Ambient dimensions (n, k) of a module context; serialized with reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub n: usize,
    pub k: usize,
}
