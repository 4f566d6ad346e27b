//! Hermitian eigendecomposition by cyclic Jacobi rotations, and the
//! spectral operations built on top of it.

use super::{c64, ComplexMatrix};
use crate::error::{Error, Result};
use num_complex::Complex;

const MAX_SWEEPS: usize = 100;
const OFF_DIAG_THRESHOLD: f64 = 1e-14;

/// Eigendecomposition of a Hermitian matrix.
///
/// `basis` columns are orthonormal eigenvectors; eigenvalues are real and
/// sorted ascending, so `basis * diag(eigenvalues) * basis^*` reconstructs
/// the input.
#[derive(Debug, Clone)]
pub struct HermitianEigenResult {
    pub eigenvalues: Vec<f64>,
    pub basis: ComplexMatrix,
}

impl HermitianEigenResult {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Largest |eigenvalue|; the operator norm of the decomposed matrix.
    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, &l| m.max(l.abs()))
    }

    /// Applies a real function to the spectrum: basis * diag(f(lambda)) * basis^*.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.basis.rows();
        let mut scaled = self.basis.clone();
        for j in 0..n {
            let fl = f(self.eigenvalues[j]);
            for i in 0..n {
                scaled[(i, j)] *= fl;
            }
        }
        scaled.matmul(&self.basis.adjoint())
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|l| l)
    }
}

/// Cyclic Jacobi on a (numerically) Hermitian matrix.
///
/// The input is symmetrized exactly before iterating, so rounding-level
/// asymmetry never feeds the rotations. Sweeps stop once the off-diagonal
/// Frobenius norm falls below `1e-14 * ||H||_F`; the 100-sweep cap is far
/// beyond what quadratic convergence needs at the target sizes (n <= 8).
pub fn hermitian_eigen(h: &ComplexMatrix, tol: f64) -> Result<HermitianEigenResult> {
    let deviation = h.hermitian_deviation();
    if deviation > tol * (1.0 + h.frobenius_norm()) {
        return Err(Error::NotHermitian { deviation });
    }
    jacobi(&h.hermitian_part()?)
}

fn jacobi(h: &ComplexMatrix) -> Result<HermitianEigenResult> {
    let n = h.rows();
    let scale = h.frobenius_norm();
    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(n);

    if n == 1 {
        return Ok(sorted_result(vec![a[(0, 0)].re], v));
    }

    let stop = OFF_DIAG_THRESHOLD * scale;
    for sweep in 0..=MAX_SWEEPS {
        if off_diagonal_norm(&a) <= stop {
            let eigenvalues = (0..n).map(|i| a[(i, i)].re).collect();
            return Ok(sorted_result(eigenvalues, v));
        }
        if sweep == MAX_SWEEPS {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q, stop);
            }
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_SWEEPS,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                acc += a[(p, q)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One complex Jacobi rotation zeroing a[(p, q)].
///
/// Writing a_pq = r e^{i phi}, a phase rotation reduces the 2x2 pivot block
/// to the real symmetric case, which the classic tangent formula handles
/// with |theta| <= pi/4 (the regime where cyclic sweeps provably converge).
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, stop: f64) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r <= stop * 1e-2 {
        a[(p, q)] = Complex::ZERO;
        a[(q, p)] = Complex::ZERO;
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (app - aqq) / (2.0 * r);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Unitary J: J_pp = c, J_pq = -s*phase, J_qp = s*conj(phase), J_qq = c.
    let sp = phase * s;
    let spc = phase.conj() * s;

    let n = a.rows();
    // Row update: A <- J^H A.
    for j in 0..n {
        let arj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = arj * c + aqj * sp;
        a[(q, j)] = -arj * spc + aqj * c;
    }
    // Column update: A <- A J.
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * c + aiq * spc;
        a[(i, q)] = -aip * sp + aiq * c;
    }
    // Accumulate eigenvectors: V <- V J.
    for i in 0..v.rows() {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * c + viq * spc;
        v[(i, q)] = -vip * sp + viq * c;
    }
    // The pivot is zero in exact arithmetic; enforce it.
    a[(p, q)] = Complex::ZERO;
    a[(q, p)] = Complex::ZERO;
    let dpp = a[(p, p)];
    let dqq = a[(q, q)];
    a[(p, p)] = c64(dpp.re, 0.0);
    a[(q, q)] = c64(dqq.re, 0.0);
}

fn sorted_result(mut eigenvalues: Vec<f64>, basis: ComplexMatrix) -> HermitianEigenResult {
    let n = eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eigenvalues[i].partial_cmp(&eigenvalues[j]).unwrap());
    let permuted = ComplexMatrix::from_fn(n, n, |i, j| basis[(i, order[j])]);
    let mut sorted = vec![0.0; n];
    for (j, &src) in order.iter().enumerate() {
        sorted[j] = eigenvalues[src];
    }
    eigenvalues.copy_from_slice(&sorted);
    HermitianEigenResult {
        eigenvalues,
        basis: permuted,
    }
}

/// Jacobi for internal callers that feed exactly Hermitian matrices.
///
/// Cyclic Jacobi with |theta| <= pi/4 rotations converges for every
/// Hermitian input, so a cap overrun can only mean corrupted (non-finite)
/// data, which the `ComplexMatrix` constructors reject.
fn eigen_unchecked(h: &ComplexMatrix) -> HermitianEigenResult {
    jacobi(h).expect("cyclic Jacobi converges on Hermitian input")
}

/// Operator (spectral) norm: sqrt of the largest eigenvalue of M^* M.
pub fn operator_norm(m: &ComplexMatrix) -> f64 {
    if m.is_zero() {
        return 0.0;
    }
    if m.rows() == 1 && m.cols() == 1 {
        return m[(0, 0)].norm();
    }
    let gram = m.adjoint().matmul(m).hermitian_part().expect("square");
    let eig = eigen_unchecked(&gram);
    eig.max_eigenvalue().max(0.0).sqrt()
}

/// Spectral radius max |lambda|.
///
/// Hermitian input goes through the eigensolver. General input uses
/// Gelfand's formula r = lim ||M^k||^(1/k) with k doubling by repeated
/// squaring of a Frobenius-normalized iterate; sixty squarings put k ~ 1e18,
/// where even defective (Jordan-block) growth factors are below 1e-15.
pub fn spectral_radius(m: &ComplexMatrix) -> Result<f64> {
    m.require_square()?;
    if m.is_hermitian(1e-12) {
        let eig = jacobi(&m.hermitian_part()?)?;
        return Ok(eig.max_abs_eigenvalue());
    }

    let norm = m.frobenius_norm();
    if norm == 0.0 {
        return Ok(0.0);
    }
    let mut b = m.scale_re(1.0 / norm);
    let mut log_radius = norm.ln();
    let mut weight = 1.0_f64;
    for _ in 0..60 {
        let sq = b.matmul(&b);
        let f = sq.frobenius_norm();
        if f == 0.0 {
            // Nilpotent: some power vanished exactly.
            return Ok(0.0);
        }
        weight *= 0.5;
        log_radius += weight * f.ln();
        b = sq.scale_re(1.0 / f);
    }
    Ok(log_radius.exp())
}

/// PSD square root via the spectral decomposition.
///
/// Eigenvalues in `[-tol * (1 + ||H||), 0)` are clamped to zero: quadrature
/// and rounding routinely leave tiny negative eigenvalues on mathematically
/// PSD inputs. Anything below the band is a genuine violation.
pub fn psd_sqrt(h: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(h, tol.max(1e-12))?;
    let band = tol * (1.0 + eig.max_abs_eigenvalue());
    let min = eig.min_eigenvalue();
    if min < -band {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    let root = eig.map_spectrum(|l| l.max(0.0).sqrt());
    root.hermitian_part()
}

/// PSD check: returns `(flag, margin)` where margin is the minimum
/// eigenvalue and the flag allows the tolerance band `-tol * (1 + ||H||)`.
pub fn is_psd(h: &ComplexMatrix, tol: f64) -> Result<(bool, f64)> {
    let eig = hermitian_eigen(h, tol.max(1e-12))?;
    let margin = eig.min_eigenvalue();
    let band = tol * (1.0 + eig.max_abs_eigenvalue());
    Ok((margin >= -band, margin))
}
