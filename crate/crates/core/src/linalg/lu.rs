//! Matrix inverse via partial-pivot LU.

use super::{Complex64, ComplexMatrix};
use crate::error::{Error, Result};
use num_complex::Complex;

const PIVOT_THRESHOLD: f64 = 1e-12;

/// Inverse of a square matrix by LU factorization with partial pivoting.
///
/// A pivot below `1e-12 * ||M||_F` is treated as singular.
pub fn inverse(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = m.require_square()?;
    let threshold = PIVOT_THRESHOLD * m.frobenius_norm();

    // Augmented [M | I], reduced in place.
    let mut a = m.clone();
    let mut inv = ComplexMatrix::identity(n);

    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = a[(col, col)].norm();
        for r in col + 1..n {
            let mag = a[(r, col)].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_mag <= threshold {
            return Err(Error::Singular { pivot: pivot_mag });
        }
        if pivot_row != col {
            swap_rows(&mut a, col, pivot_row);
            swap_rows(&mut inv, col, pivot_row);
        }
        let pivot = a[(col, col)];
        for j in 0..n {
            a[(col, j)] /= pivot;
            inv[(col, j)] /= pivot;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a[(r, col)];
            if factor == Complex::ZERO {
                continue;
            }
            for j in 0..n {
                let (ac, ic): (Complex64, Complex64) = (a[(col, j)], inv[(col, j)]);
                a[(r, j)] -= factor * ac;
                inv[(r, j)] -= factor * ic;
            }
        }
    }
    Ok(inv)
}

fn swap_rows(m: &mut ComplexMatrix, r1: usize, r2: usize) {
    for j in 0..m.cols() {
        let t = m[(r1, j)];
        m[(r1, j)] = m[(r2, j)];
        m[(r2, j)] = t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, operator_norm};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    #[test]
    fn inverse_of_identity() {
        let id = ComplexMatrix::identity(3);
        assert!((&inverse(&id).unwrap() - &id).frobenius_norm() == 0.0);
    }

    #[test]
    fn inverse_of_diagonal() {
        let d = ComplexMatrix::from_diagonal(&[2.0, 4.0]);
        let inv = inverse(&d).unwrap();
        assert!((inv[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!((inv[(1, 1)].re - 0.25).abs() < 1e-15);
    }

    #[test]
    fn inverse_residual_small_for_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let id = ComplexMatrix::identity(4);
        for _ in 0..30 {
            // Shift by a multiple of I to keep the draw well conditioned.
            let m = &ComplexMatrix::from_fn(4, 4, |_, _| {
                c64(rng.sample(StandardNormal), rng.sample(StandardNormal))
            }) + &id.scale_re(4.0);
            let inv = inverse(&m).unwrap();
            let residual = operator_norm(&(&m.matmul(&inv) - &id));
            assert!(residual < 1e-10, "residual {residual:.3e}");
        }
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let m = ComplexMatrix::from_vec(
            2,
            2,
            vec![c64(1.0, 0.0), c64(2.0, 0.0), c64(2.0, 0.0), c64(4.0, 0.0)],
        )
        .unwrap();
        assert!(matches!(inverse(&m), Err(Error::Singular { .. })));
    }
}
