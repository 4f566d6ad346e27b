//! Seeded random instance generation.
//!
//! Entries are i.i.d. standard complex Gaussians; dimensions are drawn
//! uniformly so scalar (n = k = 1) and noncommutative cases both appear.
//! All campaign randomness flows through `ChaCha8Rng` so runs are
//! reproducible independent of platform and scheduling.

use crate::cstar::{AlgebraElement, ModuleElement, PositiveFunctional};
use crate::integration::DiscreteProbabilityMeasure;
use crate::linalg::{c64, ComplexMatrix};
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

pub use rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stable seed mixer for per-instance RNGs: results are independent of
/// evaluation order and identical across runs (splitmix64 step).
pub fn instance_seed(campaign_seed: u64, index: u64) -> u64 {
    let mut z = campaign_seed
        .wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn complex_gaussian_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        c64(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

pub fn module_element(n: usize, k: usize, rng: &mut impl Rng) -> ModuleElement {
    ModuleElement::new(complex_gaussian_matrix(n, k, rng))
}

pub fn algebra_element(k: usize, rng: &mut impl Rng) -> AlgebraElement {
    AlgebraElement::new(complex_gaussian_matrix(k, k, rng)).expect("square by construction")
}

pub fn hermitian_element(k: usize, rng: &mut impl Rng) -> AlgebraElement {
    algebra_element(k, rng).hermitian_part()
}

/// PSD algebra element B* B.
pub fn psd_element(k: usize, rng: &mut impl Rng) -> AlgebraElement {
    let b = complex_gaussian_matrix(k, k, rng);
    AlgebraElement::new(
        b.adjoint()
            .matmul(&b)
            .hermitian_part()
            .expect("gram is square"),
    )
    .expect("square by construction")
}

/// Positive functional with a random PSD density.
pub fn positive_functional(k: usize, rng: &mut impl Rng) -> PositiveFunctional {
    PositiveFunctional::new(psd_element(k, rng).into_matrix()).expect("gram densities are PSD")
}

/// Dimensions drawn uniformly from {1, ..., max}.
pub fn dims(max_n: usize, max_k: usize, rng: &mut impl Rng) -> (usize, usize) {
    (rng.random_range(1..=max_n), rng.random_range(1..=max_k))
}

/// Random discrete probability measure with `m` nodes in [0, 1].
///
/// Weights are uniform draws bounded away from zero, then normalized.
pub fn measure(m: usize, rng: &mut impl Rng) -> DiscreteProbabilityMeasure {
    let nodes: Vec<f64> = (0..m).map(|i| (i as f64 + 0.5) / m as f64).collect();
    let mut weights: Vec<f64> = (0..m).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    DiscreteProbabilityMeasure::new(nodes, weights).expect("normalized weights")
}
