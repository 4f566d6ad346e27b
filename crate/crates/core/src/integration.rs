//! Discrete probability measures, sampled module-valued functions, and
//! Bochner integrals as weighted sums.
//!
//! Measures are discrete only: every identity of the theory is algebraic in
//! the weights, so discreteness makes each one exactly checkable. Continuous
//! integrands on [0, 1] enter through composite Gauss-Legendre quadrature,
//! which is itself a discrete probability measure.

use crate::cstar::{AlgebraElement, ModuleElement};
use crate::error::{Error, Result};
use crate::linalg::is_psd;

/// How far a weight sum may deviate from 1 before the measure is rejected.
const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

/// Finitely supported probability measure: nodes t_i with weights w_i.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteProbabilityMeasure {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl DiscreteProbabilityMeasure {
    /// Validates and renormalizes. Weight sums within 1e-12 of 1 are scaled
    /// to exactly 1; larger deviations are rejected.
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() || nodes.len() != weights.len() {
            return Err(Error::InvalidMeasure(format!(
                "need matching nonempty nodes/weights, got {} nodes, {} weights",
                nodes.len(),
                weights.len()
            )));
        }
        if !nodes.iter().all(|t| t.is_finite()) {
            return Err(Error::InvalidMeasure("nodes must be finite".into()));
        }
        if let Some(w) = weights.iter().find(|&&w| !w.is_finite() || w < 0.0) {
            return Err(Error::InvalidMeasure(format!("negative weight {w}")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::InvalidMeasure(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        let weights = weights.into_iter().map(|w| w / total).collect();
        Ok(Self { nodes, weights })
    }

    /// Uniform measure on m equispaced nodes in (0, 1).
    pub fn uniform(m: usize) -> Result<Self> {
        let nodes = (0..m).map(|i| (i as f64 + 0.5) / m as f64).collect();
        let weights = vec![1.0 / m as f64; m];
        Self::new(nodes, weights)
    }

    /// Two-node measure with weights (w, 1 - w).
    pub fn two_point(w: f64) -> Result<Self> {
        Self::new(vec![0.25, 0.75], vec![w, 1.0 - w])
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// A function in L2(Omega, X), sampled against a discrete measure.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    measure: DiscreteProbabilityMeasure,
    values: Vec<ModuleElement>,
}

impl SampledFunction {
    pub fn new(measure: DiscreteProbabilityMeasure, values: Vec<ModuleElement>) -> Result<Self> {
        if values.len() != measure.len() {
            return Err(Error::InvalidMeasure(format!(
                "{} values for {} nodes",
                values.len(),
                measure.len()
            )));
        }
        let shape = values[0].shape();
        if values.iter().any(|v| v.shape() != shape) {
            return Err(Error::ShapeMismatch {
                expected: shape,
                found: values
                    .iter()
                    .map(|v| v.shape())
                    .find(|&s| s != shape)
                    .unwrap(),
            });
        }
        Ok(Self { measure, values })
    }

    /// The constant function e_a.
    pub fn constant(a: ModuleElement, measure: DiscreteProbabilityMeasure) -> Self {
        let values = vec![a; measure.len()];
        Self { measure, values }
    }

    #[inline]
    pub fn measure(&self) -> &DiscreteProbabilityMeasure {
        &self.measure
    }

    #[inline]
    pub fn values(&self) -> &[ModuleElement] {
        &self.values
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.values[0].shape()
    }

    pub fn is_algebra_valued(&self) -> bool {
        self.values[0].is_algebra_valued()
    }

    pub fn same_measure(&self, other: &Self) -> bool {
        self.measure == other.measure
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if !self.same_measure(other) {
            return Err(Error::MeasureMismatch);
        }
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                expected: self.shape(),
                found: other.shape(),
            });
        }
        Ok(())
    }

    /// Bochner integral: the weighted sum, accumulated in node order.
    pub fn integral(&self) -> ModuleElement {
        let (n, k) = self.shape();
        let mut acc = ModuleElement::zero(n, k);
        for (w, v) in self.measure.weights().iter().zip(&self.values) {
            acc = &acc + &v.scale_re(*w);
        }
        acc
    }

    /// L2 norm: (sum_i w_i ||f_i||^2)^(1/2).
    pub fn l2_norm(&self) -> f64 {
        self.measure
            .weights()
            .iter()
            .zip(&self.values)
            .map(|(w, v)| w * v.norm() * v.norm())
            .sum::<f64>()
            .sqrt()
    }

    /// Pointwise map, preserving the measure.
    pub fn map(&self, f: impl Fn(&ModuleElement) -> ModuleElement) -> Self {
        Self {
            measure: self.measure.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    /// f - e_a, the translate by a constant.
    pub fn sub_constant(&self, a: &ModuleElement) -> Result<Self> {
        if a.shape() != self.shape() {
            return Err(Error::ShapeMismatch {
                expected: self.shape(),
                found: a.shape(),
            });
        }
        Ok(self.map(|v| v - a))
    }

    /// Pointwise right action (f a)(t) = f(t) a.
    pub fn right_action(&self, a: &AlgebraElement) -> Result<Self> {
        let values = self
            .values
            .iter()
            .map(|v| v.right_action(a))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            measure: self.measure.clone(),
            values,
        })
    }

    /// Pointwise adjoint f*(t) = (f(t))*; requires algebra-valued samples.
    pub fn adjoint(&self) -> Result<Self> {
        let (n, k) = self.shape();
        if n != k {
            return Err(Error::NotSquare { rows: n, cols: k });
        }
        Ok(self.map(|v| ModuleElement::new(v.matrix().adjoint())))
    }
}

/// Residual of Bochner-integral / right-action commutation:
/// || int (f a) - (int f) a ||. Zero in exact arithmetic.
pub fn integral_right_action_residual(f: &SampledFunction, a: &AlgebraElement) -> Result<f64> {
    let lhs = f.right_action(a)?.integral();
    let rhs = f.integral().right_action(a)?;
    Ok((&lhs - &rhs).norm())
}

/// Residual of Bochner-integral / adjoint commutation:
/// || int f* - (int f)* ||. Zero in exact arithmetic.
pub fn integral_adjoint_residual(f: &SampledFunction) -> Result<f64> {
    let lhs = f.adjoint()?.integral();
    let rhs = ModuleElement::new(f.integral().matrix().adjoint());
    Ok((&lhs - &rhs).norm())
}

/// Minimum eigenvalue of `int f` for a pointwise-PSD algebra-valued f.
///
/// Each sample must be PSD within `tol`; a violating node is reported.
/// The returned margin is nonnegative up to rounding because the PSD cone
/// is closed under convex combination.
pub fn integral_positivity_margin(f: &SampledFunction, tol: f64) -> Result<f64> {
    let (n, k) = f.shape();
    if n != k {
        return Err(Error::NotSquare { rows: n, cols: k });
    }
    for (idx, v) in f.values().iter().enumerate() {
        let (flag, margin) = is_psd(v.matrix(), tol)?;
        if !flag {
            return Err(Error::NotPsdAtNode {
                node: idx,
                min_eigenvalue: margin,
            });
        }
    }
    let integral = f.integral();
    let (_, margin) = is_psd(integral.matrix(), tol)?;
    Ok(margin)
}

/// Composite Gauss-Legendre quadrature on [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureScheme {
    pub panels: usize,
    pub points_per_panel: usize,
}

impl QuadratureScheme {
    pub fn new(panels: usize, points_per_panel: usize) -> Result<Self> {
        if panels == 0 || points_per_panel == 0 {
            return Err(Error::InvalidInput(
                "quadrature needs positive panel and point counts".into(),
            ));
        }
        Ok(Self {
            panels,
            points_per_panel,
        })
    }

    /// 8-point Gauss-Legendre on 8 panels: orders of magnitude beyond what
    /// entire integrands like t -> e^{tA} with ||A|| <= 2 require.
    pub fn default_scheme() -> Self {
        Self {
            panels: 8,
            points_per_panel: 8,
        }
    }

    /// The induced discrete probability measure on [0, 1].
    pub fn to_measure(self) -> DiscreteProbabilityMeasure {
        let (ref_nodes, ref_weights) = gauss_legendre(self.points_per_panel);
        let h = 1.0 / self.panels as f64;
        let mut nodes = Vec::with_capacity(self.panels * self.points_per_panel);
        let mut weights = Vec::with_capacity(nodes.capacity());
        for p in 0..self.panels {
            let left = p as f64 * h;
            for (x, w) in ref_nodes.iter().zip(&ref_weights) {
                // Map [-1, 1] to [left, left + h]; total weight is the
                // panel width, so the composite weights sum to 1.
                nodes.push(left + 0.5 * h * (x + 1.0));
                weights.push(0.5 * h * w);
            }
        }
        DiscreteProbabilityMeasure::new(nodes, weights)
            .expect("Gauss-Legendre weights are positive and sum to 1")
    }

    /// Samples a continuous module-valued function on [0, 1].
    pub fn discretize(self, f: impl Fn(f64) -> ModuleElement) -> Result<SampledFunction> {
        let measure = self.to_measure();
        let values: Vec<ModuleElement> = measure.nodes().iter().map(|&t| f(t)).collect();
        SampledFunction::new(measure, values)
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(points: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(points > 0);
    let n = points;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    // Roots come in +- pairs; solve the lower half and mirror.
    for i in 0..n.div_ceil(2) {
        let mut x = -((std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos());
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let step = p / d;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        // Center the middle node exactly.
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_with_derivative(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, ComplexMatrix};
    use crate::random;
    use rand::Rng;

    fn scalar_fn(measure: &DiscreteProbabilityMeasure, f: impl Fn(f64) -> f64) -> SampledFunction {
        let values = measure
            .nodes()
            .iter()
            .map(|&t| ModuleElement::new(ComplexMatrix::scalar(c64(f(t), 0.0))))
            .collect();
        SampledFunction::new(measure.clone(), values).unwrap()
    }

    #[test]
    fn measure_rejects_bad_weights() {
        assert!(DiscreteProbabilityMeasure::new(vec![0.0], vec![0.9]).is_err());
        assert!(DiscreteProbabilityMeasure::new(vec![0.0, 1.0], vec![0.5, -0.5]).is_err());
        assert!(DiscreteProbabilityMeasure::new(vec![], vec![]).is_err());
        // Within the band: accepted and renormalized.
        let mu = DiscreteProbabilityMeasure::new(vec![0.0, 1.0], vec![0.5, 0.5 + 5e-13]).unwrap();
        assert!((mu.weights().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn integral_of_constant_is_the_constant() {
        let mu = DiscreteProbabilityMeasure::uniform(5).unwrap();
        let mut rng = random::rng_from_seed(2);
        let a = random::module_element(2, 2, &mut rng);
        let f = SampledFunction::constant(a.clone(), mu);
        let err = (&f.integral() - &a).norm();
        assert!(err < 1e-14 * (1.0 + a.norm()));
    }

    #[test]
    fn integral_of_odd_pair_is_zero() {
        let mu = DiscreteProbabilityMeasure::two_point(0.5).unwrap();
        let mut rng = random::rng_from_seed(3);
        let v = random::module_element(2, 1, &mut rng);
        let f = SampledFunction::new(mu, vec![-&v, v.clone()]).unwrap();
        assert!(f.integral().norm() < 1e-15);
    }

    #[test]
    fn integral_is_linear() {
        let mut rng = random::rng_from_seed(5);
        for _ in 0..20 {
            let m = rng.random_range(1..=8);
            let mu = random::measure(m, &mut rng);
            let f = random_sampled(&mu, 2, 2, &mut rng);
            let g = random_sampled(&mu, 2, 2, &mut rng);
            let (alpha, beta) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let combo = SampledFunction::new(
                mu.clone(),
                f.values()
                    .iter()
                    .zip(g.values())
                    .map(|(a, b)| &a.scale_re(alpha) + &b.scale_re(beta))
                    .collect(),
            )
            .unwrap();
            let lhs = combo.integral();
            let rhs = &f.integral().scale_re(alpha) + &g.integral().scale_re(beta);
            assert!((&lhs - &rhs).norm() < 1e-13 * (1.0 + rhs.norm()));
        }
    }

    fn random_sampled(
        mu: &DiscreteProbabilityMeasure,
        n: usize,
        k: usize,
        rng: &mut impl Rng,
    ) -> SampledFunction {
        let values = (0..mu.len())
            .map(|_| random::module_element(n, k, rng))
            .collect();
        SampledFunction::new(mu.clone(), values).unwrap()
    }

    #[test]
    fn right_action_residual_trivial_and_random() {
        let mut rng = random::rng_from_seed(7);
        let mu = random::measure(6, &mut rng);
        let f = random_sampled(&mu, 3, 2, &mut rng);
        assert_eq!(
            integral_right_action_residual(&f, &AlgebraElement::identity(2)).unwrap(),
            0.0
        );
        assert_eq!(
            integral_right_action_residual(&f, &AlgebraElement::zero(2)).unwrap(),
            0.0
        );
        for _ in 0..20 {
            let a = random::algebra_element(2, &mut rng);
            let r = integral_right_action_residual(&f, &a).unwrap();
            let scale = f.l2_norm() * a.norm();
            assert!(r < 1e-13 * (1.0 + scale), "residual {r:.3e}");
        }
    }

    #[test]
    fn adjoint_residual_hermitian_and_random() {
        let mut rng = random::rng_from_seed(11);
        let mu = random::measure(5, &mut rng);
        // Hermitian-valued: f* = f pointwise, residual exactly 0.
        let values: Vec<ModuleElement> = (0..mu.len())
            .map(|_| ModuleElement::new(random::hermitian_element(3, &mut rng).into_matrix()))
            .collect();
        let f = SampledFunction::new(mu.clone(), values).unwrap();
        assert_eq!(integral_adjoint_residual(&f).unwrap(), 0.0);

        for _ in 0..20 {
            let g = random_sampled(&mu, 3, 3, &mut rng);
            let r = integral_adjoint_residual(&g).unwrap();
            assert!(r < 1e-13 * (1.0 + g.l2_norm()), "residual {r:.3e}");
        }
    }

    #[test]
    fn adjoint_requires_square_values() {
        let mut rng = random::rng_from_seed(13);
        let mu = random::measure(3, &mut rng);
        let f = random_sampled(&mu, 3, 2, &mut rng);
        assert!(matches!(
            integral_adjoint_residual(&f),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn positivity_margin_for_constant_identity() {
        let mu = DiscreteProbabilityMeasure::uniform(4).unwrap();
        let f = SampledFunction::constant(ModuleElement::new(ComplexMatrix::identity(2)), mu);
        let margin = integral_positivity_margin(&f, 1e-10).unwrap();
        assert!((margin - 1.0).abs() < 1e-12);
    }

    #[test]
    fn positivity_margin_for_random_grams() {
        let mut rng = random::rng_from_seed(17);
        for _ in 0..20 {
            let mu = random::measure(rng.random_range(1..=8), &mut rng);
            let values: Vec<ModuleElement> = (0..mu.len())
                .map(|_| ModuleElement::new(random::psd_element(2, &mut rng).into_matrix()))
                .collect();
            let f = SampledFunction::new(mu, values).unwrap();
            let scale = 1.0 + f.integral().norm();
            let margin = integral_positivity_margin(&f, 1e-10).unwrap();
            assert!(margin >= -1e-10 * scale, "margin {margin:.3e}");
        }
    }

    #[test]
    fn positivity_flags_offending_node() {
        let mu = DiscreteProbabilityMeasure::uniform(2).unwrap();
        let good = ModuleElement::new(ComplexMatrix::identity(2));
        let bad = ModuleElement::new(ComplexMatrix::from_diagonal(&[1.0, -1.0]));
        let f = SampledFunction::new(mu, vec![good, bad]).unwrap();
        assert!(matches!(
            integral_positivity_margin(&f, 1e-10),
            Err(Error::NotPsdAtNode { node: 1, .. })
        ));
    }

    #[test]
    fn l2_norm_examples() {
        let mu = DiscreteProbabilityMeasure::uniform(3).unwrap();
        let zero = SampledFunction::constant(ModuleElement::zero(2, 2), mu.clone());
        assert_eq!(zero.l2_norm(), 0.0);

        let mut rng = random::rng_from_seed(19);
        let a = random::module_element(2, 2, &mut rng);
        let ea = SampledFunction::constant(a.clone(), mu);
        assert!((ea.l2_norm() - a.norm()).abs() < 1e-13 * (1.0 + a.norm()));

        // The two-valued step function of the sharpness witness has L2 norm 1.
        let mu = DiscreteProbabilityMeasure::two_point(0.5).unwrap();
        let step = scalar_fn(&mu, |t| if t <= 0.5 { -1.0 } else { 1.0 });
        assert!((step.l2_norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn l2_holder_bounds_from_the_translation_lemma() {
        let mut rng = random::rng_from_seed(23);
        for _ in 0..50 {
            let mu = random::measure(rng.random_range(1..=8), &mut rng);
            let f = random_sampled(&mu, 2, 2, &mut rng);
            let g = random_sampled(&mu, 2, 2, &mut rng);
            // int ||f|| dmu <= ||f||_2
            let mean_norm: f64 = mu
                .weights()
                .iter()
                .zip(f.values())
                .map(|(w, v)| w * v.norm())
                .sum();
            assert!(mean_norm <= f.l2_norm() + 1e-12 * (1.0 + f.l2_norm()));
            // int ||<f,g>|| dmu <= ||f||_2 ||g||_2
            let mean_inner: f64 = mu
                .weights()
                .iter()
                .zip(f.values().iter().zip(g.values()))
                .map(|(w, (a, b))| w * a.inner(b).unwrap().norm())
                .sum();
            let bound = f.l2_norm() * g.l2_norm();
            assert!(mean_inner <= bound + 1e-12 * (1.0 + bound));
        }
    }

    #[test]
    fn integral_stays_in_convex_hull_scale() {
        let mut rng = random::rng_from_seed(29);
        for _ in 0..50 {
            let mu = random::measure(rng.random_range(1..=10), &mut rng);
            let f = random_sampled(&mu, 3, 2, &mut rng);
            let max_norm = f.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
            assert!(f.integral().norm() <= max_norm + 1e-12);
        }
    }

    #[test]
    fn gauss_legendre_weights_sum_to_panel_measure() {
        for points in 1..=12 {
            for panels in [1, 3, 8] {
                let mu = QuadratureScheme::new(panels, points).unwrap().to_measure();
                let total: f64 = mu.weights().iter().sum();
                assert!(
                    (total - 1.0).abs() < 1e-14,
                    "points {points} panels {panels}: sum {total}"
                );
                assert!(mu.weights().iter().all(|&w| w > 0.0));
            }
        }
    }

    #[test]
    fn gauss_legendre_is_exact_for_monomials() {
        // p points integrate monomials up to degree 2p - 1 on [0, 1].
        for points in 1..=8 {
            let mu = QuadratureScheme::new(1, points).unwrap().to_measure();
            for degree in 0..=(2 * points - 1) {
                let got: f64 = mu
                    .nodes()
                    .iter()
                    .zip(mu.weights())
                    .map(|(&t, &w)| w * t.powi(degree as i32))
                    .sum();
                let expected = 1.0 / (degree as f64 + 1.0);
                assert!(
                    (got - expected).abs() < 1e-13,
                    "points {points} degree {degree}: got {got}, want {expected}"
                );
            }
        }
    }

    #[test]
    fn discretize_constant_function() {
        let scheme = QuadratureScheme::new(2, 4).unwrap();
        let a = ModuleElement::new(ComplexMatrix::identity(2));
        let f = scheme.discretize(|_| a.clone()).unwrap();
        assert!(f.values().iter().all(|v| v == &a));
        assert!((&f.integral() - &a).norm() < 1e-14);
    }

    #[test]
    fn discretize_linear_function_integrates_exactly() {
        let scheme = QuadratureScheme::new(1, 8).unwrap();
        let f = scheme
            .discretize(|t| ModuleElement::new(ComplexMatrix::scalar(c64(t, 0.0))))
            .unwrap();
        let got = f.integral().matrix()[(0, 0)].re;
        assert!((got - 0.5).abs() < 1e-14);
    }

    #[test]
    fn discretize_exponential_hits_closed_form() {
        // int_0^1 2^t dt = 1 / ln 2.
        let scheme = QuadratureScheme::default_scheme();
        let f = scheme
            .discretize(|t| ModuleElement::new(ComplexMatrix::scalar(c64(2.0f64.powf(t), 0.0))))
            .unwrap();
        let got = f.integral().matrix()[(0, 0)].re;
        assert!((got - std::f64::consts::LOG2_E).abs() < 1e-12, "got {got}");
    }

    #[test]
    fn measure_mismatch_is_detected() {
        let mut rng = random::rng_from_seed(31);
        let mu1 = DiscreteProbabilityMeasure::uniform(3).unwrap();
        let mu2 = DiscreteProbabilityMeasure::uniform(4).unwrap();
        let f = random_sampled(&mu1, 2, 2, &mut rng);
        let g = random_sampled(&mu2, 2, 2, &mut rng);
        assert!(matches!(
            f.check_compatible(&g),
            Err(Error::MeasureMismatch)
        ));
    }
}
