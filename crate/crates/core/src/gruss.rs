//! The Gruss functional [f, g], the Korkine identity, translation
//! invariance, the four-term inequality chain, and its sharpness witness.
//!
//! [f, g] measures the discrepancy between the mean of an inner product and
//! the inner product of the means. Under the bounding premise — the
//! integrated squared deviation of f from the midpoint (x + x')/2 stays
//! below (1/4)|x' - x|^2 in the Loewner order — the chain
//!
//!   ||[f, g]||  <=  ||[f, f]||^(1/2) ||[g, g]||^(1/2)
//!               <=  ||M_f||^(1/2) ||M_g||^(1/2)
//!               <=  (1/4) ||x' - x|| ||y' - y||
//!
//! holds, where M_f is the mixed defect (1/4)|x' - x|^2 - int Re<x' - f,
//! f - x> dmu. A scalar two-valued step function attains all four values
//! simultaneously, so neither constant can be improved.

use crate::cstar::{AlgebraElement, Dims, ModuleElement};
use crate::error::{Error, Result};
use crate::integration::{DiscreteProbabilityMeasure, SampledFunction};
use crate::linalg::{c64, ComplexMatrix};
use crate::random;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Default relative tolerance for inequality (slack) checks.
pub const DEFAULT_INEQUALITY_TOL: f64 = 1e-9;
/// Default relative tolerance for identity (residual) checks.
pub const DEFAULT_IDENTITY_TOL: f64 = 1e-11;

/// Loewner bounds for one function: lower = x, upper = x'.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundingPair {
    lower: ModuleElement,
    upper: ModuleElement,
}

impl BoundingPair {
    pub fn new(lower: ModuleElement, upper: ModuleElement) -> Result<Self> {
        if lower.shape() != upper.shape() {
            return Err(Error::ShapeMismatch {
                expected: lower.shape(),
                found: upper.shape(),
            });
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> &ModuleElement {
        &self.lower
    }

    pub fn upper(&self) -> &ModuleElement {
        &self.upper
    }

    pub fn shape(&self) -> (usize, usize) {
        self.lower.shape()
    }

    /// (x + x') / 2.
    pub fn midpoint(&self) -> ModuleElement {
        (&self.lower + &self.upper).scale_re(0.5)
    }

    /// (x' - x) / 2.
    pub fn half_range(&self) -> ModuleElement {
        (&self.upper - &self.lower).scale_re(0.5)
    }

    /// (1/4) |x' - x|^2 as an algebra element.
    pub fn quarter_range_sq(&self) -> AlgebraElement {
        (&self.upper - &self.lower).gram().scale_re(0.25)
    }

    /// ||x' - x||; each pair contributes a quarter of this to the last bound.
    pub fn range_norm(&self) -> f64 {
        (&self.upper - &self.lower).norm()
    }
}

/// [f, g] = int <f, g> dmu - <int f dmu, int g dmu>.
pub fn gruss_functional(f: &SampledFunction, g: &SampledFunction) -> Result<AlgebraElement> {
    f.check_compatible(g)?;
    let k = f.shape().1;
    let mut mean_inner = AlgebraElement::zero(k);
    for ((w, fv), gv) in f.measure().weights().iter().zip(f.values()).zip(g.values()) {
        mean_inner = &mean_inner + &fv.inner(gv)?.scale_re(*w);
    }
    let inner_of_means = f.integral().inner(&g.integral())?;
    Ok(&mean_inner - &inner_of_means)
}

/// Korkine double-sum form of the same functional:
/// (1/2) sum_i sum_j w_i w_j <f_i - f_j, g_i - g_j>.
///
/// Shares no intermediate with `gruss_functional`, so the two are an
/// algebraic cross-check of each other.
pub fn korkine(f: &SampledFunction, g: &SampledFunction) -> Result<AlgebraElement> {
    f.check_compatible(g)?;
    let k = f.shape().1;
    let weights = f.measure().weights();
    let m = weights.len();
    let mut acc = AlgebraElement::zero(k);
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let df = f.values()[i].matrix() - f.values()[j].matrix();
            let dg = g.values()[i].matrix() - g.values()[j].matrix();
            let term = df.adjoint().matmul(&dg).scale_re(weights[i] * weights[j]);
            acc = &acc + &AlgebraElement::new(term)?;
        }
    }
    Ok(acc.scale_re(0.5))
}

/// || [f - e_a, g - e_b] - [f, g] ||; zero in exact arithmetic.
pub fn translation_residual(
    f: &SampledFunction,
    g: &SampledFunction,
    a: &ModuleElement,
    b: &ModuleElement,
) -> Result<f64> {
    let translated = gruss_functional(&f.sub_constant(a)?, &g.sub_constant(b)?)?;
    let original = gruss_functional(f, g)?;
    Ok((&translated - &original).norm())
}

/// Both forms of the bounding premise for one (f, pair) side.
#[derive(Debug, Clone)]
pub struct CenterDefect {
    /// (1/4)|x' - x|^2 - int |f - (x + x')/2|^2 dmu (midpoint form).
    pub defect: AlgebraElement,
    /// int Re<x' - f, f - x> dmu (real-part form; equal in exact arithmetic).
    pub re_form: AlgebraElement,
    /// || defect - re_form ||: the premise-equivalence identity residual.
    pub identity_residual: f64,
    /// Minimum eigenvalue of the midpoint-form defect; the premise margin.
    pub margin: f64,
}

/// Computes the premise defect both ways.
///
/// The premise holds iff `defect` is PSD; the two forms agree identically,
/// so `identity_residual` doubles as a self-check of the arithmetic.
pub fn center_defect(f: &SampledFunction, pair: &BoundingPair) -> Result<CenterDefect> {
    if pair.shape() != f.shape() {
        return Err(Error::ShapeMismatch {
            expected: f.shape(),
            found: pair.shape(),
        });
    }
    let mid = pair.midpoint();
    let k = f.shape().1;

    let mut spread = AlgebraElement::zero(k);
    let mut re_form = AlgebraElement::zero(k);
    for (w, v) in f.measure().weights().iter().zip(f.values()) {
        spread = &spread + &(v - &mid).gram().scale_re(*w);
        let cross = (pair.upper() - v).inner(&(v - pair.lower()))?;
        re_form = &re_form + &cross.hermitian_part().scale_re(*w);
    }
    let defect = &pair.quarter_range_sq() - &spread;
    let identity_residual = (&defect - &re_form).norm();
    let margin = defect.min_eigenvalue()?;
    Ok(CenterDefect {
        defect,
        re_form,
        identity_residual,
        margin,
    })
}

/// The four chain values plus slacks and premise diagnostics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InequalityReport {
    /// ||[f, g]||.
    #[serde(rename = "L0")]
    pub l0: f64,
    /// ||[f, f]||^(1/2) ||[g, g]||^(1/2).
    #[serde(rename = "L1")]
    pub l1: f64,
    /// Mixed defect bound: per-factor norm of the middle expression.
    #[serde(rename = "L2")]
    pub l2: f64,
    /// (1/4) ||x' - x|| ||y' - y||.
    #[serde(rename = "L3")]
    pub l3: f64,
    pub slack01: f64,
    pub slack12: f64,
    pub slack23: f64,
    pub premise_margin_f: f64,
    pub premise_margin_g: f64,
    /// Residual of the premise-equivalence identity, per side.
    pub premise_identity_residual_f: f64,
    pub premise_identity_residual_g: f64,
    pub pass: bool,
    pub dims: Dims,
    pub node_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Evaluates the full inequality chain.
///
/// A violated premise does not abort: the chain is still computed and
/// reported with `pass = false`, so campaigns can log near-miss instances.
pub fn inequality_chain(
    f: &SampledFunction,
    g: &SampledFunction,
    pair_f: &BoundingPair,
    pair_g: &BoundingPair,
    tol: f64,
) -> Result<InequalityReport> {
    f.check_compatible(g)?;

    let l0 = gruss_functional(f, g)?.norm();
    let ff = gruss_functional(f, f)?.norm();
    let gg = gruss_functional(g, g)?.norm();
    let l1 = ff.sqrt() * gg.sqrt();

    let cd_f = center_defect(f, pair_f)?;
    let cd_g = center_defect(g, pair_g)?;
    // Middle expression per factor: (1/4)|x' - x|^2 - int Re<x' - f, f - x>.
    let mixed_f = (&pair_f.quarter_range_sq() - &cd_f.re_form).norm();
    let mixed_g = (&pair_g.quarter_range_sq() - &cd_g.re_form).norm();
    let l2 = mixed_f.sqrt() * mixed_g.sqrt();

    let l3 = 0.25 * pair_f.range_norm() * pair_g.range_norm();

    let slack01 = l1 - l0;
    let slack12 = l2 - l1;
    let slack23 = l3 - l2;

    let premise_scale_f = 1.0 + pair_f.quarter_range_sq().norm();
    let premise_scale_g = 1.0 + pair_g.quarter_range_sq().norm();
    let slack_ok = slack01 >= -tol * (1.0 + l0.max(l1))
        && slack12 >= -tol * (1.0 + l1.max(l2))
        && slack23 >= -tol * (1.0 + l2.max(l3));
    let premise_ok = cd_f.margin >= -tol * premise_scale_f && cd_g.margin >= -tol * premise_scale_g;

    let (n, k) = f.shape();
    Ok(InequalityReport {
        l0,
        l1,
        l2,
        l3,
        slack01,
        slack12,
        slack23,
        premise_margin_f: cd_f.margin,
        premise_margin_g: cd_g.margin,
        premise_identity_residual_f: cd_f.identity_residual,
        premise_identity_residual_g: cd_g.identity_residual,
        pass: slack_ok && premise_ok,
        dims: Dims { n, k },
        node_count: f.len(),
        seed: None,
    })
}

/// A complete chain instance: two functions with their bounding pairs.
#[derive(Debug, Clone)]
pub struct ChainInstance {
    pub f: SampledFunction,
    pub g: SampledFunction,
    pub pair_f: BoundingPair,
    pub pair_g: BoundingPair,
}

impl ChainInstance {
    pub fn report(&self, tol: f64) -> Result<InequalityReport> {
        inequality_chain(&self.f, &self.g, &self.pair_f, &self.pair_g, tol)
    }
}

/// The witness attaining equality through the whole chain: the scalar
/// two-valued step function, -1 and +1 with weight 1/2 each, bounded by
/// x = y = -1 and x' = y' = 1. All four chain values equal 1, so the
/// coefficient of the middle bound and the final 1/4 are both sharp.
pub fn sharpness_witness() -> (ChainInstance, InequalityReport) {
    let measure = DiscreteProbabilityMeasure::two_point(0.5).expect("witness measure is valid");
    let instance = step_instance(measure);
    let report = instance
        .report(DEFAULT_INEQUALITY_TOL)
        .expect("witness shapes are consistent");
    (instance, report)
}

/// Scalar step instance (values -1, +1) over an arbitrary two-node measure.
///
/// At weights (1/2, 1/2) this is the sharpness witness; other weights show
/// the chain going strict.
pub fn step_instance(measure: DiscreteProbabilityMeasure) -> ChainInstance {
    assert_eq!(measure.len(), 2, "step instance needs a two-node measure");
    let scalar = |v: f64| ModuleElement::new(ComplexMatrix::scalar(c64(v, 0.0)));
    let values = vec![scalar(-1.0), scalar(1.0)];
    let f = SampledFunction::new(measure, values).expect("two values, two nodes");
    let pair = BoundingPair::new(scalar(-1.0), scalar(1.0)).expect("scalar shapes");
    ChainInstance {
        g: f.clone(),
        f,
        pair_f: pair.clone(),
        pair_g: pair,
    }
}

/// Draws f(t_i) = (x + x')/2 + lambda_i (x' - x)/2 with lambda_i uniform in
/// [-1, 1].
///
/// Pointwise, |f_i - mid|^2 = lambda_i^2 (1/4)|x' - x|^2, which stays below
/// (1/4)|x' - x|^2 in the Loewner order, so the premise survives
/// integration by construction. General algebra-valued coefficients would
/// not: c* M c is not dominated by M in general.
pub fn admissible_random_function(
    pair: &BoundingPair,
    measure: &DiscreteProbabilityMeasure,
    seed: u64,
) -> SampledFunction {
    admissible_random_function_with(pair, measure, &mut random::rng_from_seed(seed))
}

pub fn admissible_random_function_with(
    pair: &BoundingPair,
    measure: &DiscreteProbabilityMeasure,
    rng: &mut impl Rng,
) -> SampledFunction {
    let mid = pair.midpoint();
    let half = pair.half_range();
    let values = (0..measure.len())
        .map(|_| {
            let lambda: f64 = rng.random_range(-1.0..=1.0);
            &mid + &half.scale_re(lambda)
        })
        .collect();
    SampledFunction::new(measure.clone(), values).expect("values aligned with measure")
}

/// Fully random admissible instance for campaign driving: dimensions from
/// {1..max}, random measure, Gaussian bounding pairs, scalar-profile f and g.
pub fn random_chain_instance(
    seed: u64,
    max_n: usize,
    max_k: usize,
    max_nodes: usize,
) -> ChainInstance {
    let mut rng = random::rng_from_seed(seed);
    let (n, k) = random::dims(max_n, max_k, &mut rng);
    let m = rng.random_range(1..=max_nodes.max(1));
    let measure = random::measure(m, &mut rng);
    let pair_f = random_pair(n, k, &mut rng);
    let pair_g = random_pair(n, k, &mut rng);
    let f = admissible_random_function_with(&pair_f, &measure, &mut rng);
    let g = admissible_random_function_with(&pair_g, &measure, &mut rng);
    ChainInstance {
        f,
        g,
        pair_f,
        pair_g,
    }
}

fn random_pair(n: usize, k: usize, rng: &mut impl Rng) -> BoundingPair {
    BoundingPair::new(
        random::module_element(n, k, rng),
        random::module_element(n, k, rng),
    )
    .expect("matching shapes")
}

/// Scalar Landau discrepancies D(f, g), D(f, f), D(g, g) and the
/// Cauchy-Schwarz slack sqrt(D(f,f) D(g,g)) - |D(f,g)|.
#[derive(Debug, Clone, Serialize)]
pub struct LandauReport {
    pub d_fg: f64,
    pub d_ff: f64,
    pub d_gg: f64,
    pub slack: f64,
}

pub fn landau_discrepancy(f: &SampledFunction, g: &SampledFunction) -> Result<LandauReport> {
    f.check_compatible(g)?;
    let (n, k) = f.shape();
    if (n, k) != (1, 1) {
        return Err(Error::NotScalar { rows: n, cols: k });
    }
    let w = f.measure().weights();
    let fv: Vec<f64> = f.values().iter().map(|v| v.matrix()[(0, 0)].re).collect();
    let gv: Vec<f64> = g.values().iter().map(|v| v.matrix()[(0, 0)].re).collect();
    let mean = |a: &[f64]| -> f64 { w.iter().zip(a).map(|(w, x)| w * x).sum() };
    let mixed = |a: &[f64], b: &[f64]| -> f64 {
        w.iter()
            .zip(a.iter().zip(b))
            .map(|(w, (x, y))| w * x * y)
            .sum()
    };
    let d_fg = mixed(&fv, &gv) - mean(&fv) * mean(&gv);
    let d_ff = mixed(&fv, &fv) - mean(&fv) * mean(&fv);
    let d_gg = mixed(&gv, &gv) - mean(&gv) * mean(&gv);
    // The diagonal discrepancies are variances; clamp rounding noise.
    let slack = (d_ff.max(0.0) * d_gg.max(0.0)).sqrt() - d_fg.abs();
    Ok(LandauReport {
        d_fg,
        d_ff,
        d_gg,
        slack,
    })
}

/// The algebra-over-itself specialization: for square-valued f and g,
/// || int f g dmu - (int f)(int g) || is bounded by the product of the
/// diagonal Gruss norms, pairing through f~ = f* so that <f~, g> = f g.
#[derive(Debug, Clone, Serialize)]
pub struct AlgebraGrussReport {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

pub fn algebra_gruss_check(f: &SampledFunction, g: &SampledFunction) -> Result<AlgebraGrussReport> {
    f.check_compatible(g)?;
    let (n, k) = f.shape();
    if n != k {
        return Err(Error::NotSquare { rows: n, cols: k });
    }

    // Product form, computed directly.
    let mut mean_product = AlgebraElement::zero(k);
    for ((w, fv), gv) in f.measure().weights().iter().zip(f.values()).zip(g.values()) {
        let prod = fv.matrix().matmul(gv.matrix()).scale_re(*w);
        mean_product = &mean_product + &AlgebraElement::new(prod)?;
    }
    let product_of_means =
        AlgebraElement::new(f.integral().matrix().matmul(g.integral().matrix()))?;
    let lhs = (&mean_product - &product_of_means).norm();

    let f_tilde = f.adjoint()?;
    let rhs =
        gruss_functional(&f_tilde, &f_tilde)?.norm().sqrt() * gruss_functional(g, g)?.norm().sqrt();
    Ok(AlgebraGrussReport {
        lhs,
        rhs,
        slack: rhs - lhs,
    })
}
