//! JSON instance schema: one document describing a chain instance.
//!
//! Complex entries are `[re, im]` pairs in row-major order; `f_values` and
//! `g_values` carry one n x k matrix per measure node.

use crate::cstar::{Dims, ModuleElement};
use crate::error::{Error, Result};
use crate::gruss::{BoundingPair, ChainInstance};
use crate::integration::{DiscreteProbabilityMeasure, SampledFunction};
use crate::linalg::{c64, ComplexMatrix};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub dims: Dims,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub f_values: Vec<Vec<[f64; 2]>>,
    pub g_values: Vec<Vec<[f64; 2]>>,
    pub x: Vec<[f64; 2]>,
    pub x_prime: Vec<[f64; 2]>,
    pub y: Vec<[f64; 2]>,
    pub y_prime: Vec<[f64; 2]>,
}

impl InstanceFile {
    pub fn to_instance(&self) -> Result<ChainInstance> {
        let measure = DiscreteProbabilityMeasure::new(self.nodes.clone(), self.weights.clone())?;
        let (n, k) = (self.dims.n, self.dims.k);
        if n == 0 || k == 0 {
            return Err(Error::InvalidInput("dims must be positive".into()));
        }
        let f = sampled(&measure, n, k, &self.f_values, "f_values")?;
        let g = sampled(&measure, n, k, &self.g_values, "g_values")?;
        let pair_f = BoundingPair::new(
            matrix(n, k, &self.x, "x")?,
            matrix(n, k, &self.x_prime, "x_prime")?,
        )?;
        let pair_g = BoundingPair::new(
            matrix(n, k, &self.y, "y")?,
            matrix(n, k, &self.y_prime, "y_prime")?,
        )?;
        Ok(ChainInstance {
            f,
            g,
            pair_f,
            pair_g,
        })
    }

    pub fn from_instance(instance: &ChainInstance) -> Self {
        let (n, k) = instance.f.shape();
        Self {
            dims: Dims { n, k },
            nodes: instance.f.measure().nodes().to_vec(),
            weights: instance.f.measure().weights().to_vec(),
            f_values: instance.f.values().iter().map(encode).collect(),
            g_values: instance.g.values().iter().map(encode).collect(),
            x: encode(instance.pair_f.lower()),
            x_prime: encode(instance.pair_f.upper()),
            y: encode(instance.pair_g.lower()),
            y_prime: encode(instance.pair_g.upper()),
        }
    }
}

fn encode(v: &ModuleElement) -> Vec<[f64; 2]> {
    v.matrix().entries().iter().map(|z| [z.re, z.im]).collect()
}

fn matrix(n: usize, k: usize, entries: &[[f64; 2]], field: &str) -> Result<ModuleElement> {
    if entries.len() != n * k {
        return Err(Error::InvalidInput(format!(
            "{field}: expected {} entries for {n}x{k}, found {}",
            n * k,
            entries.len()
        )));
    }
    let data = entries.iter().map(|&[re, im]| c64(re, im)).collect();
    Ok(ModuleElement::new(ComplexMatrix::from_vec(n, k, data)?))
}

fn sampled(
    measure: &DiscreteProbabilityMeasure,
    n: usize,
    k: usize,
    raw: &[Vec<[f64; 2]>],
    field: &str,
) -> Result<SampledFunction> {
    if raw.len() != measure.len() {
        return Err(Error::InvalidInput(format!(
            "{field}: {} matrices for {} nodes",
            raw.len(),
            measure.len()
        )));
    }
    let values = raw
        .iter()
        .map(|m| matrix(n, k, m, field))
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(measure.clone(), values)
}
