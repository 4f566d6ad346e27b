//! Browser demo bindings: three interactive views onto the toolkit,
//! each returning a JSON string the page renders directly.
//!
//! Build with `wasm-pack build crates/wasm --target web` (or cargo +
//! wasm-bindgen-cli); `www/index.html` loads the generated module. The
//! functions are plain Rust underneath, so the logic is testable on the
//! host as well.

use gruss_core::cstar::AlgebraElement;
use gruss_core::gruss::{random_chain_instance, step_instance, DEFAULT_INEQUALITY_TOL};
use gruss_core::integration::{DiscreteProbabilityMeasure, QuadratureScheme};
use gruss_core::{applications, c64};
use wasm_bindgen::prelude::wasm_bindgen;

/// Chain report for the two-valued step instance with weights (w, 1 - w).
///
/// w = 0.5 is the sharpness witness: all four chain values equal 1.
#[wasm_bindgen]
pub fn step_chain_json(weight: f64) -> String {
    if !(weight.is_finite() && weight > 0.0 && weight < 1.0) {
        return error_json("weight must lie strictly between 0 and 1");
    }
    let measure = match DiscreteProbabilityMeasure::two_point(weight) {
        Ok(m) => m,
        Err(e) => return error_json(&e.to_string()),
    };
    match step_instance(measure).report(DEFAULT_INEQUALITY_TOL) {
        Ok(report) => serde_json::to_string(&report).unwrap_or_else(|e| error_json(&e.to_string())),
        Err(e) => error_json(&e.to_string()),
    }
}

/// Chain report for a seeded random admissible instance.
#[wasm_bindgen]
pub fn random_chain_json(seed: u64, max_n: u32, max_k: u32, max_nodes: u32) -> String {
    let max_n = max_n.clamp(1, 8) as usize;
    let max_k = max_k.clamp(1, 8) as usize;
    let max_nodes = max_nodes.clamp(1, 64) as usize;
    let instance = random_chain_instance(seed, max_n, max_k, max_nodes);
    match instance.report(DEFAULT_INEQUALITY_TOL) {
        Ok(mut report) => {
            report.seed = Some(seed);
            serde_json::to_string(&report).unwrap_or_else(|e| error_json(&e.to_string()))
        }
        Err(e) => error_json(&e.to_string()),
    }
}

/// Margins of the exponential application for scalar A swept over
/// [-2, 2] \ {0}: one record per grid point with margins (i)-(iii) and the
/// premise margin, as a JSON array for plotting.
#[wasm_bindgen]
pub fn exp_margin_sweep_json(points: u32) -> String {
    let points = points.clamp(8, 400);
    let scheme = QuadratureScheme::default_scheme();
    let mut records = Vec::with_capacity(points as usize);
    for i in 0..points {
        let a = -2.0 + 4.0 * (f64::from(i) + 0.5) / f64::from(points);
        if a.abs() < 1e-6 {
            continue;
        }
        let element = AlgebraElement::scalar(c64(a, 0.0));
        let report = match applications::exp_bound_check(&element, scheme) {
            Ok(r) => r,
            Err(_) => continue,
        };
        records.push(serde_json::json!({
            "a": a,
            "margin_i": report.margin_i,
            "margin_ii": report.margin_ii,
            "margin_iii": report.margin_iii,
            "premise_margin": report.premise_margin,
        }));
    }
    serde_json::to_string(&records).unwrap_or_else(|e| error_json(&e.to_string()))
}

fn error_json(message: &str) -> String {
    serde_json::json!({ "error": message }).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_chain_at_half_is_the_witness() {
        let json = step_chain_json(0.5);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        for key in ["L0", "L1", "L2", "L3"] {
            assert!((v[key].as_f64().unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn step_chain_rejects_bad_weight() {
        let v: serde_json::Value = serde_json::from_str(&step_chain_json(1.5)).unwrap();
        assert!(v["error"].is_string());
    }

    #[test]
    fn random_chain_is_seed_stable_and_passes() {
        let a = random_chain_json(12, 3, 3, 8);
        let b = random_chain_json(12, 3, 3, 8);
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["pass"], serde_json::Value::Bool(true));
        assert_eq!(v["seed"], 12);
    }

    #[test]
    fn exp_sweep_shows_the_premise_explained_flip_region() {
        let v: serde_json::Value = serde_json::from_str(&exp_margin_sweep_json(100)).unwrap();
        let records = v.as_array().unwrap();
        assert!(records.len() > 90);
        for r in records {
            assert!(r["margin_i"].as_f64().unwrap() >= -1e-10);
            if r["margin_ii"].as_f64().unwrap() < -1e-10 {
                assert!(r["premise_margin"].as_f64().unwrap() < 0.0);
            }
        }
        // The flip region near a = -2 is present in the data.
        assert!(records
            .iter()
            .any(|r| r["margin_ii"].as_f64().unwrap() < 0.0));
    }
}
