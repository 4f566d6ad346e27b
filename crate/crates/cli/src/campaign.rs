//! Seeded verification campaigns over random admissible instances.
//!
//! Each instance gets its own RNG seeded from (campaign seed, index), so
//! rows are independent of evaluation order and worker count; the CSV is
//! byte-identical across repeated runs with the same configuration.

use gruss_core::gruss::{random_chain_instance, InequalityReport};
use gruss_core::random::instance_seed;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::{Path, PathBuf};

pub const CSV_HEADER: &str =
    "seed,n,k,m,L0,L1,L2,L3,slack01,slack12,slack23,premise_margin_f,premise_margin_g,pass";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignConfig {
    pub seed: u64,
    pub instances: usize,
    pub max_n: usize,
    pub max_k: usize,
    pub max_nodes: usize,
    pub tolerance_identity: f64,
    pub tolerance_inequality: f64,
    pub output_dir: PathBuf,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            instances: 1000,
            max_n: 4,
            max_k: 4,
            max_nodes: 16,
            tolerance_identity: 1e-11,
            tolerance_inequality: 1e-9,
            output_dir: PathBuf::from("."),
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.instances == 0 {
            return Err("instances must be positive".into());
        }
        if self.max_n == 0 || self.max_n > 8 || self.max_k == 0 || self.max_k > 8 {
            return Err("max_n and max_k must be in 1..=8".into());
        }
        if self.max_nodes == 0 || self.max_nodes > 64 {
            return Err("max_nodes must be in 1..=64".into());
        }
        for (name, tol) in [
            ("tolerance_identity", self.tolerance_identity),
            ("tolerance_inequality", self.tolerance_inequality),
        ] {
            if !(tol > 0.0 && tol <= 1e-3) {
                return Err(format!("{name} must lie in (0, 1e-3], got {tol}"));
            }
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// One evaluated instance: the report plus the identity check that the two
/// premise forms agree within the identity tolerance.
#[derive(Debug, Clone)]
pub struct InstanceRow {
    pub seed: u64,
    pub report: InequalityReport,
    pub identity_ok: bool,
}

/// Aggregate campaign results; `worst_*` track the extreme values seen.
#[derive(Debug, Clone, Serialize)]
pub struct CampaignSummary {
    pub seed: u64,
    pub instances: usize,
    pub violations: usize,
    pub identity_violations: usize,
    pub worst_slack01: f64,
    pub worst_slack12: f64,
    pub worst_slack23: f64,
    pub worst_premise_margin: f64,
    pub worst_identity_residual: f64,
    pub runtime_seconds: f64,
}

pub fn run_instance(cfg: &CampaignConfig, index: u64) -> InstanceRow {
    let seed = instance_seed(cfg.seed, index);
    let instance = random_chain_instance(seed, cfg.max_n, cfg.max_k, cfg.max_nodes);
    let mut report = instance
        .report(cfg.tolerance_inequality)
        .expect("generated instances are well shaped");
    report.seed = Some(seed);

    let scale_f = 1.0 + instance.pair_f.quarter_range_sq().norm();
    let scale_g = 1.0 + instance.pair_g.quarter_range_sq().norm();
    let identity_ok = report.premise_identity_residual_f <= cfg.tolerance_identity * scale_f
        && report.premise_identity_residual_g <= cfg.tolerance_identity * scale_g;
    InstanceRow {
        seed,
        report,
        identity_ok,
    }
}

/// Evaluates all instances, fanning out to `jobs` workers. Rows come back
/// in index order regardless of scheduling.
pub fn evaluate(cfg: &CampaignConfig, jobs: usize) -> Vec<InstanceRow> {
    let jobs = jobs.max(1).min(cfg.instances.max(1));
    if jobs == 1 {
        return (0..cfg.instances as u64)
            .map(|i| run_instance(cfg, i))
            .collect();
    }
    let chunk = cfg.instances.div_ceil(jobs);
    let mut rows: Vec<Option<InstanceRow>> = vec![None; cfg.instances];
    std::thread::scope(|scope| {
        for (worker, slice) in rows.chunks_mut(chunk).enumerate() {
            let start = (worker * chunk) as u64;
            scope.spawn(move || {
                for (offset, slot) in slice.iter_mut().enumerate() {
                    *slot = Some(run_instance(cfg, start + offset as u64));
                }
            });
        }
    });
    rows.into_iter()
        .map(|r| r.expect("all slots filled"))
        .collect()
}

pub fn csv_row(row: &InstanceRow) -> String {
    let r = &row.report;
    let f = crate::fmt_float;
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        row.seed,
        r.dims.n,
        r.dims.k,
        r.node_count,
        f(r.l0),
        f(r.l1),
        f(r.l2),
        f(r.l3),
        f(r.slack01),
        f(r.slack12),
        f(r.slack23),
        f(r.premise_margin_f),
        f(r.premise_margin_g),
        r.pass
    )
}

pub fn summarize(
    cfg: &CampaignConfig,
    rows: &[InstanceRow],
    runtime_seconds: f64,
) -> CampaignSummary {
    let mut s = CampaignSummary {
        seed: cfg.seed,
        instances: rows.len(),
        violations: 0,
        identity_violations: 0,
        worst_slack01: f64::INFINITY,
        worst_slack12: f64::INFINITY,
        worst_slack23: f64::INFINITY,
        worst_premise_margin: f64::INFINITY,
        worst_identity_residual: 0.0,
        runtime_seconds,
    };
    for row in rows {
        let r = &row.report;
        if !r.pass {
            s.violations += 1;
        }
        if !row.identity_ok {
            s.identity_violations += 1;
        }
        s.worst_slack01 = s.worst_slack01.min(r.slack01);
        s.worst_slack12 = s.worst_slack12.min(r.slack12);
        s.worst_slack23 = s.worst_slack23.min(r.slack23);
        s.worst_premise_margin = s
            .worst_premise_margin
            .min(r.premise_margin_f.min(r.premise_margin_g));
        s.worst_identity_residual = s.worst_identity_residual.max(
            r.premise_identity_residual_f
                .max(r.premise_identity_residual_g),
        );
    }
    s
}

/// Full campaign: evaluate, write campaign.csv and summary.json, summarize.
pub fn run_campaign(cfg: &CampaignConfig, jobs: usize) -> Result<CampaignSummary, String> {
    cfg.validate()?;
    let started = std::time::Instant::now();
    let rows = evaluate(cfg, jobs);
    let summary = summarize(cfg, &rows, started.elapsed().as_secs_f64());

    std::fs::create_dir_all(&cfg.output_dir)
        .map_err(|e| format!("{}: {e}", cfg.output_dir.display()))?;
    let csv_path = cfg.output_dir.join("campaign.csv");
    let mut out = String::with_capacity(rows.len() * 200);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &rows {
        out.push_str(&csv_row(row));
        out.push('\n');
    }
    write_file(&csv_path, out.as_bytes())?;

    let summary_path = cfg.output_dir.join("summary.json");
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    write_file(&summary_path, json.as_bytes())?;
    Ok(summary)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), String> {
    let mut file = std::fs::File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
    file.write_all(bytes)
        .map_err(|e| format!("{}: {e}", path.display()))
}
