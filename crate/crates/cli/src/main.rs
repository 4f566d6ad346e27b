use clap::{Parser, Subcommand};
use gruss_cli::campaign::{run_campaign, CampaignConfig};
use gruss_cli::expapp::{run_expapp, ExpAppConfig};
use gruss_cli::{
    report_to_json, sharpness_report, verify_instance, EXIT_CHECK_FAILED, EXIT_INPUT_ERROR,
    EXIT_PASS,
};
use std::path::PathBuf;
use std::process::ExitCode;

/// Numerical verification of Gruss-type inequalities over Hilbert
/// C*-modules.
#[derive(Parser)]
#[command(name = "gruss", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the inequality chain on one JSON instance file.
    Verify {
        /// Instance file (see README for the schema).
        instance_file: PathBuf,
        /// Relative tolerance for slack and premise checks.
        #[arg(long, default_value_t = 1e-9)]
        tol_ineq: f64,
    },
    /// Run a seeded campaign of random admissible instances.
    Campaign {
        /// JSON config file; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        instances: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        max_k: Option<usize>,
        #[arg(long)]
        max_nodes: Option<usize>,
        /// Identity-check tolerance (premise equivalence).
        #[arg(long)]
        tol_id: Option<f64>,
        /// Inequality-check tolerance (slacks, premise margins).
        #[arg(long)]
        tol_ineq: Option<f64>,
        /// Output directory for campaign.csv and summary.json.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Reproduce the sharpness witness: all four chain values equal 1.
    Sharpness,
    /// Sweep the matrix-exponential bounds over random matrices.
    Expapp {
        #[arg(long, default_value_t = 2.0)]
        norm_cap: f64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol_ineq: f64,
        /// Output directory for expapp.csv.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()))
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Verify {
            instance_file,
            tol_ineq,
        } => match verify_instance(&instance_file, tol_ineq) {
            Ok(report) => {
                println!("{}", report_to_json(&report));
                if report.pass {
                    EXIT_PASS
                } else {
                    EXIT_CHECK_FAILED
                }
            }
            Err(diag) => {
                eprintln!("gruss verify: {diag}");
                EXIT_INPUT_ERROR
            }
        },
        Command::Campaign {
            config,
            seed,
            instances,
            max_n,
            max_k,
            max_nodes,
            tol_id,
            tol_ineq,
            out,
            jobs,
        } => {
            let mut cfg = match config {
                Some(path) => match CampaignConfig::from_file(&path) {
                    Ok(cfg) => cfg,
                    Err(diag) => {
                        eprintln!("gruss campaign: {diag}");
                        return EXIT_INPUT_ERROR;
                    }
                },
                None => CampaignConfig::default(),
            };
            if let Some(v) = seed {
                cfg.seed = v;
            }
            if let Some(v) = instances {
                cfg.instances = v;
            }
            if let Some(v) = max_n {
                cfg.max_n = v;
            }
            if let Some(v) = max_k {
                cfg.max_k = v;
            }
            if let Some(v) = max_nodes {
                cfg.max_nodes = v;
            }
            if let Some(v) = tol_id {
                cfg.tolerance_identity = v;
            }
            if let Some(v) = tol_ineq {
                cfg.tolerance_inequality = v;
            }
            if let Some(v) = out {
                cfg.output_dir = v;
            }
            match run_campaign(&cfg, jobs) {
                Ok(summary) => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&summary).expect("summary serializes")
                    );
                    if summary.violations == 0 {
                        EXIT_PASS
                    } else {
                        EXIT_CHECK_FAILED
                    }
                }
                Err(diag) => {
                    eprintln!("gruss campaign: {diag}");
                    EXIT_INPUT_ERROR
                }
            }
        }
        Command::Sharpness => {
            let (report, ok) = sharpness_report();
            println!("{}", report_to_json(&report));
            if ok {
                EXIT_PASS
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Command::Expapp {
            norm_cap,
            k,
            samples,
            seed,
            tol_ineq,
            out,
        } => {
            let cfg = ExpAppConfig {
                norm_cap,
                k,
                samples,
                seed,
                tolerance: tol_ineq,
                output_dir: out,
            };
            match run_expapp(&cfg) {
                Ok((summary, ok)) => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&summary).expect("summary serializes")
                    );
                    if ok {
                        EXIT_PASS
                    } else {
                        EXIT_CHECK_FAILED
                    }
                }
                Err(diag) => {
                    eprintln!("gruss expapp: {diag}");
                    EXIT_INPUT_ERROR
                }
            }
        }
    }
}
