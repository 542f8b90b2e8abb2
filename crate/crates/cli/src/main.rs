use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use dualmetric::linalg::lu_inverse;
use dualmetric::products::inverse_matrix_via_formula;
use dualmetric::MetricSpace;
use dualmetric_cli::bench::{run_bench, MIN_RUNS};
use dualmetric_cli::config::SessionConfig;
use dualmetric_cli::eval::evaluate;
use dualmetric_cli::expr::{check_kinds, parse_expression};
use dualmetric_cli::suite::Suite;
use nalgebra::DMatrix;

#[derive(Parser)]
#[command(name = "dualmetric", version, about = "Multivectors, multiforms and metric products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the randomized identity suite; exits nonzero if any identity fails.
    Check {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Evaluate an expression such as "d1 _| (e1 ^ e2)".
    Eval {
        #[arg(long)]
        config: PathBuf,
        expr: String,
    },
    /// Invert the metric with the pseudoscalar formula and with LU.
    Invert {
        #[arg(long)]
        config: PathBuf,
    },
    /// Time the main kernels at the configured dimension.
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = MIN_RUNS)]
        runs: usize,
    },
}

fn load(path: &Path) -> Result<SessionConfig> {
    SessionConfig::load(path).with_context(|| format!("config {}", path.display()))
}

fn space(cfg: &SessionConfig) -> Result<MetricSpace> {
    Ok(MetricSpace::from_matrix(cfg.metric.matrix().clone())?)
}

fn print_matrix(label: &str, m: &DMatrix<f64>) {
    for (j, row) in m.row_iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.17e}")).collect();
        println!("{label} {} {}", j + 1, cells.join(" "));
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check {
            config,
            trials,
            seed,
        } => {
            let cfg = load(&config)?;
            let suite = Suite::new(
                &[cfg.metric.matrix().clone()],
                trials.unwrap_or(cfg.trials),
                seed.unwrap_or(cfg.seed),
                cfg.tolerance,
            )?;
            let reports = suite.run();
            let mut failed = 0;
            for r in &reports {
                println!("{r}");
                if !r.passed {
                    failed += 1;
                    if let Some(e) = &r.error {
                        eprintln!("{}: {e}", r.label);
                    }
                }
            }
            if failed > 0 {
                eprintln!("{failed} of {} identities failed", reports.len());
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Eval { config, expr } => {
            let cfg = load(&config)?;
            let parsed = parse_expression(&expr).context("parse error")?;
            check_kinds(&parsed, cfg.dim.get()).context("kind error")?;
            println!("{}", evaluate(&parsed, &space(&cfg)?)?);
        }
        Command::Invert { config } => {
            let cfg = load(&config)?;
            let g = cfg.metric.matrix();
            let formula = inverse_matrix_via_formula(g, false)?;
            let variant = inverse_matrix_via_formula(g, true)?;
            let (lu, _) = lu_inverse(g)?;
            print_matrix("formula", &formula);
            print_matrix("lu", &lu);
            println!("max_abs_diff {:.3e}", (&formula - &lu).amax());
            println!("variant_diff {:.3e}", (&formula - &variant).amax());
        }
        Command::Bench { config, runs } => {
            let cfg = load(&config)?;
            if runs < MIN_RUNS {
                bail!("--runs must be at least {MIN_RUNS}");
            }
            for entry in run_bench(&space(&cfg)?, cfg.seed, runs) {
                println!("{entry}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
