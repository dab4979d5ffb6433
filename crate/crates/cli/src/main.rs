use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spinsurf_cli::config::SchemeSpec;
use spinsurf_cli::{run_compare, run_convergence, run_generate, run_verify, Overrides, Report, RunConfig};

#[derive(Parser)]
#[command(name = "spinsurf", version, about = "Conformal surfaces in R^4 from Dirac spinors")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Run configuration (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory, overriding `output_dir`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Gate for `verify` and `compare`.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Force finite differences.
    #[arg(long, global = true, conflicts_with = "spectral")]
    fd: bool,
    /// Force spectral differentiation (doubly periodic grids only).
    #[arg(long, global = true)]
    spectral: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build the surface, write CSV/OBJ exports and report.json.
    Generate,
    /// Dirac residuals only, no integration.
    Verify,
    /// Complex pipeline against the quaternionic integral.
    Compare,
    /// Defect table over successively doubled grids.
    Convergence {
        #[arg(long, default_value_t = 3)]
        levels: usize,
    },
}

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn print_report(report: &Report) {
    let show = |name: &str, v: Option<f64>| {
        if let Some(v) = v {
            println!("{name:<24} {v:.6e}");
        }
    };
    show("left_residual", report.left_residual);
    show("right_residual", report.right_residual);
    show("closedness_sup", report.closedness_sup);
    show("conformality_sup", report.conformality_sup);
    show("lagrangian_sup", report.lagrangian_sup);
    show("path_discrepancy", report.path_discrepancy);
    show("conformal_factor_min", report.conformal_factor_min);
    show("equivalence_distance", report.equivalence_distance);
    if let Some(n) = report.solver_iterations {
        println!("{:<24} {n}", "solver_iterations");
    }
    for path in &report.outputs {
        println!("wrote {path}");
    }
    for e in &report.errors {
        eprintln!("error: {e}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Some(path) = cli.global.config else {
        eprintln!("error: --config <path> is required");
        return ExitCode::from(EXIT_USAGE);
    };
    let overrides = Overrides {
        out: cli.global.out,
        tolerance: cli.global.tolerance,
        scheme: if cli.global.fd {
            Some(SchemeSpec::Fd)
        } else if cli.global.spectral {
            Some(SchemeSpec::Spectral)
        } else {
            None
        },
    };
    let cfg = match RunConfig::load(&path).and_then(|cfg| overrides.apply(cfg)) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };

    let report = match cli.command {
        Command::Generate => run_generate(&cfg),
        Command::Verify => run_verify(&cfg),
        Command::Compare => run_compare(&cfg),
        Command::Convergence { levels } => {
            return match run_convergence(&cfg, levels) {
                Ok(conv) => {
                    print!("{}", conv.table());
                    println!("order check: {}", conv.order_check);
                    for e in &conv.errors {
                        eprintln!("error: {e}");
                    }
                    if conv.ok() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_FAILED)
                    }
                }
                Err(spinsurf_cli::pipeline::RunError::Config(e)) => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_USAGE)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_FAILED)
                }
            };
        }
    };
    print_report(&report);
    if report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}
