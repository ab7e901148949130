use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use spinloops::cli::{self, Outcome, Overrides, RunConfig};

#[derive(Parser)]
#[command(name = "spinloops", version, about = "Loop Monte Carlo and exact cross-checks for quantum spin chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed, overriding the configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Number of independent chains.
    #[arg(long, global = true)]
    chains: Option<u64>,
    /// Hilbert space dimension cap for exact computations.
    #[arg(long, global = true)]
    cap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the loop sampler and write estimates.
    Sample,
    /// Compute exact values by dense diagonalization.
    Oracle,
    /// Check the operator identities over a parameter grid.
    Verify,
    /// Compare a sampler CSV against an oracle CSV.
    Compare { mc: Option<PathBuf>, oracle: Option<PathBuf> },
    /// Sample or diagonalize over a cartesian parameter grid.
    Scan,
}

fn run(args: &Cli) -> spinloops::error::Result<Outcome> {
    let cfg = match &args.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let o = Overrides { seed: args.seed, out: args.out.clone(), chains: args.chains, cap: args.cap };
    match &args.command {
        Command::Sample => cli::cmd_sample(&cfg, &o),
        Command::Oracle => cli::cmd_oracle(&cfg, &o),
        Command::Verify => cli::cmd_verify(&cfg, &o),
        Command::Compare { mc, oracle } => cli::cmd_compare(&cfg, &o, mc.as_deref(), oracle.as_deref()),
        Command::Scan => cli::cmd_scan(&cfg, &o),
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    match run(&args) {
        Ok(out) => {
            print!("{}", out.report);
            for n in &out.notes {
                eprintln!("warning: {n}");
            }
            for p in &out.written {
                eprintln!("wrote {}", p.display());
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e))
        }
    }
}
