//! The `ditwist` binary: enumeration, splitting generation, star
//! products, and oracle suites over JSON files, exiting `0` on success,
//! `1` on a failed check property, and `2` on usage errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cli::{run, Command, RunConfig};

/// Deformation-quantization toolkit for the double coordinate ring of a
/// free algebra.
#[derive(Parser)]
#[command(name = "ditwist", version)]
struct Args {
    #[command(subcommand)]
    command: Cmd,

    /// Number of generators of the free algebra.
    #[arg(long, global = true, default_value_t = 2)]
    d: u8,

    /// Representation dimension for the oracle suites.
    #[arg(long = "N", global = true, default_value_t = 2)]
    n_dim: u8,

    /// Truncation order for star products.
    #[arg(long, global = true, default_value_t = 1)]
    order: usize,

    /// Seed for all randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Weight-table JSON file; the calibrated order-one table when
    /// absent.
    #[arg(long, global = true)]
    weights: Option<PathBuf>,

    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate the admissible graphs of one order, one JSON record
    /// per line.
    Graphs {
        /// Graph order (number of numbered vertices).
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Enumerate the principal splittings of a double graph, one JSON
    /// record per line.
    Splittings {
        /// Double graph JSON file.
        graph: PathBuf,
    },
    /// Compute a truncated star product from element and bracket files.
    Star {
        /// Left factor JSON file.
        alpha: PathBuf,
        /// Right factor JSON file.
        beta: PathBuf,
        /// Double bracket JSON file.
        bracket: PathBuf,
    },
    /// Run one oracle suite and report pass/fail per property.
    Check {
        /// Suite name.
        suite: String,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let command = match args.command {
        Cmd::Graphs { n } => Command::Graphs { n },
        Cmd::Splittings { graph } => Command::Splittings { graph },
        Cmd::Star {
            alpha,
            beta,
            bracket,
        } => Command::Star {
            alpha,
            beta,
            bracket,
        },
        Cmd::Check { suite } => Command::Check { suite },
    };
    let config = RunConfig {
        command,
        d: args.d,
        n_dim: args.n_dim,
        order: args.order,
        seed: args.seed,
        weights: args.weights,
        out: args.out,
    };
    match run(&config) {
        Ok(output) => {
            if let Some(path) = &config.out {
                if let Err(e) = fs::write(path, &output.text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", output.text);
            }
            if output.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
