//! Batch front end for the deformation-quantization toolkit: graph
//! enumeration, principal-splitting generation, star-product evaluation,
//! and the oracle check suites, all with JSON input and output.
//!
//! Every randomized suite draws from a ChaCha20 generator derived from an
//! explicit 64-bit seed, and each report records the generator name next
//! to the seed so counterexamples can be replayed. Identical
//! configuration and seed produce byte-identical output.

mod checks;

use std::fs;
use std::path::{Path, PathBuf};

use double_poisson::DoubleBracket;
use free_algebra::Letter;
use graphs::{all_perm_tuples, enum_admissible, splitting_from_perms, DGraph};
use oalgebra::OElem;
use quantize::{star, WeightTable};
use serde::Serialize;
use thiserror::Error;

/// The generator name recorded in every check report.
pub const GENERATOR: &str = "chacha20/v1";

/// The check suites, in the order the acceptance gate runs them.
pub const SUITES: [&str; 9] = [
    "counts",
    "splittings",
    "cor2",
    "lemma12",
    "lemma13",
    "pihat",
    "axioms",
    "star",
    "permcalc",
];

/// An invalid invocation or unreadable/unparsable input; the process
/// exits with status 2.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("{0}")]
pub struct UsageError(pub String);

/// A parsed invocation: the subcommand plus the shared flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    /// Number of generators of the free algebra.
    pub d: Letter,
    /// Representation dimension for the oracle suites.
    pub n_dim: u8,
    /// Star-product truncation order.
    pub order: usize,
    /// Seed for all randomized sampling.
    pub seed: u64,
    /// Optional weight-table file; the calibrated order-one table when
    /// absent.
    pub weights: Option<PathBuf>,
    /// Output file; stdout when absent.
    pub out: Option<PathBuf>,
}

/// The subcommand with its positional inputs.
#[derive(Debug, Clone)]
pub enum Command {
    /// Stream the admissible graphs of one order.
    Graphs { n: i64 },
    /// Stream the principal splittings of a double graph file.
    Splittings { graph: PathBuf },
    /// Compute a truncated star product from element and bracket files.
    Star {
        alpha: PathBuf,
        beta: PathBuf,
        bracket: PathBuf,
    },
    /// Run one oracle suite.
    Check { suite: String },
}

/// The text produced by a run plus the verdict selecting the exit
/// status: `0` when `pass`, `1` otherwise.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub text: String,
    pub pass: bool,
}

/// One checked property: its name, verdict, and a replayable
/// counterexample payload when it failed.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub name: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
}

impl PropertyReport {
    /// Wraps an optional counterexample; `None` means the property held.
    pub fn new(name: &'static str, counterexample: Option<serde_json::Value>) -> Self {
        PropertyReport {
            name,
            pass: counterexample.is_none(),
            counterexample,
        }
    }
}

/// A suite report: the generator header, the configuration, and one
/// entry per property.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub generator: &'static str,
    pub seed: u64,
    pub suite: String,
    pub d: Letter,
    #[serde(rename = "N")]
    pub n: u8,
    pub properties: Vec<PropertyReport>,
    pub passed: bool,
}

/// Executes a parsed invocation, reading any referenced files.
pub fn run(config: &RunConfig) -> Result<RunOutput, UsageError> {
    match &config.command {
        Command::Graphs { n } => Ok(RunOutput {
            text: cmd_graphs(*n)?,
            pass: true,
        }),
        Command::Splittings { graph } => Ok(RunOutput {
            text: cmd_splittings(&read_file(graph)?)?,
            pass: true,
        }),
        Command::Star {
            alpha,
            beta,
            bracket,
        } => {
            let weights = match &config.weights {
                Some(path) => Some(read_file(path)?),
                None => None,
            };
            let text = cmd_star(
                &read_file(alpha)?,
                &read_file(beta)?,
                &read_file(bracket)?,
                config.order,
                weights.as_deref(),
            )?;
            Ok(RunOutput { text, pass: true })
        }
        Command::Check { suite } => {
            let report = run_suite(suite, config.d, config.n_dim, config.seed)?;
            let pass = report.passed;
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            Ok(RunOutput { text, pass })
        }
    }
}

/// Streams the admissible graphs of order `n`, one JSON record per line.
pub fn cmd_graphs(n: i64) -> Result<String, UsageError> {
    let n = usize::try_from(n)
        .map_err(|_| UsageError(format!("graph order must be nonnegative, got {n}")))?;
    let mut out = String::new();
    for g in enum_admissible(n) {
        out.push_str(&serde_json::to_string(&g).expect("graph serializes"));
        out.push('\n');
    }
    Ok(out)
}

/// Streams every principal splitting of the double graph in
/// `graph_json`, one `{"perms": …, "splitting": …}` record per line.
pub fn cmd_splittings(graph_json: &str) -> Result<String, UsageError> {
    let g: DGraph =
        serde_json::from_str(graph_json).map_err(|e| UsageError(format!("double graph: {e}")))?;
    let mut out = String::new();
    for t in all_perm_tuples(&g) {
        let s = splitting_from_perms(&g, &t)
            .map_err(|e| UsageError(format!("double graph: {e}")))?;
        let record = serde_json::json!({ "perms": t, "splitting": s });
        out.push_str(&serde_json::to_string(&record).expect("splitting serializes"));
        out.push('\n');
    }
    Ok(out)
}

/// Computes the truncated star product of two coordinate-ring elements
/// against a bracket table, emitting the series as one JSON document.
pub fn cmd_star(
    alpha_json: &str,
    beta_json: &str,
    bracket_json: &str,
    order: usize,
    weights_json: Option<&str>,
) -> Result<String, UsageError> {
    let alpha: OElem =
        serde_json::from_str(alpha_json).map_err(|e| UsageError(format!("alpha: {e}")))?;
    let beta: OElem =
        serde_json::from_str(beta_json).map_err(|e| UsageError(format!("beta: {e}")))?;
    let bracket: DoubleBracket =
        serde_json::from_str(bracket_json).map_err(|e| UsageError(format!("bracket: {e}")))?;
    let weights: WeightTable = match weights_json {
        Some(text) => serde_json::from_str(text).map_err(|e| UsageError(format!("weights: {e}")))?,
        None => WeightTable::order_one(),
    };
    let series = star(&alpha, &beta, order, &weights, &bracket)
        .map_err(|e| UsageError(format!("star product: {e}")))?;
    let mut text = serde_json::to_string_pretty(&series).expect("series serializes");
    text.push('\n');
    Ok(text)
}

/// Runs one named suite at the given configuration; unknown names are
/// usage errors.
pub fn run_suite(suite: &str, d: Letter, n: u8, seed: u64) -> Result<CheckReport, UsageError> {
    if d == 0 {
        return Err(UsageError("need at least one generator (--d ≥ 1)".into()));
    }
    if n == 0 {
        return Err(UsageError(
            "need a positive representation dimension (--N ≥ 1)".into(),
        ));
    }
    let properties = match suite {
        "counts" => checks::counts(),
        "splittings" => checks::splittings(),
        "cor2" => checks::cor2(d, n, seed)?,
        "lemma12" => checks::lemma12(d, n, seed),
        "lemma13" => checks::lemma13(d, n, seed)?,
        "pihat" => checks::pihat(n, seed),
        "axioms" => checks::axioms(d, n, seed)?,
        "star" => checks::star_products(d, n, seed)?,
        "permcalc" => checks::permcalc(),
        _ => {
            return Err(UsageError(format!(
                "unknown suite {suite:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    let passed = properties.iter().all(|p| p.pass);
    Ok(CheckReport {
        generator: GENERATOR,
        seed,
        suite: suite.to_string(),
        d,
        n,
        properties,
        passed,
    })
}

fn read_file(path: &Path) -> Result<String, UsageError> {
    fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}
