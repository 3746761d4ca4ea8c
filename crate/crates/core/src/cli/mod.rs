//! The `erasure-audit` command line. Commands talk to each other only
//! through files; every invocation leaves a `manifest.json` in its output
//! directory.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or precondition error,
//! 3 numeric failure.

mod commands;
mod output;
pub mod svg;

pub use output::{write_atomic, FileDigest, RunManifest};

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "ERASURE_AUDIT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "erasure-audit", version, about = "Projection-based concept removal and leakage diagnostics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample isotropic Gaussian features with balanced, independent labels.
    Generate(GenerateArgs),
    /// Turn a JSONL corpus into tf-idf bag-of-words vectors.
    Vectorize(VectorizeArgs),
    /// Apply mean projection or INLP to a dataset.
    Remove(RemoveArgs),
    /// Run one diagnostic on a dataset or on a `--history` directory.
    Diagnose(DiagnoseArgs),
    /// Anti-cluster a dataset and score the groups against reference labels.
    Recover(RecoverArgs),
    /// Collect the reports found under a directory into one table.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1024)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VectorizeArgs {
    /// JSON lines `{"text": ..., "label": 0|1}`.
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long, default_value_t = crate::datagen::DEFAULT_DIMENSION)]
    pub d: usize,
    /// Reuse a saved vectorizer instead of fitting one.
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Mp,
    Inlp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassifierArg {
    Logistic,
    NearestCentroid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Csv,
    Jsonl,
}

#[derive(Debug, Args)]
pub struct RemoveArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Defaults to the input file extension.
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
    #[arg(long, value_enum, default_value = "inlp")]
    pub method: Method,
    #[arg(long, default_value_t = 10)]
    pub iterations: usize,
    #[arg(long, value_enum, default_value = "logistic")]
    pub classifier: ClassifierArg,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the dataset after every iteration to `history/iter_NNN.csv`.
    #[arg(long)]
    pub history: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Cv,
    LooNc,
    Probs,
    Nn,
    Mmd,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Cv => "cv",
            Metric::LooNc => "loo-nc",
            Metric::Probs => "probs",
            Metric::Nn => "nn",
            Metric::Mmd => "mmd",
        }
    }
}

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    /// A dataset file, or a directory of `iter_NNN.csv` snapshots.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub metric: Metric,
    #[arg(long, default_value_t = 32)]
    pub k: usize,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Skip the row L2 normalization applied before cv and probs.
    #[arg(long)]
    pub no_normalize: bool,
    /// Replace the labels by a seeded permutation (independent baseline).
    #[arg(long)]
    pub shuffle_labels: bool,
    /// MMD kernel width: `auto` (median heuristic per dataset), `initial`
    /// (median heuristic of the first dataset, reused), or a number.
    #[arg(long, default_value = "auto")]
    pub bandwidth: String,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RecoverArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 100)]
    pub restarts: usize,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 10_000)]
    pub max_passes: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Reference labels: a dataset CSV (its label column is used) or a CSV
    /// with a single `label` column.
    #[arg(long, conflicts_with = "use_input_labels")]
    pub labels: Option<PathBuf>,
    /// Score against the labels stored in the input dataset.
    #[arg(long)]
    pub use_input_labels: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Directory searched recursively for `*.report.json` and `recovery.json`.
    #[arg(long)]
    pub dir: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

/// Parse `std::env::args`, run, and return the process exit code.
pub fn main() -> i32 {
    let argv: Vec<String> = std::env::args().collect();
    run_with_args(argv)
}

pub fn run_with_args(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    configure_threads();
    match commands::run(cli.command, argv) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // a pool may already exist when called twice in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_) => 1,
        e if e.is_numeric_failure() => 3,
        _ => 2,
    }
}
