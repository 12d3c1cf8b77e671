//! `wmst` — generate instances, run the online algorithms, and measure
//! random-order ratios from the command line.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Online minimum spanning trees with weight predictions.
///
/// Weights and rational parameters accept fractions ("3/2"), integers and
/// decimals ("0.75"); all arithmetic is exact. Set WMST_THREADS to cap the
/// worker threads used for Monte Carlo and sweeps.
#[derive(Parser, Debug)]
#[command(name = "wmst", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate an instance file (plus order/trace files for games).
    Gen(GenArgs),
    /// Run one algorithm on an instance in a given order.
    Run(RunArgs),
    /// Estimate the random-order ratio of one algorithm on an instance.
    Ro(RoArgs),
    /// Random-order estimates over a parameter grid, as CSV.
    Sweep(SweepArgs),
    /// Run the seeded invariant campaigns.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Two-hub family where FtP pays 1 + (2 − 2/(ℓ+1))ε.
    FtpLb,
    /// Adaptive game forcing a gap of ℓ(2k−1) on any algorithm.
    GeneralLb,
    /// Two-hub family with a light hub edge, separating FtP and GFtP in random order.
    RoLb,
    /// Adaptive triangle game with zero η₂.
    Eta2,
    /// Erdős–Rényi graph with noisy predictions.
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Alg {
    Ftp,
    Gftp,
}

impl From<Alg> for wmst::AlgorithmKind {
    fn from(a: Alg) -> Self {
        match a {
            Alg::Ftp => wmst::AlgorithmKind::Ftp,
            Alg::Gftp => wmst::AlgorithmKind::Gftp,
        }
    }
}

#[derive(Args, Debug)]
pub struct GenArgs {
    pub family: Family,
    /// Error scale k (rational for ftp-lb/ro-lb, integer for games).
    #[arg(long)]
    pub k: Option<String>,
    /// Number of stars ℓ.
    #[arg(long)]
    pub l: Option<usize>,
    /// Hub edge weight δ for ro-lb, 0 < δ < 1.
    #[arg(long)]
    pub delta: Option<String>,
    /// Reject-branch weight K for eta2 (default 10k).
    #[arg(long = "big-k")]
    pub big_k: Option<i64>,
    /// Opponent for the adaptive games.
    #[arg(long, value_enum, default_value = "ftp")]
    pub alg: Alg,
    /// Vertex count for random.
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge probability for random.
    #[arg(long = "edge-prob", default_value = "1/2")]
    pub edge_prob: String,
    /// Prediction noise half-width for random.
    #[arg(long, default_value = "1/4")]
    pub noise: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Instance file to write; sibling .order/.trace files are written for
    /// games and for the defeating order of ftp-lb.
    #[arg(long, short)]
    pub out: PathBuf,
    /// Play games with the runtime assertions enabled.
    #[arg(long)]
    pub checked: bool,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[arg(value_enum)]
    pub alg: Alg,
    pub instance: PathBuf,
    /// `id` (edge-id order), `seed:<u64>` (uniform random) or `given:<file>`.
    #[arg(long, default_value = "id")]
    pub order: String,
    #[arg(long)]
    pub checked: bool,
    /// Write the decision trace here.
    #[arg(long = "trace-out")]
    pub trace_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RoArgs {
    #[arg(value_enum)]
    pub alg: Alg,
    pub instance: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Enumerate all m! orders instead of sampling (m ≤ 9).
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub checked: bool,
    /// instance_id column (default: file stem).
    #[arg(long)]
    pub id: Option<String>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// ftp-lb, ro-lb or random.
    pub family: Family,
    /// Comma-separated k values.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<String>,
    /// Comma-separated ℓ values.
    #[arg(long, value_delimiter = ',')]
    pub l: Vec<usize>,
    /// Comma-separated δ values (ro-lb).
    #[arg(long, value_delimiter = ',')]
    pub delta: Vec<String>,
    /// Comma-separated vertex counts (random).
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Instances per vertex count (random); instance i uses seed + i.
    #[arg(long, default_value_t = 1)]
    pub instances: u64,
    #[arg(long = "edge-prob", default_value = "1/2")]
    pub edge_prob: String,
    #[arg(long, default_value = "1/4")]
    pub noise: String,
    /// Comma-separated algorithms.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "ftp,gftp")]
    pub algs: Vec<Alg>,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Enumerate orders exactly wherever m ≤ 9.
    #[arg(long)]
    pub exact: bool,
    /// Write CSV here instead of stdout.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    /// Cases per campaign (scaled down for the expensive ones).
    #[arg(long, default_value_t = 2_000)]
    pub scale: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Enable the runtime assertions in every run.
    #[arg(long)]
    pub checked: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match commands::dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(value) = std::env::var("WMST_THREADS") {
        let threads: usize = value
            .parse()
            .map_err(|_| anyhow::anyhow!("WMST_THREADS must be a positive integer, got {value:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global()?;
    }
    Ok(())
}
