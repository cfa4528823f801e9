//! Argument definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "swapnet",
    version,
    about = "Swap dynamics and equilibria of network creation games with interests"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a generated instance as JSON.
    Generate(GenerateArgs),
    /// Check whether an instance is an equilibrium (exit 0 yes, 1 no).
    Check(CheckArgs),
    /// Run best-response dynamics.
    Simulate(SimulateArgs),
    /// Report costs and structural certificates of an equilibrium.
    Analyze(AnalyzeArgs),
    /// Write one CSV row per generator parameter.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Alg1,
    CircleLb,
    PoaLb,
    GeneralPoa,
    AvgPath,
    Cycling,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Alg1 => "alg1",
            Family::CircleLb => "circle-lb",
            Family::PoaLb => "poa-lb",
            Family::GeneralPoa => "general-poa",
            Family::AvgPath => "avg-path",
            Family::Cycling => "cycling",
        }
    }
}

/// Interest-graph source for the alg1 family.
#[derive(Debug, Clone, Args)]
pub struct Alg1Args {
    /// Interest edge probability for random interest graphs.
    #[arg(long, default_value_t = 0.3)]
    pub p: f64,
    #[arg(long, env = "SWAPNET_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Use the complete interest graph instead of a random one.
    #[arg(long)]
    pub complete: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    pub family: Family,
    /// Maximum cost of the circle lower-bound tree.
    #[arg(long = "D")]
    pub d: Option<usize>,
    /// Ring offset of the price-of-anarchy tree.
    #[arg(long = "C")]
    pub c: Option<usize>,
    /// Node count (general-poa, avg-path, alg1).
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub alg1: Alg1Args,
    /// alg1: take the interest graph from this instance file.
    #[arg(long, value_name = "FILE")]
    pub from: Option<PathBuf>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub instance: PathBuf,
    /// single or multi:k
    #[arg(long, default_value = "single")]
    pub mode: String,
    #[arg(long)]
    pub require_tree: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub instance: PathBuf,
    /// round-robin, random:SEED or explicit:v1,v2,... Defaults to the
    /// scheduler stored in the file's metadata, else round-robin.
    #[arg(long)]
    pub scheduler: Option<String>,
    #[arg(long, default_value = "single")]
    pub mode: String,
    /// Invocation budget; defaults to 10 n^3.
    #[arg(long)]
    pub max_steps: Option<usize>,
    /// Write every invocation, move and state fingerprint here.
    #[arg(long, value_name = "FILE")]
    pub trace: Option<PathBuf>,
    /// Write the final state as an instance file.
    #[arg(long, short, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub family: Family,
    /// First parameter value (D, C or n depending on the family).
    #[arg(long)]
    pub from: usize,
    /// Last parameter value, inclusive.
    #[arg(long)]
    pub to: usize,
    #[arg(long, default_value_t = 1)]
    pub step: usize,
    /// Also compute the tree social optimum by enumeration (n <= 8).
    #[arg(long)]
    pub optimum: bool,
    /// Also run round-robin dynamics and report the moves to convergence.
    #[arg(long)]
    pub dynamics: bool,
    #[command(flatten)]
    pub alg1: Alg1Args,
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
}
