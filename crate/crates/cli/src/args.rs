use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lcsim::seqgen::MixtureLength;
use lcsim::Engine;

#[derive(Debug, Parser)]
#[command(name = "lcsim", version, about = "Longest common subsequences of random words")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Master seed; drawn from entropy and recorded in the manifest when omitted.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads. Results do not depend on this value.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Primary output file (stdout when omitted).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Manifest path. Defaults to `<out>.manifest.json`, or stderr without `--out`.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    /// LCS engine for simulations.
    #[arg(long, global = true, value_enum, default_value_t = EngineArg::Bitparallel)]
    pub engine: EngineArg,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum EngineArg {
    Dp,
    Wmmm,
    Bitparallel,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Dp => Engine::Dp,
            EngineArg::Wmmm => Engine::Wmmm,
            EngineArg::Bitparallel => Engine::BitParallel,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// LCS length of two sequence files.
    Lcs(LcsArgs),
    /// Scan mean and variance of LC_n over a length grid and fit a power law.
    Simulate(SimulateArgs),
    /// Estimate (gamma_star, c) from uniform pairs.
    Calibrate(CalibrateArgs),
    /// Run the similarity Z-test on two files or one generated pair.
    Test(TestArgs),
    /// Estimate P(S <= z) for a pair generator over many replicates.
    Power(PowerArgs),
    /// Upper bounds on the m-word Chvátal–Sankoff constants.
    Bounds(BoundsArgs),
}

impl Command {
    pub fn uses_seed(&self) -> bool {
        match self {
            Command::Lcs(_) | Command::Bounds(_) => false,
            Command::Test(t) => t.generate.is_some(),
            _ => true,
        }
    }
}

#[derive(Debug, Args)]
pub struct LcsArgs {
    pub file_a: PathBuf,
    pub file_b: PathBuf,
    /// Characters of the alphabet, in symbol order (e.g. `01` or `ACGT`).
    #[arg(long, default_value = "ACGT")]
    pub alphabet: String,
    #[arg(long, value_enum, default_value_t = EngineArg::Wmmm)]
    pub algorithm: EngineArg,
    /// Also print one longest common subsequence.
    #[arg(long)]
    pub witness: bool,
    /// Recompute with the quadratic DP and fail on disagreement.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Letter probabilities, comma separated (e.g. `0.1,0.9`).
    #[arg(long, conflicts_with = "k")]
    pub dist: Option<String>,
    /// Uniform alphabet size, used when `--dist` is absent.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Length grid as `start:step:stop`, inclusive.
    #[arg(long, conflicts_with = "n")]
    pub grid: Option<String>,
    /// Comma-separated list of lengths.
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    pub reps: usize,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    #[arg(long, default_value_t = 100_000)]
    pub n_cal: usize,
    #[arg(long, default_value_t = 529)]
    pub reps: usize,
    #[arg(long, default_value_t = lcsim::hypothesis::DEFAULT_ALPHA)]
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Two independent uniform words.
    Null,
    /// A uniform word paired with itself.
    Identical,
    /// A shared word inserted into both words.
    AltCommon,
    /// Pieces of a shared word routed by a mixture.
    AltMixture,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum MixtureLengthArg {
    Unpadded,
    PadRight,
}

impl From<MixtureLengthArg> for MixtureLength {
    fn from(m: MixtureLengthArg) -> Self {
        match m {
            MixtureLengthArg::Unpadded => MixtureLength::Unpadded,
            MixtureLengthArg::PadRight => MixtureLength::PadRight,
        }
    }
}

#[derive(Debug, Args)]
pub struct GeneratorArgs {
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    /// Length of the independent background words.
    #[arg(long)]
    pub m_len: Option<usize>,
    /// Number of pieces of the shared word.
    #[arg(long)]
    pub segments: Option<usize>,
    /// Routing probabilities `both,x_only,y_only,neither`.
    #[arg(long, default_value = "0.8,0.1,0.1,0")]
    pub mix: String,
    #[arg(long, value_enum, default_value_t = MixtureLengthArg::Unpadded)]
    pub mixture_length: MixtureLengthArg,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// JSON parameters as written by `calibrate`.
    #[arg(long, conflicts_with_all = ["gamma_star", "c"])]
    pub params: Option<PathBuf>,
    #[arg(long, requires = "c")]
    pub gamma_star: Option<f64>,
    #[arg(long, requires = "gamma_star")]
    pub c: Option<f64>,
    /// Significance level; overrides the value in `--params`.
    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[arg(requires = "file_b", conflicts_with = "generate")]
    pub file_a: Option<PathBuf>,
    pub file_b: Option<PathBuf>,
    #[arg(long, default_value = "ACGT")]
    pub alphabet: String,
    /// Generate the pair instead of reading files.
    #[arg(long, value_enum)]
    pub generate: Option<GeneratorKind>,
    #[command(flatten)]
    pub gen: GeneratorArgs,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct PowerArgs {
    #[arg(long, value_enum, default_value_t = GeneratorKind::Null)]
    pub alt: GeneratorKind,
    #[command(flatten)]
    pub gen: GeneratorArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 10_000)]
    pub reps: usize,
    /// Histogram of the statistic S, written as CSV.
    #[arg(long)]
    pub hist_out: Option<PathBuf>,
    #[arg(long, default_value_t = 40)]
    pub bins: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum TableFormat {
    Table,
    Csv,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    /// Word counts as `lo..hi` (inclusive) or a single value.
    #[arg(long, default_value = "2..10")]
    pub m: String,
    #[arg(long, value_enum, default_value_t = TableFormat::Table)]
    pub format: TableFormat,
}
