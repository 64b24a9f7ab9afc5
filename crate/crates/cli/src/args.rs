use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spectra_core::{CaseId, Format, Method};

/// Power-spectrum estimation and hidden-tone recovery.
#[derive(Debug, Parser)]
#[command(name = "spectra", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a test signal (a case-a signal or a synthetic carrier).
    Synth(SynthArgs),
    /// Estimate the power spectrum of a signal file.
    Estimate(EstimateArgs),
    /// Hide a sinusoid in a carrier.
    Embed(EmbedArgs),
    /// Report prominent spectral peaks of a signal file.
    Detect(DetectArgs),
    /// Run one experiment case and emit spectra, peaks and verdicts.
    Reproduce(ReproduceArgs),
    /// Run seeded trials of a case and emit per-method detection rates.
    Montecarlo(MonteCarloArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Periodogram,
    Bt,
    Capon,
    Yw,
    Modcov,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Periodogram => Method::Periodogram,
            MethodArg::Bt => Method::BlackmanTukey,
            MethodArg::Capon => Method::Capon,
            MethodArg::Yw => Method::YuleWalker,
            MethodArg::Modcov => Method::ModifiedCovariance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    A1,
    A2,
    A3,
    B1,
    B2,
    C1,
    C2,
}

impl From<CaseArg> for CaseId {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::A1 => CaseId::A1,
            CaseArg::A2 => CaseId::A2,
            CaseArg::A3 => CaseId::A3,
            CaseArg::B1 => CaseId::B1,
            CaseArg::B2 => CaseId::B2,
            CaseArg::C1 => CaseId::C1,
            CaseArg::C2 => CaseId::C2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CarrierArg {
    /// Read the carrier from `--in`.
    File,
    /// Seeded colored noise.
    Synthetic,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GridArg {
    /// Number of frequency points on [0, 0.5).
    #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u32).range(1..))]
    pub grid: u32,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Case whose signal to generate (a-cases only).
    #[arg(long, conflicts_with = "carrier", required_unless_present = "carrier")]
    pub case: Option<CaseArg>,
    /// Generate a carrier instead of a case signal (`synthetic` only).
    #[arg(long)]
    pub carrier: Option<CarrierArg>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Carrier length in samples.
    #[arg(long, default_value_t = 1000)]
    pub length: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[arg(long)]
    pub method: MethodArg,
    /// Signal file: `.wav`, or one sample per line.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Window half-width, Capon length or AR order (method default when omitted).
    #[arg(long)]
    pub order: Option<usize>,
    #[command(flatten)]
    pub grid: GridArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[arg(long, value_enum, default_value_t = CarrierArg::File)]
    pub carrier: CarrierArg,
    /// Carrier WAV (required with `--carrier file`).
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Tone frequency in cycles/sample.
    #[arg(long, default_value_t = 0.2)]
    pub freq: f64,
    /// Tone amplitude relative to the unit-RMS carrier.
    #[arg(long, default_value_t = 1.0)]
    pub amp: f64,
    /// Samples of carrier to keep.
    #[arg(long, default_value_t = 1000)]
    pub length: usize,
    /// Seed for the synthetic carrier.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::Modcov)]
    pub method: MethodArg,
    #[arg(long)]
    pub order: Option<usize>,
    #[command(flatten)]
    pub grid: GridArg,
    /// Minimum peak prominence as a multiple of the median spectrum value.
    #[arg(long, default_value_t = 5.0)]
    pub prominence: f64,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CaseArgs {
    #[arg(long)]
    pub case: CaseArg,
    /// Seed (base seed for Monte-Carlo trials).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Override the case order.
    #[arg(long)]
    pub order: Option<usize>,
    #[command(flatten)]
    pub grid: GridArg,
    #[arg(long, default_value_t = 5.0)]
    pub prominence: f64,
    /// Carrier source for c-cases.
    #[arg(long, value_enum, default_value_t = CarrierArg::Synthetic)]
    pub carrier: CarrierArg,
    /// Carrier WAV for `--carrier file`.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Tone amplitude for c-cases.
    #[arg(long)]
    pub amp: Option<f64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[command(flatten)]
    pub case: CaseArgs,
}

#[derive(Debug, Args)]
pub struct MonteCarloArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
    pub trials: u32,
}
