mod commands;
mod dataset;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use trivar::{DerivativeScheme, SynthMode};

use crate::dataset::Columns;

/// Time-varying ellipse analysis of three-component records.
#[derive(Debug, Parser)]
#[command(name = "trivar", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Per-sample ellipse parameters, moments and bandwidth terms.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Write a synthetic single-rate record and its parameter paths.
    Synth(SynthArgs),
    /// Multitaper estimate of the joint spectrum.
    Spectrum {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        config: ConfigArgs,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// CSV file with a header row.
    pub input: PathBuf,
    /// Sample interval; overrides the spacing of the time column.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Source bearing in degrees; rotates (x, y) so the first channel points
    /// along it.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub bearing: f64,
    /// Time column and three channels (`t,x,y,z`), or three channels.
    #[arg(long, default_value = "t,x,y,z")]
    pub columns: String,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Derivative scheme: central4 or spectral.
    #[arg(long, default_value = "central4", value_parser = parse_scheme)]
    pub scheme: DerivativeScheme,
    /// Fraction of the record flagged at each end.
    #[arg(long, default_value_t = 0.05)]
    pub trim: f64,
    /// Plane-normal threshold relative to the squared amplitude.
    #[arg(long, default_value_t = 1e-6)]
    pub eps_lin: f64,
    /// Power threshold relative to the peak power.
    #[arg(long, default_value_t = 1e-8)]
    pub eps_pow: f64,
    /// Multitaper time-bandwidth product.
    #[arg(long, default_value_t = 2.0)]
    pub taper_p: f64,
    /// Number of tapers.
    #[arg(long, default_value_t = 3)]
    pub tapers: usize,
    /// Zero-padding factor of the spectrum.
    #[arg(long, default_value_t = 8)]
    pub pad: usize,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// amplitude, internal_precession, deformation, nutation, azimuth or
    /// fixed_geometry.
    #[arg(long, value_parser = parse_mode)]
    pub mode: SynthMode,
    /// Number of samples.
    #[arg(long, default_value_t = 800)]
    pub n: usize,
    /// Joint instantaneous frequency, radians per unit time.
    #[arg(long, default_value_t = std::f64::consts::PI * 1e-2)]
    pub omega_bar: f64,
    /// Joint instantaneous bandwidth, radians per unit time.
    #[arg(long, default_value_t = 2.5 * std::f64::consts::PI * 1e-4)]
    pub upsilon: f64,
    #[arg(long, default_value_t = 1.0)]
    pub dt: f64,
    /// Adds Gaussian noise at this signal-to-noise ratio.
    #[arg(long, allow_negative_numbers = true)]
    pub snr_db: Option<f64>,
    /// Noise seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output CSV; parameter paths go next to it as `<stem>.truth.csv`.
    #[arg(long, default_value = "synth.csv")]
    pub out: PathBuf,
}

fn parse_scheme(s: &str) -> Result<DerivativeScheme, String> {
    s.parse().map_err(|e: trivar::Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<SynthMode, String> {
    s.parse().map_err(|e: trivar::Error| e.to_string())
}

fn run(cli: Cli) -> error::Result<()> {
    match cli.command {
        Command::Analyze { input, config } => {
            let columns = Columns::parse(&input.columns)?;
            commands::analyze(&input, &columns, &config)
        }
        Command::Synth(args) => commands::synth(&args),
        Command::Spectrum { input, config } => {
            let columns = Columns::parse(&input.columns)?;
            commands::spectrum(&input, &columns, &config)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
