use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod dynamics;
mod grid;
mod spectrum;
mod verify;

/// Exact deformation-quantization checks, spectra and time series.
#[derive(Parser, Debug)]
#[command(name = "cliffstar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Print an eigenvalue table as CSV.
    Spectrum(SpectrumArgs),
    /// Print a sampled time series as CSV.
    Dynamics(DynamicsArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Comma-separated suites: cliffordization, wick, oscillator, landau,
    /// susy, dirac, fw or all.
    #[arg(long, default_value = "all")]
    suite: String,
    /// `exact` or `float`.
    #[arg(long, default_value = "exact")]
    backend: String,
    /// Numeric ħ for float checks and residual magnitudes.
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    #[arg(long, default_value_t = 20240601)]
    seed: u64,
    /// Dirac representations, e.g. d4,d5,d6.
    #[arg(long, default_value = "d6,d5,d4")]
    rep: String,
    /// Highest level summed in the Witten index.
    #[arg(long, default_value_t = 8)]
    witten_truncation: usize,
    /// Highest power of 1/c kept in the Foldy-Wouthuysen expansion.
    #[arg(long, default_value_t = 4)]
    fw_order: i32,
    /// Report directory.
    #[arg(long, env = "CLIFFSTAR_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,
    /// Report formats to write.
    #[arg(long, value_delimiter = ',', default_value = "json")]
    format: Vec<Format>,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[command(subcommand)]
    system: spectrum::System,
    /// Numeric ħ for the value columns.
    #[arg(long, global = true, default_value_t = 1.0)]
    hbar: f64,
    /// Write the table here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DynamicsArgs {
    #[command(subcommand)]
    kind: dynamics::Kind,
    #[arg(long, global = true, default_value_t = 1.0)]
    hbar: f64,
    /// Uniform grid `start:stop:count`.
    #[arg(long, global = true, conflicts_with = "times")]
    grid: Option<String>,
    /// Explicit comma-separated sample times.
    #[arg(long, global = true)]
    times: Option<String>,
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

/// Failure of a command: a usage or configuration problem (exit 2), or
/// checks that ran and failed (exit 1).
#[derive(Debug)]
enum Failure {
    Usage(String),
    Checks(String),
}

macro_rules! usage_from {
    ($($t:ty),*) => {
        $(impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Usage(e.to_string())
            }
        })*
    };
}

usage_from!(cliffstar::Error, std::io::Error, csv::Error);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify::run(a),
        Command::Spectrum(a) => spectrum::run(a),
        Command::Dynamics(a) => dynamics::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// CSV destination: a file or stdout.
fn csv_writer(path: Option<&PathBuf>) -> Result<csv::Writer<Box<dyn std::io::Write>>, Failure> {
    let sink: Box<dyn std::io::Write> = match path {
        Some(p) => Box::new(std::fs::File::create(p).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?),
        None => Box::new(std::io::stdout().lock()),
    };
    Ok(csv::Writer::from_writer(sink))
}
