//! `apo`: synthesize amplitude-phase operators and check them.
//!
//! Exit codes: 0 success, 1 verification failure, 2 unsupported
//! parameters, 3 invalid arguments or input files.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::Failure;

#[derive(Parser, Debug)]
#[command(name = "apo", version, about = "Amplitude-phase operator synthesis and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an operator from a closed-form family and write it as JSON.
    Solve(SolveArgs),
    /// Apply an operator to a trigonometric polynomial.
    Apply(ApplyArgs),
    /// Random extraction trials plus the power-sum mask check.
    Verify(VerifyArgs),
    /// Generating polynomial of delta moment data with structure flags.
    Gpoly(MomentArgs),
    /// Nodes and amplitudes recovered from delta moment data.
    Roots(RootsArgs),
    /// Power sums of an operator against its inferred mask.
    Spectrum(SpectrumArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    MuEqualsN,
    MuOne,
    MuTwo,
    General,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub mu: usize,
    /// Highest degree the operator must handle.
    #[arg(long, conflicts_with = "s", required_unless_present = "s")]
    pub degree: Option<usize>,
    /// Family size parameter (`n = s·mu − 1`).
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub alpha: usize,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ApplyArgs {
    #[arg(long)]
    pub apo: PathBuf,
    /// Polynomial JSON: `{"n":..,"a0":..,"coeffs":[[a,b],..]}`.
    #[arg(long)]
    pub poly: PathBuf,
    /// Number of uniform sample points printed.
    #[arg(long, default_value_t = 8)]
    pub points: usize,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub apo: PathBuf,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Grid points per extraction.
    #[arg(long, default_value_t = 1024)]
    pub grid: usize,
}

#[derive(Args, Debug)]
pub struct MomentArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub mu: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: f64,
    /// Print the structure report as JSON instead of key = value lines.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct RootsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub mu: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: f64,
    /// Also write the node set as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub apo: PathBuf,
    /// Highest order printed; defaults to four periods of the mask.
    #[arg(long)]
    pub beta_max: Option<usize>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => commands::solve(a),
        Command::Apply(a) => commands::apply(a),
        Command::Verify(a) => commands::verify(a),
        Command::Gpoly(a) => commands::gpoly(a),
        Command::Roots(a) => commands::roots(a),
        Command::Spectrum(a) => commands::spectrum(a),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Unsupported(_) => 2,
            Failure::Invalid(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Unsupported(m) | Failure::Invalid(m) => m,
        }
    }
}
