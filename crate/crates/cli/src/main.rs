//! `shintani`: decomposition data, ζ(0), Kronecker limit constants and
//! double-sine invariants of narrow ray classes, as JSON.

mod job;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use job::{resolve_precision, JobSpec, Overrides};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Library(#[from] shintani_core::Error),
}

#[derive(Debug, Parser)]
#[command(name = "shintani", version, about = "Partial zeta values and Shintani invariants of real quadratic ray classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Fundamental discriminant D > 1.
    #[arg(long = "D", global = true, allow_negative_numbers = true)]
    d: Option<i64>,

    /// Modulus f: `a,b[/den]` for (a + b√D)/den, or `a1,b1;a2,b2[/den]` for a ℤ-basis.
    #[arg(long, global = true, allow_hyphen_values = true)]
    modulus: Option<String>,

    /// Integral class representative, in the same encoding as --modulus.
    #[arg(long, global = true, allow_hyphen_values = true)]
    ideal: Option<String>,

    /// Significand bits for real results [default: 64, or SHINTANI_PRECISION_BITS].
    #[arg(long, global = true)]
    precision_bits: Option<u32>,

    /// Also run the independent checks and exit with status 2 if any fails.
    #[arg(long, global = true)]
    verify: bool,

    /// Norm bound for brute-force sums.
    #[arg(long, global = true)]
    norm_bound: Option<u64>,

    /// JSON job file; command-line flags take precedence over its fields.
    #[arg(long, global = true)]
    job: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The decomposition datum of the class.
    Datum,
    /// ζ(0, 𝔠) as an exact rational.
    Zeta0,
    /// Pole and constant term of (√D N𝔣)^s ζ(s, 𝔠) at s = 1.
    Rho,
    /// The invariants X, X₁ and X₂.
    Shintani,
    /// Runs a reproducibility suite: identities, datum, zeta0, laurent, shintani or all.
    Check { suite: String },
}

/// A JSON report and whether its checks all passed.
pub struct Outcome {
    pub report: Value,
    pub verified: bool,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    if let Command::Check { suite } = &cli.command {
        let prec = resolve_precision(cli.precision_bits)?;
        return report::check(suite, prec);
    }
    let spec = JobSpec::resolve(
        cli.job.as_deref(),
        Overrides {
            d: cli.d,
            modulus: cli.modulus,
            ideal: cli.ideal,
            precision_bits: cli.precision_bits,
            norm_bound: cli.norm_bound,
        },
    )?;
    match cli.command {
        Command::Datum => report::datum(&spec, cli.verify),
        Command::Zeta0 => report::zeta0(&spec, cli.verify),
        Command::Rho => report::rho(&spec, cli.verify),
        Command::Shintani => report::shintani(&spec, cli.verify),
        Command::Check { .. } => unreachable!("handled above"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{}", serde_json::to_string_pretty(&out.report).expect("JSON values serialize"));
            if out.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            let msg = json!({ "error": e.to_string() });
            eprintln!("{}", serde_json::to_string_pretty(&msg).expect("JSON values serialize"));
            ExitCode::from(1)
        }
    }
}
