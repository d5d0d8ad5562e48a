//! `uncrel` — batch harness for uncertainty-bound verification.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 I/O error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::CommandOutcome;

#[derive(Parser)]
#[command(
    name = "uncrel",
    version,
    about = "Verify uncertainty-relation bounds on random ensembles, the thermal oscillator, and the qubit equality family"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every bound on seeded random (ρ, A, B) instances
    VerifyRandom(VerifyRandomArgs),
    /// Truncated-oscillator convergence experiment against closed forms
    Oscillator(OscillatorArgs),
    /// Equality family A = σ_x, B = σ_y, ρ = diag(p, 1-p)
    QubitFamily(QubitFamilyArgs),
    /// Summarize a JSON report written by the other commands
    ShowReport(ShowReportArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Report format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Report path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyRandomArgs {
    /// Hilbert-space dimension
    #[arg(long, default_value_t = 4)]
    dim: usize,
    /// State rank (defaults to dim)
    #[arg(long)]
    rank: Option<usize>,
    /// Number of random instances
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Base seed; trial streams derive from it
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Margin tolerance for pass/fail and equality flags
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Center the observables before evaluating
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    centered: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OscillatorArgs {
    /// Inverse temperature
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    beta: f64,
    /// Truncation dimensions, ascending
    #[arg(long, value_delimiter = ',', default_value = "20,40,60")]
    fock_dims: Vec<usize>,
    /// Maximum accepted deviation from the closed forms at the final dimension
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct QubitFamilyArgs {
    /// Tolerance on the equality checks
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ShowReportArgs {
    /// JSON report to summarize
    report: PathBuf,
}

/// Command failures mapped to exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration: exit 2.
    Usage(String),
    /// Filesystem or parse failure: exit 3.
    Io(String),
    /// Computation failed mid-run: exit 1.
    Compute(String),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Io(_) => ExitCode::from(3),
            CliError::Compute(_) => ExitCode::from(1),
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(msg) | CliError::Io(msg) | CliError::Compute(msg) => msg,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.exit_code()
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::VerifyRandom(args) => {
            let rank = args.rank.unwrap_or(args.dim);
            if args.dim < 2 {
                return Err(CliError::Usage(format!(
                    "--dim must be at least 2, got {}",
                    args.dim
                )));
            }
            if rank == 0 || rank > args.dim {
                return Err(CliError::Usage(format!(
                    "--rank must be in [1, {}], got {rank}",
                    args.dim
                )));
            }
            if args.trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            check_tol(args.tol)?;
            let outcome = commands::verify_random(
                args.dim,
                rank,
                args.trials,
                args.seed,
                args.tol,
                args.centered,
            )?;
            emit(outcome, &args.output)
        }
        Command::Oscillator(args) => {
            if !args.beta.is_finite() || args.beta <= 0.0 {
                return Err(CliError::Usage(format!(
                    "--beta must be positive and finite, got {}",
                    args.beta
                )));
            }
            if args.fock_dims.is_empty() {
                return Err(CliError::Usage("--fock-dims must be nonempty".into()));
            }
            if args.fock_dims.iter().any(|&d| d < 4) {
                return Err(CliError::Usage(
                    "--fock-dims entries must be at least 4".into(),
                ));
            }
            if args.fock_dims.windows(2).any(|w| w[1] <= w[0]) {
                return Err(CliError::Usage("--fock-dims must be ascending".into()));
            }
            check_tol(args.tol)?;
            let outcome = commands::oscillator(args.beta, &args.fock_dims, args.tol)?;
            emit(outcome, &args.output)
        }
        Command::QubitFamily(args) => {
            check_tol(args.tol)?;
            let outcome = commands::qubit_family(args.tol)?;
            emit(outcome, &args.output)
        }
        Command::ShowReport(args) => commands::show_report(&args.report),
    }
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(CliError::Usage(format!(
            "--tol must be positive and finite, got {tol}"
        )));
    }
    Ok(())
}

fn emit(outcome: CommandOutcome, output: &OutputArgs) -> Result<bool, CliError> {
    let text = match output.format {
        OutputFormat::Json => outcome.document.to_json(),
        OutputFormat::Csv => outcome
            .document
            .to_csv()
            .map_err(|err| CliError::Io(format!("CSV encoding failed: {err}")))?,
    };
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|err| CliError::Io(format!("cannot write {}: {err}", path.display())))?,
        None => print_stdout(&text)?,
    }
    Ok(outcome.pass)
}

/// Prints to stdout, treating a closed pipe (e.g. `| head`) as success.
pub fn print_stdout(text: &str) -> Result<(), CliError> {
    use std::io::Write;
    match std::io::stdout().write_all(text.as_bytes()) {
        Ok(()) => Ok(()),
        Err(err) if err.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(err) => Err(CliError::Io(format!("cannot write to stdout: {err}"))),
    }
}
