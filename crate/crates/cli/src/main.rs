//! `amvortex`: generate the polynomial sequence, certify generating pairs,
//! search for balanced configurations and evaluate ring potentials.
//!
//! Exit codes: 0 success, 2 a certificate failed, 3 invalid input,
//! 4 the two generation routes disagree.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error("routes disagree: {0}")]
    Inconsistent(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Certificate(_) => 2,
            CliError::Input(_) | CliError::Io(_) => 3,
            CliError::Inconsistent(_) => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Wronskian,
    Recurrence,
    Both,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Root-finding tolerance on the scaled residual.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Parser)]
#[command(
    name = "amvortex",
    version,
    about = "Adler-Moser polynomials and vortex-ring configurations"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate the sequence up to index N and the pair (P_N, P_{N-1}).
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = RouteArg::Wronskian)]
        route: RouteArg,
        /// Largest accepted N.
        #[arg(long, default_value_t = amvortex::genpoly::DEFAULT_MAX_INDEX)]
        cap: usize,
    },
    /// Certify a JSON pair file with fields "P" and "Q".
    Certify {
        pair: PathBuf,
        #[arg(long, default_value = "pq-roots")]
        preset: String,
    },
    /// Seeded multi-start Newton search.
    Search {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        tries: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "pq-roots")]
        preset: String,
    },
    /// Ring potential on a grid: --a A1,A2 --x1 MIN,MAX,COUNT --x2 MIN,MAX,COUNT.
    Potential {
        #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "0.5,1.5,10", allow_hyphen_values = true)]
        x1: String,
        #[arg(long, default_value = "-0.5,0.5,10", allow_hyphen_values = true)]
        x2: String,
    },
    /// Reduced-problem residuals of the generated configuration for (m, n).
    Reduced {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "1e-3,1e-5,1e-8")]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 0.0)]
        c1: f64,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let common = &cli.common;
    if common.tol.is_nan() || common.tol <= 0.0 {
        return Err(CliError::Input("--tol must be positive".into()));
    }
    match cli.command {
        Command::Gen { n, route, cap } => commands::gen(common, n, route, cap),
        Command::Certify { pair, preset } => commands::certify(common, &pair, &preset),
        Command::Search {
            m,
            n,
            tries,
            seed,
            preset,
        } => commands::search(common, m, n, tries, seed, &preset),
        Command::Potential { a, x1, x2 } => commands::potential(common, &a, &x1, &x2),
        Command::Reduced { m, n, eps, c1 } => commands::reduced(common, m, n, &eps, c1),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(3),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("amvortex: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
