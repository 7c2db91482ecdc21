//! The `cowpea` command-line tool.
//!
//! [`run`] takes the argument list and output streams so it can be driven
//! in-process by tests; `main` only forwards the process arguments and exit
//! code.
//!
//! Exit codes: 0 success, 1 golden mismatch, 2 bad input (unreadable or
//! malformed profile, invalid arguments), 3 resource guard (instance too
//! large for exact computation, too many seats, no convergence), 4 unknown
//! method or probe name.

mod commands;
pub mod golden;
mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cowpea_core::refmethods::DEFAULT_BUDGET;
use cowpea_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_UNKNOWN_NAME: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "cowpea", version, about = "Exact COWPEA weights, the COWPEA Lottery and reference approval methods")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

/// Options shared by every command.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Number of seats to fill.
    #[arg(long, global = true)]
    pub seats: Option<usize>,
    /// Lottery seed.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Number of lottery elections; more than one reports inclusion frequencies.
    #[arg(long, global = true, default_value_t = 1)]
    pub trials: u64,
    /// Convergence tolerance (var-Phragmén default 1e-10, Optimised PAV KKT default 1e-6).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    /// Cap on committee patterns scored per election.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Multiply every ballot weight by this positive rational.
    #[arg(long, global = true)]
    pub scale: Option<String>,
    /// Read a graded profile through the Kotze-Pereira transformation.
    #[arg(long, global = true)]
    pub kp: bool,
}

impl RunConfig {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BallotKind {
    Full,
    Empty,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact COWPEA weights.
    Weights { profile: PathBuf },
    /// Run the COWPEA Lottery.
    Lottery { profile: PathBuf },
    /// Exact distribution of COWPEA Lottery committees.
    ExactLottery { profile: PathBuf },
    /// Run a method: pav, maxphragmen, varphragmen, ebert, monroe, cc, optpav, cowpea, cowpea-lottery.
    Method { name: String, profile: PathBuf },
    /// Run a criterion probe: monotonicity, iib, iuac, iia, consistency, clone, pareto.
    Criteria {
        probe: String,
        method: String,
        profile: PathBuf,
        #[command(flatten)]
        probe_args: ProbeArgs,
    },
    /// Mean misrepresentation of lottery committees as the seat count grows.
    Pril {
        profile: PathBuf,
        /// Comma-separated seat counts.
        #[arg(long, value_delimiter = ',', required = true)]
        seat_counts: Vec<usize>,
    },
    /// Check the built-in golden examples.
    VerifyPaper {
        /// Use this golden file instead of the built-in one.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ProbeArgs {
    /// Ballot line (0-based) that gains an approval (monotonicity).
    #[arg(long)]
    pub ballot: Option<usize>,
    /// Candidate name (monotonicity, iia, clone).
    #[arg(long)]
    pub candidate: Option<String>,
    /// Kind of added ballot (iib).
    #[arg(long, value_enum, default_value_t = BallotKind::Full)]
    pub kind: BallotKind,
    /// Weight of the added ballot (iib).
    #[arg(long, default_value = "1")]
    pub weight: String,
    /// Universally approved candidates (iuac) or clones (clone) to add.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Second profile (consistency).
    #[arg(long)]
    pub other: Option<PathBuf>,
}

/// A command failure: exit code plus message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Failure::new(EXIT_INPUT, message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code =
            if e.is_resource_guard() || matches!(e, Error::NoConvergence { .. }) { EXIT_GUARD } else { EXIT_INPUT };
        Failure::new(code, e.to_string())
    }
}

/// Runs the tool and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match commands::dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
