//! Command-line front end. [`run_with`] executes a full invocation in-process
//! and returns the exit code: 0 on success, 1 when a requested verification
//! fails, 2 on bad input.

mod commands;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::lhs::{DEFAULT_BISECTION_TOL, DEFAULT_HIDDEN_LEVEL, DEFAULT_MEAS_LEVEL};
use crate::search::Parameterization;

pub use output::round_significant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cyclic-steer", version, about = "One-way and cyclic EPR steering of three-qubit family states")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// `builtin:<id>` (sc1, b1, b2, b3, w, ghz) or a state file path.
    #[arg(long, global = true)]
    pub state: Option<String>,
    /// Family mixing weight in [0, 1]. For `radius` and `scenario2`, values
    /// above 1 keep p = 1 and cap the radial search at this value instead.
    #[arg(long, global = true)]
    pub p: Option<f64>,
    #[arg(long, global = true, default_value_t = DEFAULT_MEAS_LEVEL)]
    pub meas_level: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_HIDDEN_LEVEL)]
    pub hidden_level: usize,
    /// Bisection tolerance on the radial parameter.
    #[arg(long, global = true, default_value_t = DEFAULT_BISECTION_TOL)]
    pub tol: f64,
    #[arg(long, global = true)]
    pub restarts: Option<usize>,
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Write the report (or the search log) here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// CSV of Bloch-vector endpoints for plotting.
    #[arg(long, global = true)]
    pub fig_data: Option<PathBuf>,
    /// Search log to resume; finished restarts are reused and new ones appended.
    #[arg(long, global = true)]
    pub resume: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Icosahedral steering inequality in both directions.
    Scenario1 {
        /// Exit 1 unless the state is one-way (A to B only).
        #[arg(long)]
        verify: bool,
    },
    /// Critical-radius brackets for ρ_AB and ρ_BA and the cyclic verdict.
    Scenario2 {
        /// Exit 1 when the verdict is refuted.
        #[arg(long)]
        certify: bool,
    },
    /// Critical-radius bracket of one reduced pair.
    Radius {
        #[arg(long, value_enum, default_value_t = Direction::Ab)]
        direction: Direction,
    },
    /// Multi-restart Nelder-Mead search.
    Search(SearchArgs),
    /// Negativities and the tripartite matrix-element criterion.
    Entanglement,
    /// Werner-family thresholds for entanglement and steering.
    Calibrate {
        /// Accepted for clarity; the Werner family is the only calibration set.
        #[arg(long)]
        werner: bool,
    },
    /// Summary of every builtin state.
    Table {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Also bracket the critical radius of each pair.
        #[arg(long)]
        radius: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Ab,
    Ba,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stage {
    Prefilter,
    Full,
    TwoStage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Penalty {
    Balanced,
    Asymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParamArg {
    Real7,
    Real8,
    Complex16,
}

impl From<ParamArg> for Parameterization {
    fn from(p: ParamArg) -> Self {
        match p {
            ParamArg::Real7 => Self::Real7,
            ParamArg::Real8 => Self::Real8,
            ParamArg::Complex16 => Self::Complex16,
        }
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub scenario: u8,
    /// Scenario-2 stage.
    #[arg(long, value_enum, default_value_t = Stage::TwoStage)]
    pub stage: Stage,
    /// Scenario-2 parameterization; scenario 1 always uses seven real coefficients.
    #[arg(long, value_enum, default_value_t = ParamArg::Real7)]
    pub parameterization: ParamArg,
    /// Scenario-2 penalty constants.
    #[arg(long, value_enum, default_value_t = Penalty::Balanced)]
    pub penalty: Penalty,
    /// Prefilter candidates polished in the two-stage mode.
    #[arg(long, default_value_t = 5)]
    pub top: usize,
    /// Iteration cap per restart.
    #[arg(long, default_value_t = 5000)]
    pub max_iterations: usize,
    /// Write the best coefficients as a family state file.
    #[arg(long)]
    pub best_state: Option<PathBuf>,
}

/// A failure mapped to an exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }

    pub fn verify(message: impl Into<String>) -> Self {
        Self { code: EXIT_VERIFY, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::LpFailure(_) => EXIT_VERIFY,
            _ => EXIT_INPUT,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e).into()
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_INPUT;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    match commands::execute(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
