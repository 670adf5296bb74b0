//! Command-line front end: loads instances, runs the evaluator, the Monte
//! Carlo cross-check, the optimizers, parameter sweeps, and time curves,
//! and writes manifests, CSV traces, and SVG charts alongside the results.

use std::fmt;
use std::path::{Path, PathBuf};

use oic_reliability::Error as CoreError;

pub mod args;
pub mod curve;
pub mod eval;
pub mod manifest;
pub mod mc_cmd;
pub mod seeds;
pub mod sets;
pub mod solve;
pub mod svg;
pub mod sweep;

pub const EXIT_OK: i32 = 0;
/// Unreadable or malformed inputs.
pub const EXIT_INPUT: i32 = 2;
/// Domain-invariant violations (enumeration guard, unrepairable instance).
pub const EXIT_INVARIANT: i32 = 3;
/// Numerical non-convergence.
pub const EXIT_NONCONVERGENCE: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    Core(CoreError),
    Io(PathBuf, std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(..) => EXIT_INPUT,
            CliError::Core(e) => match e {
                CoreError::Parse(_)
                | CoreError::InvalidInstance(_)
                | CoreError::InvalidConfig(_)
                | CoreError::ShapeMismatch(_)
                | CoreError::NegativeTime(_) => EXIT_INPUT,
                CoreError::ZeroInDivisor { .. }
                | CoreError::EnumerationTooLarge { .. }
                | CoreError::NonUniformReadiness(_)
                | CoreError::NonIdenticalWakeup(_)
                | CoreError::NoCandidate(_)
                | CoreError::Unrepairable(_) => EXIT_INVARIANT,
                CoreError::NonConvergence(_) => EXIT_NONCONVERGENCE,
            },
        }
    }
}

pub fn read_to_string(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

pub fn write_file(path: &Path, content: &str) -> CliResult<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
        }
    }
    std::fs::write(path, content).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

/// Runs one parsed command line to completion.
pub fn run(cli: &args::Cli) -> CliResult<()> {
    match &cli.command {
        args::Command::Eval(a) => eval::run(a),
        args::Command::Mc(a) => mc_cmd::run(a),
        args::Command::Solve(a) => solve::run(a),
        args::Command::Sweep(a) => sweep::run(a),
        args::Command::Curve(a) => curve::run(a),
    }
}
