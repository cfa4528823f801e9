//! Command-line front end for `swapnet-core`: instance files, generators,
//! equilibrium checks, dynamics runs, analysis reports and CSV sweeps.
//!
//! Exit codes: 0 success or equilibrium, 1 negative verdict, 2 invalid input.

pub mod analyze;
pub mod check;
pub mod cli;
pub mod error;
pub mod generate;
pub mod instance_file;
pub mod simulate;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;

pub use cli::{Cli, Command, Family};
pub use error::{CliError, CliResult};
pub use instance_file::{InstanceFile, Metadata};
pub use sweep::ExperimentRow;

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// so readers never see a half-written file.
pub fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult<u8> {
    match &cli.command {
        Command::Generate(a) => {
            let file = generate::run(a)?;
            let text = file.to_json();
            match &a.out {
                Some(path) => write_file(path, text.as_bytes())?,
                None => out
                    .write_all(text.as_bytes())
                    .map_err(|e| CliError::io("<stdout>", e))?,
            }
            Ok(0)
        }
        Command::Check(a) => check::run(a, out),
        Command::Simulate(a) => simulate::run(a, out),
        Command::Analyze(a) => analyze::run(a, out),
        Command::Sweep(a) => sweep::run(a, out),
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
