//! Command-line front end for `qseries`.
//!
//! ```text
//! qseries expand   --a 2 --b 1 --alpha 1 --order 4          # JSON terms
//! qseries compare  --a 1 --b 0 --x 0.1,0.05 --order 6,10    # CSV vs direct sum
//! qseries sweep    --a 2 --q-grid 0.9:0.99:10 --order 2,4
//! qseries selftest --filter specfun
//! ```
//!
//! Exit status is 0 on success, 1 when a numerical check fails and 2 for
//! invalid arguments.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::Cli;
pub use commands::{execute, Outcome};
pub use config::RunConfig;
pub use error::{CliError, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE};

/// Parses `args` (program name first), runs the command and returns the exit
/// status.  Output goes to `--out` when given, otherwise to `stdout`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    match RunConfig::from_command(cli.command).and_then(|c| emit(&c, stdout, stderr)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let outcome = execute(config)?;
    for w in &outcome.warnings {
        writeln!(stderr, "warning: {w}")?;
    }
    match &config.out {
        Some(path) => std::fs::write(path, &outcome.body)?,
        None => stdout.write_all(outcome.body.as_bytes())?,
    }
    Ok(if outcome.failed { EXIT_NUMERICAL } else { EXIT_OK })
}

#[cfg(test)]
mod tests;
