//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the process exit code:
//! 0 when every check passes, 1 when a mathematical check fails,
//! 2 on usage or parse errors, 3 when a budget is exceeded.

mod args;
mod commands;
mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use args::{Cli, Command, CurveCmd, Format, VerifyCmd};
pub use report::{CliError, Report, Status};

/// Runs the CLI on `argv` and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs an already parsed command, writing its output.
pub fn execute(cli: &Cli) -> Result<i32, CliError> {
    let report = commands::dispatch(cli)?;
    let rendered = report.render(cli.format, cli)?;
    match &cli.out {
        Some(path) => std::fs::write(path, rendered.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(rendered.as_bytes());
        }
    }
    Ok(report.status.exit_code())
}

/// Runs `argv` and returns `(exit code, rendered output)` without touching
/// stdout; `--out` is ignored.
pub fn run_to_string<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => return (if e.use_stderr() { 2 } else { 0 }, e.to_string()),
    };
    match commands::dispatch(&cli).and_then(|r| Ok((r.status.exit_code(), r.render(cli.format, &cli)?))) {
        Ok(pair) => pair,
        Err(e) => (e.exit_code(), format!("error: {e}\n")),
    }
}
