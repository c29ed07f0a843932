//! Command-line front end for `wcheb-core`.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod specfile;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command};
use error::{usage, CliError, EXIT_OK, EXIT_USAGE};
use output::Report;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "CHEB_THREADS";

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Io(std::io::Error::other(e)))
}

fn echo(cli: &Cli) -> Result<Value, CliError> {
    let args = match &cli.command {
        Command::Solve(a) => serde_json::to_value(a)?,
        Command::Norms(a) => serde_json::to_value(a)?,
        Command::ErdosLax(a) => serde_json::to_value(a)?,
        Command::Zeros(a) => serde_json::to_value(a)?,
        Command::Lemniscate(a) => serde_json::to_value(a)?,
        Command::Asymptotics(a) => serde_json::to_value(a)?,
        Command::Oracle(a) => serde_json::to_value(a)?,
    };
    Ok(json!({"format": cli.global.format, "args": args}))
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Solve(a) => commands::solve(a),
        Command::Norms(a) => commands::norms(a),
        Command::ErdosLax(a) => commands::erdos_lax(a),
        Command::Zeros(a) => commands::zeros(a),
        Command::Lemniscate(a) => commands::lemniscate(a),
        Command::Asymptotics(a) => commands::asymptotics(a),
        Command::Oracle(a) => commands::oracle(a),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let pool = thread_pool()?;
    let report = pool.install(|| dispatch(cli))?;
    let bytes = output::render(cli.global.format, cli.command.name(), &echo(cli)?, &report)?;
    match &cli.global.output {
        Some(path) => output::write_atomic(path, &bytes),
        None => Ok(out.write_all(&bytes)?),
    }
}

/// Parses `argv`, runs the subcommand and returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
