//! Command-line front end for `bpq-core`.

pub mod args;
pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use bpq_core::verifier::VerifyError;
use clap::error::ErrorKind;
use clap::Parser;
use thiserror::Error;

pub use args::Cli;
pub use commands::{run, Outcome};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} does not start a twin prime pair (p - 2 and p must both be prime, p >= 5)")]
    NotTwinPrime(u64),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Sequence(#[from] bpq_core::sequences::SeqError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Parses `args`, runs the command and writes its output. Returns the
/// process exit status: 0 on success, 1 on a usage error, 2 when a verdict
/// is FAILS.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = if informational {
                write!(stdout, "{}", e.render())
            } else {
                write!(stderr, "{}", e.render())
            };
            return if informational { 0 } else { 1 };
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 1;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.output).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => stdout
            .write_all(outcome.output.as_bytes())
            .map_err(|source| CliError::Io {
                path: "standard output".to_string(),
                source,
            }),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 1;
    }
    outcome.exit_code
}
