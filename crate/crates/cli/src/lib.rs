//! The `gct` command-line tool: spectra, transforms, continuation limits and
//! self-check suites for the cosine-λ transform.

use std::fmt;

pub mod args;
pub mod checks;
pub mod commands;
pub mod expr;
pub mod parallel;
pub mod report;

use args::{Cli, Command};
use report::Report;

/// Bad input from the user. Maps to exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Invalid arguments reported by the core are usage errors; anything else is
/// a numerical failure.
pub fn core_error(e: gct_core::Error) -> anyhow::Error {
    use gct_core::Error::*;
    match e {
        Domain(_) | InvalidSpec(_) | InvalidConfig(_) | SpecMismatch => UsageError(e.to_string()).into(),
        other => anyhow::Error::new(other),
    }
}

/// Exit status for an error returned by [`run`].
pub fn exit_code(e: &anyhow::Error) -> i32 {
    if e.downcast_ref::<UsageError>().is_some() {
        2
    } else {
        1
    }
}

pub fn run(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Transform(a) => commands::transform(a),
        Command::Limit(a) => commands::limit(a),
        Command::Check(a) => checks::check(a),
    }
}
