//! Command-line front end, configuration, report formats and seeded suites
//! for `stickel-core`.

pub mod commands;
pub mod config;
pub mod report;
pub mod seed;
pub mod suites;
pub mod sweep;

pub use commands::run;
pub use config::Params;
pub use report::{Format, Report};

/// Exit status for a completed run whose checks all passed.
pub const EXIT_PASS: i32 = 0;
/// Some check failed.
pub const EXIT_FAIL: i32 = 1;
/// Bad parameters or arguments.
pub const EXIT_USAGE: i32 = 2;
/// Internal invariant violated.
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<stickel_core::Error> for CliError {
    fn from(e: stickel_core::Error) -> Self {
        use stickel_core::Error as E;
        match e {
            E::Internal(_) | E::IntegralityFailure { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Exit status of a report.
pub fn exit_status(report: &Report) -> i32 {
    if report.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
