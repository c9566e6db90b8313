//! Command line front end for `darboux-core`: argument handling, field
//! files, JSON/text reports and CSV trajectory dumps.
//!
//! [`run`] is the whole program minus process exit, so it can be driven
//! from tests.

pub mod cli;
pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;

use clap::Parser;

pub use commands::{CommandOutput, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION_FAILED};
pub use config::{CliError, RunConfig};

/// What the process should print and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match cli::Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Outcome {
                code: e.exit_code(),
                stdout,
                stderr,
            };
        }
    };
    match RunConfig::from_command(cli.command) {
        Ok(cfg) => execute(&cfg),
        Err(e) => usage_error(&e),
    }
}

fn usage_error(e: &CliError) -> Outcome {
    Outcome {
        code: EXIT_USAGE,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

/// Runs a validated configuration, writing the report to `--output` when
/// one was given.
pub fn execute(cfg: &RunConfig) -> Outcome {
    let out = match commands::execute(cfg) {
        Ok(o) => o,
        Err(e) => return usage_error(&e),
    };
    let mut stderr: String = out.diagnostics.iter().map(|d| format!("{d}\n")).collect();
    let body = out.body(cfg.format);
    let stdout = match &cfg.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                stderr.push_str(&format!("error: cannot write {}: {e}\n", path.display()));
                return Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr,
                };
            }
            String::new()
        }
        None => body.to_string(),
    };
    Outcome {
        code: out.code,
        stdout,
        stderr,
    }
}
