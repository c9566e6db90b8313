//! One module per subcommand. Each produces a [`CommandOutput`]; the
//! caller decides where the report goes.

mod dynamics;
mod find;
mod parse;
mod sweep;
mod verify;

use darboux_core::symmetry::is_equivariant;
use darboux_core::{d2_group, Field, ParamPoly, Poly};

use crate::config::{CliError, Format, RunConfig, Task};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    /// The JSON document.
    pub json: String,
    /// The same content as a human-readable summary.
    pub text: String,
    /// Warnings and failure details for standard error.
    pub diagnostics: Vec<String>,
}

impl CommandOutput {
    pub fn body(&self, format: Format) -> &str {
        match format {
            Format::Json => &self.json,
            Format::Text => &self.text,
        }
    }
}

pub fn execute(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    match &cfg.task {
        Task::Find { degree } => find::run(cfg, *degree),
        Task::Sweep { degree, grid } => sweep::run(cfg, *degree, grid),
        Task::Verify { f, k } => verify::run(cfg, f, k),
        Task::Dynamics(settings) => dynamics::run(cfg, settings),
        Task::Parse { expr } => parse::run(cfg, expr.as_deref()),
    }
}

/// Checks D2-equivariance, warning when it fails: without it the
/// reduction to constant cofactors is not justified and the search is
/// only a search for constant-cofactor Darboux polynomials. The result is
/// reported when `--check-equivariance` was given.
fn equivariance(cfg: &RunConfig, field: &Field, diagnostics: &mut Vec<String>) -> Option<bool> {
    let eq = is_equivariant(field, &d2_group());
    if !eq {
        diagnostics.push(
            "warning: the field is not D2-equivariant; only Darboux polynomials with constant cofactor are searched"
                .into(),
        );
    }
    cfg.check_equivariance.then_some(eq)
}

/// Value of a constant cofactor at a rational parameter point.
fn cofactor_value(k: &Poly, a: &darboux_core::Rat, b: &darboux_core::Rat) -> Option<darboux_core::Rat> {
    k.is_constant().then(|| k.constant_term()).map(|c: ParamPoly| c.eval(a, b))
}
