use darboux_core::field::parse_poly;
use serde::Serialize;

use super::{CommandOutput, EXIT_OK};
use crate::config::{CliError, RunConfig};
use crate::report::Report;

#[derive(Debug, Serialize)]
struct Canonical {
    canonical: String,
}

#[derive(Debug, Serialize)]
struct ParseEvidence {
    kind: &'static str,
    degree: u32,
    parameters: Vec<&'static str>,
}

pub(super) fn run(cfg: &RunConfig, expr: Option<&str>) -> Result<CommandOutput, CliError> {
    let (canonical, evidence) = match expr {
        Some(text) => {
            let p = parse_poly(text).map_err(|source| CliError::Parse {
                context: format!("polynomial `{text}`"),
                source,
            })?;
            let mut params = Vec::new();
            if p.uses_a() {
                params.push("a");
            }
            if p.uses_b() {
                params.push("b");
            }
            let ev = ParseEvidence {
                kind: "polynomial",
                degree: p.total_degree(),
                parameters: params,
            };
            (p.to_string(), ev)
        }
        None => {
            let field = cfg.resolve()?.field;
            let ev = ParseEvidence {
                kind: "field",
                degree: field.degree(),
                parameters: field.parameters().iter().map(|p| p.name()).collect(),
            };
            (field.to_string(), ev)
        }
    };
    let text = format!("{canonical}\n");
    let report = Report::new(cfg.echo(), Canonical { canonical }, evidence);
    Ok(CommandOutput {
        code: EXIT_OK,
        json: report.to_json(),
        text,
        diagnostics: Vec::new(),
    })
}
