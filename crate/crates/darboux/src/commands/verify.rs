use std::fmt::Write as _;

use darboux_core::field::parse_poly;
use darboux_core::search::{darboux_residual, ParameterCondition};
use serde::Serialize;

use super::{CommandOutput, EXIT_OK, EXIT_VERIFICATION_FAILED};
use crate::config::{CliError, RunConfig};
use crate::report::Report;

#[derive(Debug, Serialize)]
struct VerifyResult {
    f: String,
    cofactor: String,
    holds: bool,
    residual: String,
    /// Loci among `a=1`, `b=1`, `a=b` on which the residual vanishes.
    residual_vanishes_on: Vec<String>,
}

#[derive(Debug, Serialize)]
struct VerifyEvidence {
    field: String,
    symbolic: bool,
}

pub(super) fn run(cfg: &RunConfig, f_text: &str, k_text: &str) -> Result<CommandOutput, CliError> {
    let resolved = cfg.resolve()?;
    let parse = |what: &str, text: &str| {
        parse_poly(text).map_err(|source| CliError::Parse {
            context: format!("{what} `{text}`"),
            source,
        })
    };
    let f = parse("polynomial", f_text)?;
    let k = parse("cofactor", k_text)?;
    let (f, k) = (
        f.substitute_params(&resolved.a, &resolved.b),
        k.substitute_params(&resolved.a, &resolved.b),
    );
    let field = &resolved.field;
    let residual = darboux_residual(field, &f, &k);
    let holds = residual.is_zero();
    let vanishes: Vec<String> = if holds {
        Vec::new()
    } else {
        ParameterCondition::candidate_loci()
            .into_iter()
            .skip(1)
            .filter(|c| {
                c.substitution()
                    .is_some_and(|(a, b)| residual.substitute_params(&a, &b).is_zero())
            })
            .map(|c| c.to_string())
            .collect()
    };

    let mut diagnostics = Vec::new();
    let mut text = String::new();
    let _ = writeln!(text, "field: {field}");
    let _ = writeln!(text, "f = {f}; k = {k}");
    if holds {
        let _ = writeln!(text, "L_X f = k f holds exactly");
    } else {
        let _ = writeln!(text, "L_X f - k f = {residual}");
        diagnostics.push(format!("verification failed: residual L_X f - k f = {residual}"));
        if !vanishes.is_empty() {
            let _ = writeln!(text, "the residual vanishes on {}", vanishes.join(", "));
            diagnostics.push(format!("the residual vanishes on {}", vanishes.join(", ")));
        }
    }
    let result = VerifyResult {
        f: f.to_string(),
        cofactor: k.to_string(),
        holds,
        residual: residual.to_string(),
        residual_vanishes_on: vanishes,
    };
    let evidence = VerifyEvidence {
        field: field.to_string(),
        symbolic: !field.is_parameter_free() || !f.is_parameter_free() || !k.is_parameter_free(),
    };
    let report = Report::new(cfg.echo(), result, evidence);
    Ok(CommandOutput {
        code: if holds { EXIT_OK } else { EXIT_VERIFICATION_FAILED },
        json: report.to_json(),
        text,
        diagnostics,
    })
}
