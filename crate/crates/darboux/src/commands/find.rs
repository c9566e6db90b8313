use std::fmt::Write as _;

use darboux_core::search::{
    candidate_cofactors, find_darboux, reduce_to_generators, Derivation, ParameterCondition,
};
use darboux_core::verify_darboux;
use serde::Serialize;

use super::{equivariance, CommandOutput, EXIT_OK, EXIT_VERIFICATION_FAILED};
use crate::config::{CliError, RunConfig};
use crate::report::{table, Report};

#[derive(Debug, Serialize)]
struct FindRow {
    f: String,
    cofactor: String,
    degree: u32,
    condition: String,
    generator: bool,
    first_integral: bool,
    /// Re-checked exactly while the report was assembled.
    verified: bool,
}

#[derive(Debug, Serialize)]
struct DerivedRow {
    f: String,
    cofactor: String,
    derivation: String,
}

#[derive(Debug, Serialize)]
struct FindEvidence {
    /// Possible constant cofactors up to the bound, when the linear part
    /// is diagonal.
    #[serde(skip_serializing_if = "Option::is_none")]
    candidate_cofactors: Option<Vec<String>>,
    generators: Vec<String>,
    derived: Vec<DerivedRow>,
    closure_note: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    d2_equivariant: Option<bool>,
}

pub(super) fn run(cfg: &RunConfig, degree: u32) -> Result<CommandOutput, CliError> {
    let resolved = cfg.resolve()?;
    let mut diagnostics = Vec::new();
    let eq = equivariance(cfg, &resolved.field, &mut diagnostics);

    // With both parameters rational, search at that point so that the
    // results carry it as their condition.
    let (searched, results) = match &resolved.point {
        Some(p) if !resolved.symbolic.is_parameter_free() => {
            (resolved.symbolic.specialize_at(p), find_darboux(&resolved.symbolic, degree, Some(p))?)
        }
        _ => {
            let field = resolved.numeric_field()?.clone();
            let r = find_darboux(&field, degree, None)?;
            (field, r)
        }
    };

    let gens = reduce_to_generators(&results, &searched);
    let rows: Vec<FindRow> = results
        .iter()
        .map(|r| FindRow {
            f: r.f.to_string(),
            cofactor: r.cofactor.to_string(),
            degree: r.degree,
            condition: r.condition.to_string(),
            generator: r.generator,
            first_integral: r.is_first_integral(),
            verified: verify_darboux(&searched, &r.f, &r.cofactor),
        })
        .collect();
    let all_verified = rows.iter().all(|r| r.verified);
    let evidence = FindEvidence {
        candidate_cofactors: candidate_cofactors(&searched, degree)
            .ok()
            .map(|s| s.iter().map(ToString::to_string).collect()),
        generators: gens.generators.iter().map(|g| g.f.to_string()).collect(),
        derived: gens
            .derived
            .iter()
            .map(|d| DerivedRow {
                f: d.result.f.to_string(),
                cofactor: d.result.cofactor.to_string(),
                derivation: match &d.derivation {
                    Derivation::Product(idx) => format!(
                        "product of generators {}",
                        idx.iter().map(|i| format!("#{i}")).collect::<Vec<_>>().join(" * ")
                    ),
                    Derivation::Combination => "linear combination of products of generators".into(),
                },
            })
            .collect(),
        closure_note: gens.closure_note.clone(),
        d2_equivariant: eq,
    };

    let mut text = String::new();
    let _ = writeln!(text, "field: {}", searched);
    let where_ = results
        .first()
        .map(|r| r.condition.clone())
        .unwrap_or_else(|| match &resolved.point {
            Some(p) => ParameterCondition::At(p.clone()),
            None => ParameterCondition::Unconditional,
        });
    let _ = writeln!(text, "degree bound: {degree}; parameters: {where_}");
    if rows.is_empty() {
        let _ = writeln!(text, "no Darboux polynomials with constant cofactor up to degree {degree}");
    } else {
        let body: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                let mut flags = Vec::new();
                if r.generator {
                    flags.push("generator");
                }
                if r.first_integral {
                    flags.push("first integral");
                }
                if !r.verified {
                    flags.push("NOT VERIFIED");
                }
                vec![r.f.clone(), r.cofactor.clone(), r.degree.to_string(), flags.join(", ")]
            })
            .collect();
        text.push_str(&table(&["f", "cofactor", "degree", "notes"], &body));
        let _ = writeln!(text, "{}", gens.closure_note);
    }
    if let Some(eq) = eq {
        let _ = writeln!(text, "D2-equivariant: {eq}");
    }

    if !all_verified {
        diagnostics.push("error: a reported result failed exact re-verification".into());
    }
    let report = Report::new(cfg.echo(), rows, evidence);
    Ok(CommandOutput {
        code: if all_verified { EXIT_OK } else { EXIT_VERIFICATION_FAILED },
        json: report.to_json(),
        text,
        diagnostics,
    })
}
