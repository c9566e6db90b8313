use std::fmt::Write as _;

use darboux_core::search::{find_darboux, parameter_sweep_from, special_loci_points, ParameterCondition};
use darboux_core::verify_darboux;
use rayon::prelude::*;
use serde::Serialize;

use super::{CommandOutput, EXIT_OK};
use crate::config::{grid_points, CliError, GridSpec, RunConfig};
use crate::report::{table, Report};

#[derive(Debug, Serialize)]
struct SweepRowOut {
    condition: String,
    f: String,
    cofactor: Option<String>,
    /// Exact identity on the symbolic locus, re-checked at emission.
    verified: bool,
    points: Vec<String>,
    first_integral_at: Vec<String>,
}

#[derive(Debug, Serialize)]
struct SweepEvidence {
    grid_points: usize,
    special_loci: Vec<String>,
    unclassified_rows: usize,
}

pub(super) fn run(cfg: &RunConfig, degree: u32, grid: &GridSpec) -> Result<CommandOutput, CliError> {
    let resolved = cfg.resolve()?;
    let field = &resolved.symbolic;
    let points = grid_points(grid);
    let runs = points
        .par_iter()
        .map(|p| find_darboux(field, degree, Some(p)).map(|r| (p.clone(), r)))
        .collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<SweepRowOut> = parameter_sweep_from(field, &runs)
        .into_iter()
        .map(|r| {
            let verified = match (&r.cofactor, r.condition.apply(field)) {
                (Some(k), Some(on)) => verify_darboux(&on, &r.f, k),
                _ => false,
            };
            SweepRowOut {
                condition: r.condition.to_string(),
                f: r.f.to_string(),
                cofactor: r.cofactor.as_ref().map(ToString::to_string),
                verified,
                points: r.points.iter().map(ToString::to_string).collect(),
                first_integral_at: r.first_integral_at.iter().map(ToString::to_string).collect(),
            }
        })
        .collect();
    let unclassified = rows
        .iter()
        .filter(|r| r.condition == ParameterCondition::Unclassified.to_string())
        .count();

    let mut diagnostics = Vec::new();
    if unclassified > 0 {
        diagnostics.push(format!(
            "note: {unclassified} generator(s) did not fit any of the loci none, a=1, b=1, a=b"
        ));
    }
    let mut text = String::new();
    let _ = writeln!(text, "field: {}", field);
    let _ = writeln!(text, "degree bound: {degree}; {} grid points (special loci included)", points.len());
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.condition.clone(),
                r.f.clone(),
                r.cofactor.clone().unwrap_or_else(|| "-".into()),
                if r.verified { "verified".into() } else { "unverified".into() },
                if r.first_integral_at.is_empty() {
                    String::new()
                } else {
                    format!("first integral at {}", r.first_integral_at.join("; "))
                },
            ]
        })
        .collect();
    text.push_str(&table(&["condition", "f", "cofactor", "status", "notes"], &body));

    let evidence = SweepEvidence {
        grid_points: points.len(),
        special_loci: special_loci_points().iter().map(ToString::to_string).collect(),
        unclassified_rows: unclassified,
    };
    let report = Report::new(cfg.echo(), rows, evidence);
    Ok(CommandOutput {
        code: EXIT_OK,
        json: report.to_json(),
        text,
        diagnostics,
    })
}
