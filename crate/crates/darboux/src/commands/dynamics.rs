use std::fmt::Write as _;

use darboux_core::algebra::{rat, rat_to_f64};
use darboux_core::dynamics::{
    d2_exact_equilibria, escape_evidence, exact_to_f64, find_fixed_points, format_exact,
    heteroclinic_probe, integrate, invariance_drift, lyapunov_check, plane_attraction_evidence,
    plane_is_invariant, restrict_to_plane, FixedPointConfig, FixedPointReport, NumericField, Plane,
    ProbeConfig, Stability, DEFAULT_ESCAPE_RADIUS,
};
use darboux_core::field::parse_poly;
use darboux_core::search::{catalog, find_darboux};
use darboux_core::{verify_darboux, Field, Poly, Rat};
use serde::Serialize;

use super::{cofactor_value, equivariance, CommandOutput, EXIT_OK};
use crate::config::{CliError, NumericSettings, ResolvedField, RunConfig};
use crate::report::{dump_trajectory, num, point3, table, Report};

/// Radius of the initial-condition shell for escape and attraction samples.
const SAMPLE_RADIUS: f64 = 2.0;
const SAMPLE_T_MAX: f64 = 20.0;
const SAMPLE_STEP: f64 = 1e-2;
/// Relative distance below which an orbit counts as attracted to a plane.
const PLANE_THRESHOLD: f64 = 1e-3;
const LYAPUNOV_SAMPLES: usize = 1000;
const LYAPUNOV_RADIUS: f64 = 1.0;
/// Match radius between numerical equilibria and closed forms.
const EXACT_MATCH: f64 = 1e-8;

#[derive(Debug, Serialize)]
struct FixedPointRow {
    location: [f64; 3],
    exact: Option<String>,
    /// Distance to the closed form, when there is one.
    exact_error: Option<f64>,
    /// `[re, im]` pairs, sorted.
    eigenvalues: Vec<[f64; 2]>,
    stability: String,
    stable_dim: usize,
    unstable_dim: usize,
    residual: f64,
}

#[derive(Debug, Serialize)]
struct FamilyRow {
    direction: [f64; 3],
    samples: Vec<[f64; 3]>,
    degenerate: bool,
}

#[derive(Debug, Serialize)]
struct DriftRow {
    f: String,
    cofactor: String,
    cofactor_value: f64,
    condition: String,
    /// Exact identity re-checked on the locus.
    verified: bool,
    first_integral: bool,
    x0: [f64; 3],
    max_drift: f64,
    window_end: f64,
    escaped: bool,
}

#[derive(Debug, Serialize)]
struct AttemptRow {
    plane: String,
    start: [f64; 3],
    eigenvalue: f64,
    direction: String,
    reached: Option<[f64; 3]>,
    closest: f64,
    time: f64,
    plane_residual: f64,
}

#[derive(Debug, Serialize)]
struct HeteroclinicRow {
    connections: usize,
    connected_equilibria: usize,
    max_plane_residual: f64,
    attempts: Vec<AttemptRow>,
}

#[derive(Debug, Serialize)]
struct DynamicsResults {
    fixed_points: Vec<FixedPointRow>,
    families: Vec<FamilyRow>,
    drift: Vec<DriftRow>,
    heteroclinic: Option<HeteroclinicRow>,
}

#[derive(Debug, Serialize)]
struct SampleRow {
    samples: usize,
    count: usize,
    radius: f64,
    t_max: f64,
    step: f64,
    seed: u64,
}

#[derive(Debug, Serialize)]
struct LyapunovRow {
    plane: String,
    v: String,
    dv_dt: String,
    sign: String,
    min: f64,
    max: f64,
    samples: usize,
}

#[derive(Debug, Serialize)]
struct DumpRow {
    path: String,
    samples: usize,
    escaped: bool,
}

#[derive(Debug, Serialize)]
struct DynamicsEvidence {
    field: String,
    invariant_planes: Vec<String>,
    /// Orbits from the shell that left the escape radius.
    escape: Option<SampleRow>,
    /// Orbits ending within the relative threshold of a plane `x = ±y`.
    plane_attraction: Option<SampleRow>,
    lyapunov: Vec<LyapunovRow>,
    dump: Option<DumpRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d2_equivariant: Option<bool>,
}

/// Darboux pairs whose drift is measured: catalog entries holding at the
/// given parameters for the builtin family, otherwise the quadratic
/// results of a search.
fn drift_pairs(resolved: &ResolvedField, field: &Field) -> Vec<(Poly, Poly, String, bool, Rat)> {
    match (resolved.d2_sign, &resolved.point) {
        (Some(sign), Some(p)) => catalog(sign)
            .into_iter()
            .filter(|e| e.condition.contains(p))
            .filter_map(|e| {
                let on = e.condition.apply(&resolved.symbolic)?;
                let verified = verify_darboux(&on, &e.f, &e.cofactor);
                let k = cofactor_value(&e.cofactor, &p.a, &p.b)?;
                Some((e.f, e.cofactor, e.condition.to_string(), verified, k))
            })
            .collect(),
        _ => find_darboux(field, 2, None)
            .map(|rs| {
                rs.into_iter()
                    .filter_map(|r| {
                        let k = r.cofactor.constant_term().as_constant()?;
                        let verified = verify_darboux(field, &r.f, &r.cofactor);
                        Some((r.f, r.cofactor, r.condition.to_string(), verified, k))
                    })
                    .collect()
            })
            .unwrap_or_default(),
    }
}

fn fixed_point_rows(report: &FixedPointReport, closed: &[([f64; 3], String)]) -> Vec<FixedPointRow> {
    report
        .points
        .iter()
        .map(|rec| {
            let exact = closed
                .iter()
                .map(|(p, s)| (norm(&sub(&rec.location, p)), s))
                .filter(|(d, _)| *d < EXACT_MATCH)
                .min_by(|x, y| x.0.total_cmp(&y.0));
            FixedPointRow {
                location: rec.location,
                exact: exact.map(|(_, s)| s.clone()),
                exact_error: exact.map(|(d, _)| d),
                eigenvalues: rec.eigenvalues.iter().map(|z| [z.re, z.im]).collect(),
                stability: rec.stability.to_string(),
                stable_dim: rec.stable_dim,
                unstable_dim: rec.unstable_dim,
                residual: rec.residual,
            }
        })
        .collect()
}

fn sub(p: &[f64; 3], q: &[f64; 3]) -> [f64; 3] {
    [p[0] - q[0], p[1] - q[1], p[2] - q[2]]
}

fn norm(p: &[f64; 3]) -> f64 {
    (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
}

pub(super) fn run(cfg: &RunConfig, s: &NumericSettings) -> Result<CommandOutput, CliError> {
    let resolved = cfg.resolve()?;
    let field = resolved.numeric_field()?.clone();
    let num_field = NumericField::new(&field)?;
    let mut diagnostics = Vec::new();
    let eq = equivariance(cfg, &field, &mut diagnostics);

    // Equilibria, seeded with the closed forms for the builtin family.
    let closed: Vec<([f64; 3], String)> = match (resolved.d2_sign, &resolved.point) {
        (Some(sign), Some(p)) => {
            let mut v: Vec<([f64; 3], String)> = d2_exact_equilibria(sign, &p.a, &p.b)
                .iter()
                .map(|e| (exact_to_f64(e), format_exact(e)))
                .collect();
            v.push(([0.0; 3], "(0, 0, 0)".into()));
            v
        }
        _ => vec![([0.0; 3], "(0, 0, 0)".into())],
    };
    let fp_cfg = FixedPointConfig {
        half_width: s.box_half_width,
        newton_tol: s.newton_tol,
        hyperbolic_tol: s.hyperbolic_tol,
        extra_seeds: closed.iter().map(|(p, _)| *p).collect(),
        ..FixedPointConfig::default()
    };
    let fixed = find_fixed_points(&num_field, &fp_cfg);
    let fixed_rows = fixed_point_rows(&fixed, &closed);
    let families: Vec<FamilyRow> = fixed
        .families
        .iter()
        .map(|f| FamilyRow {
            direction: f.direction,
            samples: f.samples.clone(),
            degenerate: true,
        })
        .collect();

    // Exponential invariance of the Darboux pairs along the orbit of x0.
    let drift: Vec<DriftRow> = drift_pairs(&resolved, &field)
        .into_iter()
        .map(|(f, k, condition, verified, k_at)| {
            let kv = rat_to_f64(&k_at);
            let rep = invariance_drift(&num_field, &f, kv, &s.x0, s.t_max, s.step, DEFAULT_ESCAPE_RADIUS)?;
            Ok(DriftRow {
                first_integral: k_at == rat(0, 1),
                f: f.to_string(),
                cofactor: k.to_string(),
                cofactor_value: kv,
                condition,
                verified,
                x0: s.x0,
                max_drift: rep.max_drift,
                window_end: rep.window_end,
                escaped: rep.escaped,
            })
        })
        .collect::<Result<_, CliError>>()?;

    // Invariant planes and what lives on them.
    let planes: Vec<Plane> = Plane::BOTH.into_iter().filter(|p| plane_is_invariant(&field, *p)).collect();
    let locations: Vec<[f64; 3]> = fixed.points.iter().map(|p| p.location).collect();
    let on_planes = locations
        .iter()
        .any(|p| norm(p) > s.tol && planes.iter().any(|pl| pl.distance(p) < s.tol));
    let heteroclinic = if on_planes {
        let rep = heteroclinic_probe(
            &field,
            &locations,
            &ProbeConfig {
                epsilon: s.epsilon,
                tol: s.tol,
                t_max: s.probe_t_max,
                step: s.step,
                escape_radius: DEFAULT_ESCAPE_RADIUS,
            },
        )?;
        Some(HeteroclinicRow {
            connections: rep.connections().count(),
            connected_equilibria: rep.connected_equilibria(),
            max_plane_residual: rep.max_plane_residual(),
            attempts: rep
                .attempts
                .iter()
                .map(|a| AttemptRow {
                    plane: a.plane.to_string(),
                    start: a.start,
                    eigenvalue: a.eigenvalue,
                    direction: a.direction().to_string(),
                    reached: a.reached.map(|i| locations[i]),
                    closest: a.closest,
                    time: a.time,
                    plane_residual: a.plane_residual,
                })
                .collect(),
        })
    } else {
        None
    };

    let sample_row = |count: usize| SampleRow {
        samples: s.samples,
        count,
        radius: SAMPLE_RADIUS,
        t_max: SAMPLE_T_MAX,
        step: SAMPLE_STEP,
        seed: s.seed,
    };
    let escape = (s.samples > 0)
        .then(|| {
            escape_evidence(&num_field, s.samples, SAMPLE_RADIUS, SAMPLE_T_MAX, SAMPLE_STEP, DEFAULT_ESCAPE_RADIUS, s.seed)
        })
        .transpose()?
        .map(|e| sample_row(e.escaped));
    let plane_attraction = (s.samples > 0 && !planes.is_empty())
        .then(|| {
            plane_attraction_evidence(
                &num_field,
                s.samples,
                SAMPLE_RADIUS,
                SAMPLE_T_MAX,
                SAMPLE_STEP,
                PLANE_THRESHOLD,
                DEFAULT_ESCAPE_RADIUS,
                s.seed,
            )
        })
        .transpose()?
        .map(|e| sample_row(e.attracted));
    let v = parse_poly("x^2 + z^2").expect("static polynomial");
    let lyapunov: Vec<LyapunovRow> = planes
        .iter()
        .map(|pl| {
            let planar = restrict_to_plane(&field, *pl)?;
            let rep = lyapunov_check(&planar, &v, LYAPUNOV_SAMPLES, LYAPUNOV_RADIUS, s.seed)?;
            Ok(LyapunovRow {
                plane: pl.to_string(),
                v: v.to_string(),
                dv_dt: planar.lie_derivative(&v).to_string(),
                sign: rep.sign.to_string(),
                min: rep.min,
                max: rep.max,
                samples: rep.samples,
            })
        })
        .collect::<Result<_, CliError>>()?;

    let dump = match &s.dump {
        Some(path) => {
            let traj = integrate(&num_field, &s.x0, s.t_max, s.step, DEFAULT_ESCAPE_RADIUS)?;
            dump_trajectory(path, &traj).map_err(|source| CliError::Write {
                path: path.clone(),
                source,
            })?;
            Some(DumpRow {
                path: path.display().to_string(),
                samples: traj.samples.len(),
                escaped: traj.escaped(),
            })
        }
        None => None,
    };

    let text = render_text(&field, &fixed_rows, &families, &drift, &heteroclinic, &escape, &plane_attraction, &lyapunov);
    let results = DynamicsResults {
        fixed_points: fixed_rows,
        families,
        drift,
        heteroclinic,
    };
    let evidence = DynamicsEvidence {
        field: field.to_string(),
        invariant_planes: planes.iter().map(ToString::to_string).collect(),
        escape,
        plane_attraction,
        lyapunov,
        dump,
        d2_equivariant: eq,
    };
    let report = Report::new(cfg.echo(), results, evidence);
    Ok(CommandOutput {
        code: EXIT_OK,
        json: report.to_json(),
        text,
        diagnostics,
    })
}

#[allow(clippy::too_many_arguments)]
fn render_text(
    field: &Field,
    fixed: &[FixedPointRow],
    families: &[FamilyRow],
    drift: &[DriftRow],
    het: &Option<HeteroclinicRow>,
    escape: &Option<SampleRow>,
    attraction: &Option<SampleRow>,
    lyapunov: &[LyapunovRow],
) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "field: {field}");
    let saddles = fixed.iter().filter(|r| r.stability == Stability::Saddle.to_string()).count();
    let _ = writeln!(t, "\nfixed points: {} isolated ({} saddles)", fixed.len(), saddles);
    let rows: Vec<Vec<String>> = fixed
        .iter()
        .map(|r| {
            vec![
                point3(&r.location),
                r.exact.clone().unwrap_or_else(|| "-".into()),
                r.stability.clone(),
                r.eigenvalues
                    .iter()
                    .map(|[re, im]| if *im == 0.0 { format!("{re:.6}") } else { format!("{re:.6}{im:+.6}i") })
                    .collect::<Vec<_>>()
                    .join(", "),
            ]
        })
        .collect();
    t.push_str(&table(&["location", "exact", "type", "eigenvalues"], &rows));
    for f in families {
        let _ = writeln!(
            t,
            "degenerate family of equilibria along {} ({} samples)",
            point3(&f.direction),
            f.samples.len()
        );
    }
    if !drift.is_empty() {
        let _ = writeln!(t, "\ninvariance drift of f(x(t)) e^(-k t):");
        let rows: Vec<Vec<String>> = drift
            .iter()
            .map(|d| {
                vec![
                    d.f.clone(),
                    d.cofactor.clone(),
                    d.condition.clone(),
                    if d.verified { "verified".into() } else { "unverified".into() },
                    num(d.max_drift),
                    if d.escaped { format!("t <= {} (escaped)", d.window_end) } else { format!("t <= {}", d.window_end) },
                ]
            })
            .collect();
        t.push_str(&table(&["f", "cofactor", "condition", "exact", "max drift", "window"], &rows));
    }
    if let Some(h) = het {
        let _ = writeln!(
            t,
            "\nheteroclinic probe: {} connection(s) to {} equilibria, max plane residual {}",
            h.connections,
            h.connected_equilibria,
            num(h.max_plane_residual)
        );
        for a in h.attempts.iter().filter(|a| a.reached.is_some()) {
            let _ = writeln!(
                t,
                "  {} on {}: {} at t = {:.3}",
                a.direction,
                a.plane,
                point3(&a.reached.unwrap_or_default()),
                a.time
            );
        }
    }
    if let Some(e) = escape {
        let _ = writeln!(t, "\nescape: {}/{} sampled orbits left radius 1e6 by t = {}", e.count, e.samples, e.t_max);
    }
    if let Some(a) = attraction {
        let _ = writeln!(t, "plane attraction: {}/{} sampled orbits end near x = ±y", a.count, a.samples);
    }
    for l in lyapunov {
        let _ = writeln!(t, "Lyapunov on {}: V = {}, dV/dt = {} is {} on the samples", l.plane, l.v, l.dv_dt, l.sign);
    }
    t
}
