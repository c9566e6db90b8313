//! Equilibria: Newton search from a seed grid, linear classification and
//! detection of continua of equilibria.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use super::exact::ExactPoint;
use super::linear::{cross3, eigenvalues3, norm3, solve3, sub3, Mat3, Vec3};
use super::numeric::NumericField;
use super::DynamicsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stability {
    Source,
    Sink,
    Saddle,
    Nonhyperbolic,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Source => "source",
            Stability::Sink => "sink",
            Stability::Saddle => "saddle",
            Stability::Nonhyperbolic => "nonhyperbolic",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointRecord {
    pub location: Vec3,
    pub exact: Option<ExactPoint>,
    pub eigenvalues: [Complex64; 3],
    pub stability: Stability,
    /// Number of eigenvalues with negative real part.
    pub stable_dim: usize,
    pub unstable_dim: usize,
    /// `‖X(location)‖`.
    pub residual: f64,
}

/// A curve of equilibria, sampled where Newton landed on it.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerateFamily {
    pub direction: Vec3,
    pub samples: Vec<Vec3>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FixedPointReport {
    /// Isolated equilibria, sorted by coordinates.
    pub points: Vec<FixedPointRecord>,
    pub families: Vec<DegenerateFamily>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointConfig {
    /// Seeds and results are restricted to `[-w, w]^3`.
    pub half_width: f64,
    pub seeds_per_axis: usize,
    pub newton_tol: f64,
    pub hyperbolic_tol: f64,
    /// Converged points closer than this are merged.
    pub dedupe_radius: f64,
    pub max_iterations: usize,
    /// Additional seeds, e.g. known closed-form equilibria.
    pub extra_seeds: Vec<Vec3>,
}

impl Default for FixedPointConfig {
    fn default() -> Self {
        FixedPointConfig {
            half_width: 5.0,
            seeds_per_axis: 7,
            newton_tol: 1e-12,
            hyperbolic_tol: 1e-6,
            dedupe_radius: 1e-6,
            max_iterations: 100,
            extra_seeds: Vec::new(),
        }
    }
}

fn transpose_mul(j: &Mat3, v: &Vec3) -> Vec3 {
    [0, 1, 2].map(|c| (0..3).map(|r| j[r][c] * v[r]).sum())
}

/// Newton's method on `X(p) = 0`, switching to a damped least-squares step
/// where the Jacobian is numerically singular.
pub fn newton(field: &NumericField, seed: &Vec3, cfg: &FixedPointConfig) -> Option<Vec3> {
    let mut p = *seed;
    let limit = 1e3 * cfg.half_width.max(1.0);
    for _ in 0..cfg.max_iterations {
        let f = field.eval(&p);
        if norm3(&f) < cfg.newton_tol {
            return Some(p);
        }
        let j = field.jacobian(&p);
        let neg_f = f.map(|v| -v);
        let step = solve3(&j, &neg_f).or_else(|| {
            let scale = j.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()));
            let mu = 1e-10 * scale * scale + 1e-300;
            let mut normal = [[0.0; 3]; 3];
            for (r, row) in normal.iter_mut().enumerate() {
                for (c, cell) in row.iter_mut().enumerate() {
                    *cell = (0..3).map(|k| j[k][r] * j[k][c]).sum::<f64>() + if r == c { mu } else { 0.0 };
                }
            }
            solve3(&normal, &transpose_mul(&j, &neg_f))
        })?;
        p = [p[0] + step[0], p[1] + step[1], p[2] + step[2]];
        if !p.iter().all(|v| v.is_finite()) || norm3(&p) > limit {
            return None;
        }
    }
    (norm3(&field.eval(&p)) < cfg.newton_tol).then_some(p)
}

/// Linearization at an equilibrium. Fails when `‖X(p)‖ >= tol`.
pub fn classify(
    field: &NumericField,
    p: &Vec3,
    tol: f64,
    hyperbolic_tol: f64,
) -> Result<FixedPointRecord, DynamicsError> {
    let residual = norm3(&field.eval(p));
    if residual.is_nan() || residual >= tol {
        return Err(DynamicsError::NotAnEquilibrium { residual });
    }
    let eigenvalues = eigenvalues3(&field.jacobian(p));
    let stable_dim = eigenvalues.iter().filter(|z| z.re < 0.0).count();
    let unstable_dim = eigenvalues.iter().filter(|z| z.re > 0.0).count();
    let stability = if eigenvalues.iter().any(|z| z.re.abs() < hyperbolic_tol) {
        Stability::Nonhyperbolic
    } else if stable_dim == 3 {
        Stability::Sink
    } else if unstable_dim == 3 {
        Stability::Source
    } else {
        Stability::Saddle
    };
    Ok(FixedPointRecord {
        location: *p,
        exact: None,
        eigenvalues,
        stability,
        stable_dim,
        unstable_dim,
        residual,
    })
}

/// Unit null direction of a rank-deficient Jacobian, from the largest
/// cross product of two rows.
fn null_direction(j: &Mat3) -> Vec3 {
    let candidates = [cross3(&j[0], &j[1]), cross3(&j[0], &j[2]), cross3(&j[1], &j[2])];
    let best = candidates
        .iter()
        .max_by(|a, b| norm3(a).total_cmp(&norm3(b)))
        .copied()
        .unwrap_or([0.0; 3]);
    let n = norm3(&best);
    if n == 0.0 {
        // Rank at most one: any direction orthogonal to the nonzero row.
        let row = j.iter().max_by(|a, b| norm3(a).total_cmp(&norm3(b))).copied().unwrap_or([0.0; 3]);
        let trial = if row[0].abs() < 0.9 * norm3(&row) { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let c = cross3(&row, &trial);
        let m = norm3(&c);
        return if m == 0.0 { [1.0, 0.0, 0.0] } else { c.map(|v| v / m) };
    }
    best.map(|v| v / n)
}

/// True when `X` vanishes (to `1e-9`) a short distance along the null
/// direction on both sides, i.e. `p` lies on a curve of equilibria.
fn on_continuum(field: &NumericField, p: &Vec3, dir: &Vec3) -> bool {
    let s = 1e-2;
    [s, -s].iter().all(|t| {
        let q = [p[0] + t * dir[0], p[1] + t * dir[1], p[2] + t * dir[2]];
        norm3(&field.eval(&q)) < 1e-9
    })
}

fn cmp_points(a: &Vec3, b: &Vec3) -> core::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(core::cmp::Ordering::Equal)
}

/// Newton from a uniform seed grid (plus the origin and any extra seeds),
/// deduplicated and restricted to the box.
pub fn find_fixed_points(field: &NumericField, cfg: &FixedPointConfig) -> FixedPointReport {
    let w = cfg.half_width;
    let n = cfg.seeds_per_axis.max(1);
    let coord = |i: usize| if n == 1 { 0.0 } else { -w + 2.0 * w * i as f64 / (n - 1) as f64 };
    let mut seeds: Vec<Vec3> = alloc::vec![[0.0; 3]];
    seeds.extend(cfg.extra_seeds.iter().copied());
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                seeds.push([coord(i), coord(j), coord(k)]);
            }
        }
    }

    let inside = |p: &Vec3| p.iter().all(|v| v.abs() <= w * (1.0 + 1e-12));
    let mut found: Vec<Vec3> = Vec::new();
    for seed in &seeds {
        let Some(p) = newton(field, seed, cfg) else { continue };
        if !inside(&p) || found.iter().any(|q| norm3(&sub3(q, &p)) < cfg.dedupe_radius) {
            continue;
        }
        found.push(p);
    }
    found.sort_by(cmp_points);

    let mut report = FixedPointReport::default();
    let mut degenerate: Vec<FixedPointRecord> = Vec::new();
    for p in found {
        let Ok(rec) = classify(field, &p, cfg.newton_tol, cfg.hyperbolic_tol) else { continue };
        if rec.stability == Stability::Nonhyperbolic {
            let dir = null_direction(&field.jacobian(&p));
            if !on_continuum(field, &p, &dir) {
                degenerate.push(rec);
                continue;
            }
            let family = report.families.iter_mut().find(|f| {
                norm3(&cross3(&f.direction, &dir)) < 1e-6
                    && norm3(&cross3(&sub3(&p, &f.samples[0]), &f.direction)) < 1e-6
            });
            match family {
                Some(f) => f.samples.push(p),
                None => report.families.push(DegenerateFamily {
                    direction: dir,
                    samples: alloc::vec![p],
                }),
            }
            continue;
        }
        report.points.push(rec);
    }

    // Newton converges only linearly onto a nonhyperbolic equilibrium, so a
    // residual below `newton_tol` pins the location to about its square
    // root. Within that radius, points next to a family belong to it and
    // nearby degenerate points are one equilibrium.
    let near = (1e2 * libm::sqrt(cfg.newton_tol)).max(cfg.dedupe_radius);
    let off_family = |p: &Vec3| {
        report
            .families
            .iter()
            .all(|f| norm3(&cross3(&sub3(p, &f.samples[0]), &f.direction)) >= near)
    };
    let mut kept: Vec<FixedPointRecord> = Vec::new();
    for rec in degenerate {
        if off_family(&rec.location) && kept.iter().all(|k| norm3(&sub3(&k.location, &rec.location)) >= near) {
            kept.push(rec);
        }
    }
    report.points.extend(kept);
    report.points.sort_by(|a, b| cmp_points(&a.location, &b.location));
    report
}
