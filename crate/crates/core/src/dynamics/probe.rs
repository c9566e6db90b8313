//! Numerical evidence for global claims: heteroclinic connections inside
//! the invariant planes, escape to infinity and attraction to the planes.

use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::integrate::{integrate, rk4_step};
use super::linear::{norm3, real_eigenpairs2, sub3, Vec3};
use super::numeric::NumericField;
use super::planar::{restrict_to_plane, Plane};
use super::DynamicsError;
use crate::field::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeConfig {
    /// Offset from the origin along an eigendirection.
    pub epsilon: f64,
    /// Arrival radius around the target equilibrium.
    pub tol: f64,
    pub t_max: f64,
    pub step: f64,
    pub escape_radius: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            epsilon: 1e-6,
            tol: 1e-4,
            t_max: 60.0,
            step: 1e-3,
            escape_radius: 1e6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlowDirection {
    /// The orbit leaves the equilibrium and tends to the origin.
    EquilibriumToOrigin,
    /// The orbit leaves the origin and tends to the equilibrium.
    OriginToEquilibrium,
}

impl fmt::Display for FlowDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlowDirection::EquilibriumToOrigin => "equilibrium->origin",
            FlowDirection::OriginToEquilibrium => "origin->equilibrium",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeAttempt {
    pub plane: Plane,
    /// Starting point next to the origin.
    pub start: Vec3,
    /// In-plane eigenvalue of the origin along the launch direction.
    pub eigenvalue: f64,
    /// Integration runs backward when the direction is stable.
    pub backward: bool,
    /// Index into the equilibria passed to the probe, when reached.
    pub reached: Option<usize>,
    /// Closest approach to any of the plane's equilibria.
    pub closest: f64,
    /// Time at the closest approach.
    pub time: f64,
    /// `max |x ∓ y|` along the orbit.
    pub plane_residual: f64,
}

impl ProbeAttempt {
    pub fn direction(&self) -> FlowDirection {
        if self.backward {
            FlowDirection::EquilibriumToOrigin
        } else {
            FlowDirection::OriginToEquilibrium
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeteroclinicReport {
    pub attempts: Vec<ProbeAttempt>,
}

impl HeteroclinicReport {
    /// Attempts that reached an equilibrium.
    pub fn connections(&self) -> impl Iterator<Item = &ProbeAttempt> {
        self.attempts.iter().filter(|a| a.reached.is_some())
    }

    /// Number of distinct equilibria connected to the origin.
    pub fn connected_equilibria(&self) -> usize {
        let mut seen: Vec<usize> = self.connections().filter_map(|a| a.reached).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub fn max_plane_residual(&self) -> f64 {
        self.connections().fold(0.0, |m, a| m.max(a.plane_residual))
    }
}

/// Follows the one-dimensional in-plane invariant manifolds of the origin.
///
/// For each invariant plane `x = ±y` and each real in-plane eigendirection
/// `w` of the origin, orbits start at `±ε w` (lifted to R^3) and are
/// integrated backward along stable directions and forward along unstable
/// ones. An attempt connects when it enters the `tol`-ball of one of the
/// given equilibria lying on that plane. Orbits are integrated in the full
/// three-dimensional field, so the plane residual measures containment.
pub fn heteroclinic_probe(
    field: &Field,
    equilibria: &[Vec3],
    cfg: &ProbeConfig,
) -> Result<HeteroclinicReport, DynamicsError> {
    let num = NumericField::new(field)?;
    if cfg.step.is_nan() || cfg.step <= 0.0 || cfg.t_max.is_nan() || cfg.t_max <= 0.0 {
        return Err(DynamicsError::BadStep);
    }
    let mut attempts = Vec::new();
    for plane in Plane::BOTH {
        let Ok(planar) = restrict_to_plane(field, plane) else { continue };
        let targets: Vec<usize> = (0..equilibria.len())
            .filter(|&i| plane.distance(&equilibria[i]) < cfg.tol && norm3(&equilibria[i]) > cfg.tol)
            .collect();
        for (mu, w) in real_eigenpairs2(&planar.jacobian(0.0, 0.0)?) {
            if mu == 0.0 {
                continue;
            }
            for s in [1.0, -1.0] {
                let start = plane.lift(s * cfg.epsilon * w[0], s * cfg.epsilon * w[1]);
                attempts.push(follow(&num, plane, start, mu, equilibria, &targets, cfg));
            }
        }
    }
    Ok(HeteroclinicReport { attempts })
}

fn follow(
    num: &NumericField,
    plane: Plane,
    start: Vec3,
    mu: f64,
    equilibria: &[Vec3],
    targets: &[usize],
    cfg: &ProbeConfig,
) -> ProbeAttempt {
    let backward = mu < 0.0;
    let h = if backward { -cfg.step } else { cfg.step };
    let steps = libm::ceil(cfg.t_max / cfg.step) as usize;
    let mut x = start;
    let mut attempt = ProbeAttempt {
        plane,
        start,
        eigenvalue: mu,
        backward,
        reached: None,
        closest: f64::INFINITY,
        time: 0.0,
        plane_residual: 0.0,
    };
    for i in 1..=steps {
        x = rk4_step(num, &x, h);
        if !x.iter().all(|v| v.is_finite()) || norm3(&x) > cfg.escape_radius {
            break;
        }
        attempt.plane_residual = attempt.plane_residual.max(plane.distance(&x));
        for &k in targets {
            let d = norm3(&sub3(&x, &equilibria[k]));
            if d < attempt.closest {
                attempt.closest = d;
                attempt.time = i as f64 * h;
            }
            if d < cfg.tol {
                attempt.reached = Some(k);
                return attempt;
            }
        }
    }
    attempt
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EscapeEvidence {
    pub samples: usize,
    pub escaped: usize,
    pub t_max: f64,
    pub escape_radius: f64,
}

/// Uniform random point in the spherical shell `r0 <= |p| <= r1`.
fn shell_point(rng: &mut ChaCha8Rng, r0: f64, r1: f64) -> Vec3 {
    loop {
        let p = [0, 1, 2].map(|_| r1 * (2.0 * rng.gen::<f64>() - 1.0));
        let n = norm3(&p);
        if n >= r0 && n <= r1 {
            return p;
        }
    }
}

/// Integrates random initial conditions from the shell
/// `radius / 4 <= |x0| <= radius` and counts escapes.
pub fn escape_evidence(
    field: &NumericField,
    samples: usize,
    radius: f64,
    t_max: f64,
    h: f64,
    escape_radius: f64,
    seed: u64,
) -> Result<EscapeEvidence, DynamicsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut escaped = 0;
    for _ in 0..samples {
        let x0 = shell_point(&mut rng, radius / 4.0, radius);
        match integrate(field, &x0, t_max, h, escape_radius) {
            Ok(t) if t.escaped() => escaped += 1,
            Err(DynamicsError::NonFinite { .. }) => escaped += 1,
            Ok(_) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(EscapeEvidence {
        samples,
        escaped,
        t_max,
        escape_radius,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneAttractionEvidence {
    pub samples: usize,
    /// Orbits whose relative distance `min |x ∓ y| / |p|` ended below
    /// `threshold`.
    pub attracted: usize,
    /// Orbits that escaped before `t_max`; their last state is used.
    pub escaped: usize,
    pub threshold: f64,
    pub t_max: f64,
}

/// Relative distance to the nearer invariant plane.
pub fn plane_gap(p: &Vec3) -> f64 {
    let n = norm3(p).max(1e-300);
    Plane::BOTH.iter().map(|pl| pl.distance(p)).fold(f64::INFINITY, f64::min) / n
}

/// Integrates random initial conditions and counts orbits ending close to
/// one of the planes `x = ±y`.
#[allow(clippy::too_many_arguments)]
pub fn plane_attraction_evidence(
    field: &NumericField,
    samples: usize,
    radius: f64,
    t_max: f64,
    h: f64,
    threshold: f64,
    escape_radius: f64,
    seed: u64,
) -> Result<PlaneAttractionEvidence, DynamicsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut attracted, mut escaped) = (0, 0);
    for _ in 0..samples {
        let x0 = shell_point(&mut rng, radius / 4.0, radius);
        let last = match integrate(field, &x0, t_max, h, escape_radius) {
            Ok(t) => {
                escaped += usize::from(t.escaped());
                t.last().1
            }
            Err(DynamicsError::NonFinite { state, .. }) => {
                escaped += 1;
                state
            }
            Err(e) => return Err(e),
        };
        if plane_gap(&last) < threshold {
            attracted += 1;
        }
    }
    Ok(PlaneAttractionEvidence {
        samples,
        attracted,
        escaped,
        threshold,
        t_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::dynamics::exact::{d2_exact_equilibria, exact_to_f64};
    use crate::field::{d2_field, FieldSign};

    fn d2(a: i64, b: i64) -> Field {
        d2_field(FieldSign::Negative)
            .specialize(Some(&rat(a, 1)), Some(&rat(b, 1)))
            .unwrap()
    }

    #[test]
    fn four_connections_at_minus_one() {
        let eq: Vec<Vec3> = d2_exact_equilibria(FieldSign::Negative, &rat(-1, 1), &rat(-1, 1))
            .iter()
            .map(exact_to_f64)
            .collect();
        let rep = heteroclinic_probe(&d2(-1, -1), &eq, &ProbeConfig::default()).unwrap();
        assert_eq!(rep.connected_equilibria(), 4);
        assert!(rep.max_plane_residual() < 1e-8);
        assert!(rep
            .connections()
            .all(|a| a.direction() == FlowDirection::EquilibriumToOrigin));
    }

    #[test]
    fn no_planes_off_the_diagonal() {
        let rep = heteroclinic_probe(&d2(1, -2), &[], &ProbeConfig::default()).unwrap();
        assert!(rep.attempts.is_empty());
    }

    #[test]
    fn source_orbits_escape() {
        let num = NumericField::new(&d2(1, 3)).unwrap();
        let ev = escape_evidence(&num, 20, 2.0, 20.0, 1e-2, 1e6, 1).unwrap();
        assert_eq!(ev.escaped, ev.samples);
    }
}
