//! Fixed-step classical Runge–Kutta integration and exponential-invariance
//! drift of Darboux pairs along trajectories.

use alloc::vec::Vec;

use super::linear::{norm3, Vec3};
use super::numeric::{NumericField, NumericPoly};
use super::DynamicsError;
use crate::algebra::Poly;

pub const DEFAULT_STEP: f64 = 1e-3;
pub const DEFAULT_T_MAX: f64 = 5.0;
pub const DEFAULT_ESCAPE_RADIUS: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrajectoryStatus {
    Completed,
    /// `‖state‖` exceeded the escape radius at time `t` (the last sample).
    Escaped { t: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// `(t, state)` with `t` strictly monotone and the first sample at
    /// `t = 0`.
    pub samples: Vec<(f64, Vec3)>,
    pub step: f64,
    pub method: &'static str,
    pub status: TrajectoryStatus,
}

impl Trajectory {
    pub fn escaped(&self) -> bool {
        matches!(self.status, TrajectoryStatus::Escaped { .. })
    }

    pub fn last(&self) -> (f64, Vec3) {
        *self.samples.last().expect("trajectories are never empty")
    }
}

fn axpy(x: &Vec3, h: f64, k: &Vec3) -> Vec3 {
    [x[0] + h * k[0], x[1] + h * k[1], x[2] + h * k[2]]
}

/// One classical RK4 step of (signed) size `h`.
pub fn rk4_step(field: &NumericField, x: &Vec3, h: f64) -> Vec3 {
    let k1 = field.eval(x);
    let k2 = field.eval(&axpy(x, h / 2.0, &k1));
    let k3 = field.eval(&axpy(x, h / 2.0, &k2));
    let k4 = field.eval(&axpy(x, h, &k3));
    [0, 1, 2].map(|i| x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

/// Number of steps and the signed size of each, so that the last step
/// lands on `t_max` (shortened when `t_max` is not a multiple of `h`).
fn step_plan(t_max: f64, h: f64) -> Result<(usize, f64, f64), DynamicsError> {
    if h.is_nan() || h <= 0.0 || !h.is_finite() || t_max == 0.0 || !t_max.is_finite() {
        return Err(DynamicsError::BadStep);
    }
    let span = t_max.abs();
    let n = libm::ceil(span / h - 1e-9).max(1.0) as usize;
    Ok((n, h.copysign(t_max), span))
}

/// Integrates from `x0` over `[0, t_max]` (backward when `t_max < 0`),
/// halting when `‖x‖` exceeds `escape_radius`.
pub fn integrate(
    field: &NumericField,
    x0: &Vec3,
    t_max: f64,
    h: f64,
    escape_radius: f64,
) -> Result<Trajectory, DynamicsError> {
    let (n, dt, span) = step_plan(t_max, h)?;
    let sign = dt.signum();
    let mut samples = Vec::with_capacity(n + 1);
    samples.push((0.0, *x0));
    let mut x = *x0;
    let mut status = TrajectoryStatus::Completed;
    for i in 1..=n {
        let t_prev = samples[i - 1].0;
        let t = sign * (i as f64 * h).min(span);
        x = rk4_step(field, &x, t - t_prev);
        if !x.iter().all(|v| v.is_finite()) {
            let (t, state) = samples[i - 1];
            return Err(DynamicsError::NonFinite { t, state });
        }
        samples.push((t, x));
        if norm3(&x) > escape_radius {
            status = TrajectoryStatus::Escaped { t };
            break;
        }
    }
    Ok(Trajectory {
        samples,
        step: h,
        method: "rk4",
        status,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftReport {
    /// `max |f(x(t)) e^{-c0 t} - f(x0)| / max(|f(x0)|, 1)`.
    pub max_drift: f64,
    /// End of the window over which the drift was measured.
    pub window_end: f64,
    pub escaped: bool,
}

/// Drift of `f(x(t)) e^{-c0 t}` from its initial value along a computed
/// trajectory. Samples beyond the escape radius are excluded.
pub fn drift_along(
    traj: &Trajectory,
    f: &Poly,
    c0: f64,
    escape_radius: f64,
) -> Result<DriftReport, DynamicsError> {
    let f = NumericPoly::new(f)?;
    let (_, x0) = traj.samples[0];
    let f0 = f.eval(&x0);
    let scale = f0.abs().max(1.0);
    let mut max_drift = 0.0f64;
    let mut window_end = 0.0;
    for (t, x) in &traj.samples {
        if norm3(x) > escape_radius {
            break;
        }
        let d = (f.eval(x) * libm::exp(-c0 * t) - f0).abs() / scale;
        max_drift = max_drift.max(d);
        window_end = *t;
    }
    Ok(DriftReport {
        max_drift,
        window_end,
        escaped: traj.escaped(),
    })
}

/// Integrates and measures the exponential-invariance drift of the
/// Darboux pair `(f, c0)`: `L_X f = c0 f` forces `f(x(t)) = f(x0) e^{c0 t}`.
pub fn invariance_drift(
    field: &NumericField,
    f: &Poly,
    c0: f64,
    x0: &Vec3,
    t_max: f64,
    h: f64,
    escape_radius: f64,
) -> Result<DriftReport, DynamicsError> {
    let traj = integrate(field, x0, t_max, h, escape_radius)?;
    drift_along(&traj, f, c0, escape_radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::field::{d2_field, parse_poly, FieldSign};

    fn field(a: i64, b: i64) -> NumericField {
        let f = d2_field(FieldSign::Negative)
            .specialize(Some(&rat(a, 1)), Some(&rat(b, 1)))
            .unwrap();
        NumericField::new(&f).unwrap()
    }

    #[test]
    fn equilibrium_is_constant() {
        let t = integrate(&field(1, -2), &[0.0; 3], 1.0, 0.1, 1e6).unwrap();
        assert_eq!(t.samples.len(), 11);
        assert!(t.samples.iter().all(|(_, x)| *x == [0.0; 3]));
        assert!((t.last().0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn y_axis_decay() {
        let t = integrate(&field(1, -2), &[0.0, 1.0, 0.0], 2.0, 1e-3, 1e6).unwrap();
        for (s, x) in &t.samples {
            assert_eq!((x[0], x[2]), (0.0, 0.0));
            assert!((x[1] - libm::exp(-2.0 * s)).abs() < 1e-12);
        }
    }

    #[test]
    fn backward_and_partial_steps() {
        let t = integrate(&field(1, -2), &[0.0, 1.0, 0.0], -0.25, 0.1, 1e6).unwrap();
        let times: Vec<f64> = t.samples.iter().map(|s| s.0).collect();
        assert_eq!(times.len(), 4);
        assert!((times[3] + 0.25).abs() < 1e-15);
        assert!((t.last().1[1] - libm::exp(0.5)).abs() < 1e-5);
        assert_eq!(integrate(&field(1, -2), &[0.0; 3], 1.0, 0.0, 1e6).unwrap_err(), DynamicsError::BadStep);
    }

    #[test]
    fn escape_is_tagged() {
        let t = integrate(&field(1, -2), &[1.0, 1.0, 1.0], 20.0, 1e-3, 1e6).unwrap();
        assert!(t.escaped());
    }

    #[test]
    fn invariant_surface_is_preserved() {
        let f = parse_poly("x^2 + z^2").unwrap();
        let r = invariance_drift(&field(1, -2), &f, 2.0, &[0.0, 1.0, 0.0], 5.0, 1e-3, 1e6).unwrap();
        assert!(r.max_drift < 1e-9);
    }
}
