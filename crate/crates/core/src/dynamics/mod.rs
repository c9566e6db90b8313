//! Floating point verification of phase-portrait claims.
//!
//! Everything here is numerical evidence, never proof: equilibria come from
//! Newton's method, orbits from fixed-step RK4, global statements from
//! sampling with a seeded generator.

mod exact;
mod fixed;
mod integrate;
pub mod linear;
mod numeric;
mod planar;
mod probe;

use thiserror::Error;

pub use exact::{d2_exact_equilibria, exact_to_f64, format_exact, ExactCoord, ExactPoint};
pub use fixed::{
    classify, find_fixed_points, newton, DegenerateFamily, FixedPointConfig, FixedPointRecord,
    FixedPointReport, Stability,
};
pub use integrate::{
    drift_along, integrate, invariance_drift, rk4_step, DriftReport, Trajectory, TrajectoryStatus,
    DEFAULT_ESCAPE_RADIUS, DEFAULT_STEP, DEFAULT_T_MAX,
};
pub use linear::eigenvalues3;
pub use numeric::{NumericField, NumericPoly};
pub use planar::{
    lyapunov_check, plane_is_invariant, restrict_to_plane, within_plane, LyapunovReport,
    PlanarField, Plane, SignClass,
};
pub use probe::{
    escape_evidence, heteroclinic_probe, plane_attraction_evidence, plane_gap, EscapeEvidence,
    FlowDirection, HeteroclinicReport, PlaneAttractionEvidence, ProbeAttempt, ProbeConfig,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("the field or polynomial still depends on the parameters a, b")]
    NotSpecialized,
    #[error("step size must be positive and the time span nonzero")]
    BadStep,
    #[error("state became non-finite after t = {t} (last state {state:?})")]
    NonFinite { t: f64, state: [f64; 3] },
    #[error("point is not an equilibrium (|X(p)| = {residual:e})")]
    NotAnEquilibrium { residual: f64 },
    #[error("the plane {0} is not invariant for this field")]
    PlaneNotInvariant(Plane),
    #[error("Lyapunov candidate must be a nonzero polynomial in x, z vanishing at the origin")]
    BadLyapunovFunction,
    #[error("sample count and radius must be positive")]
    BadSampling,
}
