//! Restriction to the invariant planes `x = ±y` and sampled Lyapunov checks
//! for the resulting planar fields in `(x, z)`.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::numeric::NumericPoly;
use super::DynamicsError;
use crate::algebra::{Poly, Var};
use crate::field::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Plane {
    XEqualsY,
    XEqualsMinusY,
}

impl Plane {
    pub const BOTH: [Plane; 2] = [Plane::XEqualsY, Plane::XEqualsMinusY];

    /// `±1` with `y = sign · x` on the plane.
    pub fn sign(self) -> f64 {
        match self {
            Plane::XEqualsY => 1.0,
            Plane::XEqualsMinusY => -1.0,
        }
    }

    /// The linear form `x ∓ y` vanishing on the plane.
    pub fn linear_form(self) -> Poly {
        match self {
            Plane::XEqualsY => &Poly::x() - &Poly::y(),
            Plane::XEqualsMinusY => &Poly::x() + &Poly::y(),
        }
    }

    /// `(x, ±x, z)`.
    pub fn lift(self, x: f64, z: f64) -> [f64; 3] {
        [x, self.sign() * x, z]
    }

    /// `|x ∓ y|`.
    pub fn distance(self, p: &[f64; 3]) -> f64 {
        (p[1] - self.sign() * p[0]).abs()
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Plane::XEqualsY => "x=y",
            Plane::XEqualsMinusY => "x=-y",
        })
    }
}

/// `(ẋ, ż)` on a plane, as polynomials in `x` and `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarField {
    pub plane: Plane,
    pub components: [Poly; 2],
}

impl PlanarField {
    /// `∇V · (ẋ, ż)` for `V` in `x`, `z`.
    pub fn lie_derivative(&self, v: &Poly) -> Poly {
        &(&v.partial(Var::X) * &self.components[0]) + &(&v.partial(Var::Z) * &self.components[1])
    }

    /// Jacobian of `(ẋ, ż)` with respect to `(x, z)` at a point.
    pub fn jacobian(&self, x: f64, z: f64) -> Result<[[f64; 2]; 2], DynamicsError> {
        let p = [x, 0.0, z];
        let entry = |c: &Poly, v: Var| NumericPoly::new(&c.partial(v)).map(|n| n.eval(&p));
        Ok([
            [entry(&self.components[0], Var::X)?, entry(&self.components[0], Var::Z)?],
            [entry(&self.components[1], Var::X)?, entry(&self.components[1], Var::Z)?],
        ])
    }
}

impl fmt::Display for PlanarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dx = {}; dz = {}", self.components[0], self.components[1])
    }
}

/// True when the plane is invariant: `ℓ = x ∓ y` divides `L_X ℓ`.
pub fn plane_is_invariant(field: &Field, plane: Plane) -> bool {
    let l = plane.linear_form();
    field.lie_derivative(&l).div_exact(&l).is_some()
}

/// The field restricted to an invariant plane, written in `(x, z)`.
pub fn restrict_to_plane(field: &Field, plane: Plane) -> Result<PlanarField, DynamicsError> {
    if !plane_is_invariant(field, plane) {
        return Err(DynamicsError::PlaneNotInvariant(plane));
    }
    let y = match plane {
        Plane::XEqualsY => Poly::x(),
        Plane::XEqualsMinusY => -Poly::x(),
    };
    let subs = [Poly::x(), y, Poly::z()];
    let c = field.components();
    Ok(PlanarField {
        plane,
        components: [c[0].substitute_vars(&subs), c[2].substitute_vars(&subs)],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignClass {
    Positive,
    Negative,
    Indefinite,
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignClass::Positive => "positive",
            SignClass::Negative => "negative",
            SignClass::Indefinite => "indefinite",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovReport {
    pub samples: usize,
    pub min: f64,
    pub min_at: [f64; 2],
    pub max: f64,
    pub max_at: [f64; 2],
    /// Sign of `dV/dt` over the samples; `Indefinite` is a violation,
    /// located at `min_at` / `max_at`.
    pub sign: SignClass,
}

/// Samples `dV/dt` at uniform random points of the punctured disk of the
/// given radius (deterministic for a fixed seed).
pub fn lyapunov_check(
    planar: &PlanarField,
    v: &Poly,
    samples: usize,
    radius: f64,
    seed: u64,
) -> Result<LyapunovReport, DynamicsError> {
    if v.is_zero() || !v.constant_term().is_zero() || v.partial(Var::Y).num_terms() != 0 {
        return Err(DynamicsError::BadLyapunovFunction);
    }
    if samples == 0 || radius.is_nan() || radius <= 0.0 {
        return Err(DynamicsError::BadSampling);
    }
    let dv = NumericPoly::new(&planar.lie_derivative(v))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_at, mut max_at) = ([0.0; 2], [0.0; 2]);
    let mut taken = 0;
    while taken < samples {
        let r = radius * libm::sqrt(rng.gen::<f64>());
        if r < 1e-9 * radius {
            continue;
        }
        let theta = 2.0 * PI * rng.gen::<f64>();
        let (x, z) = (r * libm::cos(theta), r * libm::sin(theta));
        let val = dv.eval(&[x, 0.0, z]);
        if val < min {
            min = val;
            min_at = [x, z];
        }
        if val > max {
            max = val;
            max_at = [x, z];
        }
        taken += 1;
    }
    let sign = if min > 0.0 {
        SignClass::Positive
    } else if max < 0.0 {
        SignClass::Negative
    } else {
        SignClass::Indefinite
    };
    Ok(LyapunovReport {
        samples,
        min,
        min_at,
        max,
        max_at,
        sign,
    })
}

/// Every point of `pts` within `tol` of the plane.
pub fn within_plane(plane: Plane, pts: &[[f64; 3]], tol: f64) -> Vec<[f64; 3]> {
    pts.iter().copied().filter(|p| plane.distance(p) < tol).collect()
}
