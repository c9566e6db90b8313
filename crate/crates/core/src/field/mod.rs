//! Polynomial vector fields on R^3.

mod parse;

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::algebra::{ParamPoly, Poly, Rat, Var, DEFAULT_MAX_DEGREE};

pub use parse::{parse_field, parse_field_source, parse_poly, FieldSource, ParseError};

/// Free parameter symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    A,
    B,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::A => "a",
            Param::B => "b",
        }
    }
}

/// A rational value for each of `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamPoint {
    pub a: Rat,
    pub b: Rat,
}

impl ParamPoint {
    pub fn new(a: Rat, b: Rat) -> Self {
        ParamPoint { a, b }
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={}, b={}", self.a, self.b)
    }
}

/// Sign of the `xy` term in the third equation of the D2 family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSign {
    Negative,
    Positive,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("component {component} has degree {degree}, above the bound {bound}")]
    DegreeTooHigh { component: usize, degree: u32, bound: u32 },
    #[error("no value supplied for parameter {0}")]
    MissingParameter(&'static str),
}

/// `(ẋ, ẏ, ż)` as polynomials whose coefficients may involve `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Field {
    components: [Poly; 3],
}

impl Field {
    pub fn new(components: [Poly; 3]) -> Result<Self, FieldError> {
        Self::with_degree_bound(components, DEFAULT_MAX_DEGREE)
    }

    pub fn with_degree_bound(components: [Poly; 3], bound: u32) -> Result<Self, FieldError> {
        for (i, c) in components.iter().enumerate() {
            let degree = c.total_degree();
            if degree > bound {
                return Err(FieldError::DegreeTooHigh {
                    component: i,
                    degree,
                    bound,
                });
            }
        }
        Ok(Field { components })
    }

    pub fn zero() -> Self {
        Field {
            components: [Poly::zero(), Poly::zero(), Poly::zero()],
        }
    }

    pub fn components(&self) -> &[Poly; 3] {
        &self.components
    }

    pub fn component(&self, v: Var) -> &Poly {
        &self.components[v.index()]
    }

    /// Parameter symbols occurring in some coefficient.
    pub fn parameters(&self) -> Vec<Param> {
        let mut out = Vec::new();
        if self.components.iter().any(Poly::uses_a) {
            out.push(Param::A);
        }
        if self.components.iter().any(Poly::uses_b) {
            out.push(Param::B);
        }
        out
    }

    pub fn is_parameter_free(&self) -> bool {
        self.components.iter().all(Poly::is_parameter_free)
    }

    /// Largest component degree.
    pub fn degree(&self) -> u32 {
        self.components.iter().map(Poly::total_degree).max().unwrap_or(0)
    }

    /// `L_X f = Σ X_i ∂f/∂x_i`.
    pub fn lie_derivative(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for v in Var::ALL {
            let d = f.partial(v);
            if !d.is_zero() {
                out = &out + &(&self.components[v.index()] * &d);
            }
        }
        out
    }

    /// Evaluates the parameters that occur in the field.
    pub fn specialize(&self, a: Option<&Rat>, b: Option<&Rat>) -> Result<Field, FieldError> {
        let params = self.parameters();
        let zero = Rat::default();
        let a = match a {
            Some(v) => v,
            None if params.contains(&Param::A) => return Err(FieldError::MissingParameter("a")),
            None => &zero,
        };
        let b = match b {
            Some(v) => v,
            None if params.contains(&Param::B) => return Err(FieldError::MissingParameter("b")),
            None => &zero,
        };
        Ok(self.map(|p| p.specialize(a, b)))
    }

    pub fn specialize_at(&self, point: &ParamPoint) -> Field {
        self.map(|p| p.specialize(&point.a, &point.b))
    }

    /// Substitutes `a := a_val`, `b := b_val` symbolically.
    pub fn substitute_params(&self, a_val: &ParamPoly, b_val: &ParamPoly) -> Field {
        self.map(|p| p.substitute_params(a_val, b_val))
    }

    /// Entry `(i, j)` is `∂X_i/∂x_j`.
    pub fn jacobian(&self) -> [[Poly; 3]; 3] {
        let row = |i: usize| Var::ALL.map(|v| self.components[i].partial(v));
        [row(0), row(1), row(2)]
    }

    /// Homogeneous part of degree `k` of every component.
    pub fn homogeneous_part(&self, k: u32) -> [Poly; 3] {
        [0, 1, 2].map(|i| self.components[i].homogeneous_part(k))
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> Field {
        Field {
            components: [
                f(&self.components[0]),
                f(&self.components[1]),
                f(&self.components[2]),
            ],
        }
    }
}

/// Renders in the field grammar: `dx = ...; dy = ...; dz = ...`.
impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dx = {}; dy = {}; dz = {}",
            self.components[0], self.components[1], self.components[2]
        )
    }
}

/// The D2-equivariant quadratic family `(ax + yz, by + xz, z ∓ xy)` with
/// symbolic `a`, `b`. [`FieldSign::Negative`] gives `z − xy`.
pub fn d2_field(sign: FieldSign) -> Field {
    let (x, y, z) = (Poly::x(), Poly::y(), Poly::z());
    let a = Poly::constant(ParamPoly::a());
    let b = Poly::constant(ParamPoly::b());
    let xy = &x * &y;
    let dz = match sign {
        FieldSign::Negative => &z - &xy,
        FieldSign::Positive => &z + &xy,
    };
    Field {
        components: [&(&a * &x) + &(&y * &z), &(&b * &y) + &(&x * &z), dz],
    }
}
