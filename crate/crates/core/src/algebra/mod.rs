//! Exact arithmetic: rationals, parameter polynomials, phase-space
//! polynomials and fraction-free linear algebra.

mod basis;
pub mod linalg;
mod monomial;
mod param;
mod poly;
mod rat;

pub use basis::{basis_size, from_coeff_vector, MonomialBasis};
pub use monomial::{Monomial, Var};
pub use param::{ParamExp, ParamPoly};
pub use poly::Poly;
pub use rat::{parse_rat, rat, rat_to_f64, Rat};

use thiserror::Error;

/// Largest total degree a monomial may reach unless configured otherwise.
pub const DEFAULT_MAX_DEGREE: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("polynomial of degree {degree} exceeds the degree bound {bound}")]
    DegreeOverflow { degree: u32, bound: u32 },
    #[error("coefficient vector has length {got}, expected {expected}")]
    BadVectorLength { got: usize, expected: usize },
    #[error("matrix entries depend on the parameters; a specialization is required")]
    NeedsSpecialization,
    #[error("coefficient depends on the parameters where a rational was required")]
    NotRational,
}
