//! Exact search for Darboux polynomials with constant cofactor.
//!
//! For a field with `X(0) = 0` the Lie derivative maps polynomials of
//! degree `<= n` into polynomials of degree `<= n + 1` and is block lower
//! triangular by degree: the linear part `A` keeps the degree and the
//! quadratic part `N` raises it by one. A Darboux polynomial with constant
//! cofactor `c0` is a kernel vector of `L_X - c0` whose top-degree image
//! vanishes; the solver computes that kernel exactly over the rationals,
//! by back-substitution when `A` is diagonal and by fraction-free
//! elimination otherwise.

mod candidates;
mod cascade;
mod catalog;
mod find;
mod generators;
mod result;
mod sweep;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::field::FieldError;

pub use candidates::{candidate_cofactors, candidate_values};
pub use cascade::{build_a_matrix, build_n_matrix, CascadeOperators};
pub use catalog::{catalog, CatalogEntry};
pub use find::{cascade_solve, darboux_cofactor, darboux_residual, find_darboux, verify_darboux};
pub use generators::{reduce_to_generators, Derivation, DerivedResult, GeneratorSet};
pub use result::{canonical_cmp, DarbouxResult, ParameterCondition};
pub use sweep::{
    classify_locus, default_grid, grid, parameter_sweep, parameter_sweep_from, special_loci_points,
    GridAxis, SweepRow,
};

/// Degree bound used when none is given.
pub const DEFAULT_DEGREE_BOUND: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("the field depends on the parameters; specialize a and b first")]
    NeedsSpecialization,
    #[error("the field has a constant term (X(0) != 0), which the cascade solver does not handle")]
    ConstantTerm,
    #[error("degree bound must be at least 1 (got {0})")]
    DegreeBound(u32),
    #[error("the linear part of the field is not diagonal")]
    NonDiagonalLinearPart,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
