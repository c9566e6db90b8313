//! Exact Darboux polynomial search for polynomial vector fields on R^3.
//!
//! The crate is `no_std` (it needs `alloc`). It provides
//!
//! * [`algebra`]: rationals, polynomials in the parameters `a`, `b`, sparse
//!   polynomials in `x`, `y`, `z` and exact linear algebra,
//! * [`field`]: polynomial vector fields, the builtin D2 family and a small
//!   text grammar for fields,
//! * [`symmetry`]: finite linear symmetry groups and the cofactor
//!   symmetrization that reduces the search to constant cofactors,
//! * [`search`]: the homogeneous cascade solver, exact verification,
//!   generator reduction and parameter sweeps,
//! * [`dynamics`]: floating point checks of phase portraits (fixed points,
//!   RK4 trajectories, invariance drift, restricted planar fields,
//!   heteroclinic probes).
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod dynamics;
pub mod field;
pub mod search;
pub mod symmetry;

pub use algebra::{Monomial, ParamExp, ParamPoly, Poly, Rat, Var};
pub use field::{d2_field, Field, FieldSign, Param, ParamPoint};
pub use search::{
    find_darboux, reduce_to_generators, verify_darboux, DarbouxResult, GeneratorSet,
    ParameterCondition,
};
pub use symmetry::{d2_group, GroupElement, SymmetryGroup};
