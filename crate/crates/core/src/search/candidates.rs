//! Constant cofactors that can possibly occur up to a degree bound.
//!
//! Let `f_m` be the lowest nonvanishing homogeneous component of a Darboux
//! polynomial with constant cofactor `c0` of a field with `X(0) = 0`. Only
//! the linear part `A` of the field maps slice `m` into itself and nothing
//! of lower degree exists to feed it, so `(A - c0) f_m = 0`: `c0` is an
//! eigenvalue of `A` on slice `m`. For diagonal `A = diag(α)` these are the
//! values `⟨n, α⟩` over multi-indices with `|n| = m`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::cascade::CascadeOperators;
use super::SearchError;
use crate::algebra::{rat_to_f64, Monomial, MonomialBasis, ParamPoly, Rat, Var};
use crate::dynamics::eigenvalues3;
use crate::field::Field;

/// Diagonal entries `α_i` of the linear part, when it is diagonal.
fn diagonal_linear_part(field: &Field) -> Option<[ParamPoly; 3]> {
    let lin = field.homogeneous_part(1);
    for (i, v) in Var::ALL.iter().enumerate() {
        if lin[i].terms().any(|(m, _)| *m != Monomial::var(*v)) {
            return None;
        }
    }
    Some(Var::ALL.map(|v| lin[v.index()].coeff(&Monomial::var(v))))
}

/// `{ ⟨n, α⟩ : |n| <= bound }` over `Q[a, b]`, for a field whose linear
/// part is `diag(α)`.
pub fn candidate_cofactors(field: &Field, bound: u32) -> Result<BTreeSet<ParamPoly>, SearchError> {
    let alpha = diagonal_linear_part(field).ok_or(SearchError::NonDiagonalLinearPart)?;
    let mut out = BTreeSet::new();
    for m in MonomialBasis::new(bound).monomials() {
        let mut c = ParamPoly::zero();
        for (i, a) in alpha.iter().enumerate() {
            c = &c + &a.scale(&Rat::from_integer(m.0[i].into()));
        }
        out.insert(c);
    }
    Ok(out)
}

/// Rational candidates for a parameter-free field. For a diagonal linear
/// part these are exact; otherwise they are recovered from floating point
/// eigenvalues of the linear part: with `D` the common denominator of its
/// entries, `D c0` is an eigenvalue of an integer matrix and hence an
/// integer whenever it is rational. Spurious candidates are harmless, as
/// each one is checked by exact elimination.
pub fn candidate_values(field: &Field, ops: &CascadeOperators) -> Vec<Rat> {
    if let Some(diag) = ops.diagonal() {
        let set: BTreeSet<Rat> = diag.iter().cloned().collect();
        return set.into_iter().collect();
    }
    let lin = field.homogeneous_part(1);
    let mut entries: [[Rat; 3]; 3] = Default::default();
    let mut den = BigInt::one();
    for (i, row) in entries.iter_mut().enumerate() {
        for v in Var::ALL {
            let c = lin[i]
                .coeff(&Monomial::var(v))
                .as_constant()
                .unwrap_or_default();
            den = den.lcm(c.denom());
            row[v.index()] = c;
        }
    }
    let j = entries.each_ref().map(|row| row.each_ref().map(rat_to_f64));
    let lambda = eigenvalues3(&j);
    let d = rat_to_f64(&Rat::from_integer(den.clone()));
    let mut set = BTreeSet::new();
    for m in MonomialBasis::new(ops.bound()).monomials() {
        let s = lambda
            .iter()
            .zip(m.0)
            .fold(num_complex::Complex64::new(0.0, 0.0), |acc, (l, e)| acc + l * e as f64);
        let scaled = d * s.re;
        let rounded = libm::round(scaled);
        let tol = 1e-4 * (1.0 + scaled.abs());
        if s.im.abs() * d <= tol && (scaled - rounded).abs() <= tol && rounded.abs() < 9.0e15 {
            set.insert(Rat::new(BigInt::from(rounded as i64), den.clone()));
        }
    }
    set.into_iter().collect()
}
