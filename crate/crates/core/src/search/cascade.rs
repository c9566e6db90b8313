//! The Darboux relation `L_X f = c0 f` as a linear system on the
//! coefficients of `f`.
//!
//! Splitting by homogeneous degree, the linear part of `X` acts on each
//! slice (the operator `A`) and the quadratic part maps slice `j` to slice
//! `j + 1` (the operator `N`). For `X(0) = 0` the full matrix of `L_X` is
//! block lower triangular in the degree; when `A` is diagonal it is lower
//! triangular outright and the system can be eliminated bottom-up with the
//! diagonal as pivots, leaving only the resonant monomials (`A m = c0 m`)
//! as unknowns.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::SearchError;
use crate::algebra::linalg::{nullspace, rref_rows, Matrix};
use crate::algebra::{basis_size, Monomial, MonomialBasis, ParamPoly, Poly, Rat};
use crate::field::Field;

/// Matrix of `L_X` restricted to polynomials of degree `<= bound`, for a
/// parameter-free field with `X(0) = 0`.
#[derive(Debug, Clone)]
pub struct CascadeOperators {
    basis: MonomialBasis,
    /// Entries of row `n`: `(column, coefficient of x^n in L_X x^m)`.
    rows: Vec<Vec<(usize, Rat)>>,
    /// `A` on each basis monomial, when the linear part is diagonal.
    diagonal: Option<Vec<Rat>>,
}

impl CascadeOperators {
    pub fn new(field: &Field, bound: u32) -> Result<Self, SearchError> {
        if !field.is_parameter_free() {
            return Err(SearchError::NeedsSpecialization);
        }
        if field.homogeneous_part(0).iter().any(|p| !p.is_zero()) {
            return Err(SearchError::ConstantTerm);
        }
        let basis = MonomialBasis::new(bound);
        let top = bound + field.degree().max(1) - 1;
        let mut rows: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); basis_size(top)];
        let mut diagonal = Vec::with_capacity(basis.len());
        let mut is_diagonal = true;
        for (col, m) in basis.monomials().iter().enumerate() {
            let image = field.lie_derivative(&Poly::term(*m, ParamPoly::one()));
            let mut diag = Rat::zero();
            for (n, c) in image.terms() {
                let c = c.as_constant().ok_or(SearchError::NeedsSpecialization)?;
                if n == m {
                    diag = c.clone();
                } else if n.degree() == m.degree() {
                    is_diagonal = false;
                }
                rows[MonomialBasis::global_index(n)].push((col, c));
            }
            diagonal.push(diag);
        }
        Ok(CascadeOperators {
            basis,
            rows,
            diagonal: is_diagonal.then_some(diagonal),
        })
    }

    pub fn bound(&self) -> u32 {
        self.basis.max_degree()
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    /// True when the linear part acts diagonally on monomials.
    pub fn is_diagonal(&self) -> bool {
        self.diagonal.is_some()
    }

    /// Eigenvalue of `A` on each basis monomial, when `A` is diagonal.
    pub fn diagonal(&self) -> Option<&[Rat]> {
        self.diagonal.as_deref()
    }

    /// Dense matrix of `L_X - c0` from degree `<= bound` to degree
    /// `<= bound + deg X - 1`.
    pub fn matrix(&self, c0: &Rat) -> Matrix<Rat> {
        let mut m = Matrix::zeros(self.rows.len(), self.basis.len());
        for (r, entries) in self.rows.iter().enumerate() {
            for (c, v) in entries {
                m.set(r, *c, v.clone());
            }
            if r < self.basis.len() {
                let d = m.get(r, r) - c0;
                m.set(r, r, d);
            }
        }
        m
    }

    /// Basis of `{ f : deg f <= bound, L_X f = c0 f }` as coefficient
    /// vectors.
    pub fn kernel(&self, c0: &Rat) -> Vec<Vec<Rat>> {
        match &self.diagonal {
            Some(diag) => self.triangular_kernel(diag, c0),
            None => nullspace(&self.matrix(c0)),
        }
    }

    /// Bottom-up elimination: every non-resonant coefficient is expressed
    /// through the resonant ones, and the remaining rows become
    /// constraints on those.
    fn triangular_kernel(&self, diag: &[Rat], c0: &Rat) -> Vec<Vec<Rat>> {
        let n = self.basis.len();
        let free: Vec<usize> = (0..n).filter(|&i| diag[i] == *c0).collect();
        if free.is_empty() {
            return Vec::new();
        }
        let p = free.len();
        let combine = |exprs: &[Option<Vec<Rat>>], row: usize| -> Option<Vec<Rat>> {
            let mut acc: Option<Vec<Rat>> = None;
            for (c, v) in &self.rows[row] {
                if *c == row {
                    continue;
                }
                if let Some(e) = &exprs[*c] {
                    let acc = acc.get_or_insert_with(|| vec![Rat::zero(); p]);
                    for (a, x) in acc.iter_mut().zip(e) {
                        if !x.is_zero() {
                            *a += v * x;
                        }
                    }
                }
            }
            acc.filter(|v| v.iter().any(|x| !x.is_zero()))
        };

        let mut exprs: Vec<Option<Vec<Rat>>> = vec![None; n];
        let mut constraints: Vec<Vec<Rat>> = Vec::new();
        let mut next_free = 0;
        for i in 0..n {
            let s = combine(&exprs, i);
            if next_free < p && free[next_free] == i {
                let mut e = vec![Rat::zero(); p];
                e[next_free] = Rat::one();
                exprs[i] = Some(e);
                next_free += 1;
                constraints.extend(s);
            } else if let Some(s) = s {
                let inv = (&diag[i] - c0).recip();
                exprs[i] = Some(s.into_iter().map(|x| -(x * &inv)).collect());
            }
        }
        for row in n..self.rows.len() {
            constraints.extend(combine(&exprs, row));
        }

        let params = if constraints.is_empty() {
            (0..p)
                .map(|k| {
                    let mut e = vec![Rat::zero(); p];
                    e[k] = Rat::one();
                    e
                })
                .collect()
        } else {
            nullspace(&Matrix::from_rows(constraints, p))
        };
        params
            .iter()
            .map(|w| {
                exprs
                    .iter()
                    .map(|e| match e {
                        Some(e) => e
                            .iter()
                            .zip(w)
                            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                            .fold(Rat::zero(), |acc, (a, b)| acc + a * b),
                        None => Rat::zero(),
                    })
                    .collect()
            })
            .collect()
    }

    /// Canonical basis of the span of `vectors`: reduced row echelon form
    /// with columns scanned from the largest monomial down. Each returned
    /// polynomial is monic, and the ones of degree `<= j` span the
    /// degree-`<= j` part of the space.
    pub fn canonical_basis(&self, vectors: &[Vec<Rat>]) -> Vec<Poly> {
        let order: Vec<usize> = (0..self.basis.len()).rev().collect();
        rref_rows(vectors, &order)
            .iter()
            .map(|v| {
                self.basis
                    .from_rat_vector(v)
                    .expect("vector length matches the basis")
            })
            .collect()
    }
}

/// Matrix of `v ↦ Σ_i parts_i ∂v/∂x_i` from slice `from` to slice `to`.
fn slice_operator(parts: &[Poly; 3], from: u32, to: u32) -> Matrix<ParamPoly> {
    let op = Field::with_degree_bound(parts.clone(), u32::MAX).expect("no degree bound");
    let cols: Vec<Monomial> = MonomialBasis::slice(from).collect();
    let mut m = Matrix::filled(MonomialBasis::slice_len(to), cols.len(), ParamPoly::zero());
    for (c, mono) in cols.iter().enumerate() {
        let image = op.lie_derivative(&Poly::term(*mono, ParamPoly::one()));
        for (n, v) in image.terms() {
            if n.degree() == to {
                m.set(MonomialBasis::slice_index(n), c, v.clone());
            }
        }
    }
    m
}

/// The operator `A` (linear part of the field) on the degree-`j` slice.
pub fn build_a_matrix(field: &Field, j: u32) -> Matrix<ParamPoly> {
    slice_operator(&field.homogeneous_part(1), j, j)
}

/// The operator `N` (quadratic part of the field) from the degree-`j`
/// slice to the degree-`(j + 1)` slice.
pub fn build_n_matrix(field: &Field, j: u32) -> Matrix<ParamPoly> {
    slice_operator(&field.homogeneous_part(2), j, j + 1)
}
