//! Dense exact linear algebra.
//!
//! Kernels are computed with fraction-free (Bareiss) elimination over the
//! integers after clearing row denominators, so intermediate entries are
//! exact minors and never need rational normalization.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, ParamPoly, Rat};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl Matrix<Rat> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, Rat::zero())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .fold(Rat::zero(), |acc, t| acc + t)
            })
            .collect()
    }
}

impl Matrix<ParamPoly> {
    /// Evaluates every entry at `(a, b)`; without a point, every entry must
    /// already be constant.
    pub fn specialize(&self, point: Option<(&Rat, &Rat)>) -> Result<Matrix<Rat>, AlgebraError> {
        let mut data = Vec::with_capacity(self.data.len());
        for e in &self.data {
            let v = match (e.as_constant(), point) {
                (Some(c), _) => c,
                (None, Some((a, b))) => e.eval(a, b),
                (None, None) => return Err(AlgebraError::NeedsSpecialization),
            };
            data.push(v);
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

/// Integer echelon form produced by [`bareiss`].
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    /// Pivot column of each nonzero row, in row order.
    pivots: Vec<usize>,
    cols: usize,
}

fn integer_rows(m: &Matrix<Rat>) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter()
                .map(|v| v.numer() * (&lcm / v.denom()))
                .collect()
        })
        .filter(|row: &Vec<BigInt>| row.iter().any(|v| !v.is_zero()))
        .collect()
}

/// Fraction-free forward elimination. Every division is exact: after `k`
/// pivots each active entry equals a `(k+1)`-minor of the input.
fn bareiss(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pv = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let t = pv * &row[j] - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { t } else { t / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = pv.clone();
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots, cols }
}

impl Echelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Kernel basis: one vector per free column, free entry set to 1.
    fn kernel(&self) -> Vec<Vec<Rat>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (i, &pc) in self.pivots.iter().enumerate().rev() {
                let row = &self.rows[i];
                let mut s = Rat::zero();
                for j in pc + 1..self.cols {
                    if !row[j].is_zero() && !v[j].is_zero() {
                        s += Rat::from_integer(row[j].clone()) * &v[j];
                    }
                }
                v[pc] = -s / Rat::from_integer(row[pc].clone());
            }
            basis.push(v);
        }
        basis
    }
}

/// Basis of `{ v : M v = 0 }`; empty when the kernel is trivial.
pub fn nullspace(m: &Matrix<Rat>) -> Vec<Vec<Rat>> {
    bareiss(integer_rows(m), m.cols()).kernel()
}

/// Kernel of a matrix over `Q[a, b]`, specialized at `point` when entries
/// depend on the parameters.
pub fn nullspace_param(
    m: &Matrix<ParamPoly>,
    point: Option<(&Rat, &Rat)>,
) -> Result<Vec<Vec<Rat>>, AlgebraError> {
    Ok(nullspace(&m.specialize(point)?))
}

pub fn rank(m: &Matrix<Rat>) -> usize {
    bareiss(integer_rows(m), m.cols()).rank()
}

/// Reduced row echelon form of the row set `rows` (each of length `cols`),
/// scanning columns in the order given by `column_order`. Zero rows are
/// dropped; each returned row has a 1 at its pivot and zeros at every
/// other row's pivot.
pub fn rref_rows(rows: &[Vec<Rat>], column_order: &[usize]) -> Vec<Vec<Rat>> {
    let mut work: Vec<Vec<Rat>> = rows.to_vec();
    let mut out_rows = 0;
    for &c in column_order {
        if out_rows == work.len() {
            break;
        }
        let Some(p) = (out_rows..work.len()).find(|&i| !work[i][c].is_zero()) else {
            continue;
        };
        work.swap(out_rows, p);
        let inv = work[out_rows][c].recip();
        for v in work[out_rows].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = work[out_rows].clone();
        for (i, row) in work.iter_mut().enumerate() {
            if i == out_rows || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        out_rows += 1;
    }
    work.truncate(out_rows);
    work
}

/// Scales a vector so its entries are coprime integers with a positive
/// first nonzero entry.
pub fn primitive(v: &[Rat]) -> Vec<Rat> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| if x.is_negative() { -BigInt::one() } else { BigInt::one() })
        .unwrap_or_else(BigInt::one);
    ints.into_iter()
        .map(|x| Rat::from_integer(x / &g * &sign))
        .collect()
}
