//! Reference implementations used as test oracles.
//!
//! Nothing here calls the solver or the polynomial arithmetic under test:
//! polynomials are plain exponent maps, Lie derivatives are expanded term
//! by term, and linear algebra is textbook Gauss-Jordan over the
//! rationals.

#![allow(dead_code)]

use std::collections::BTreeMap;

use darboux_core::algebra::rat;
use darboux_core::{Poly, Rat};
use num_traits::{One, Zero};
use proptest::prelude::*;

pub type Exp = [u32; 3];
pub type Dense = BTreeMap<Exp, Rat>;

/// Exponent map of a parameter-free polynomial.
pub fn to_dense(p: &Poly) -> Dense {
    p.terms()
        .map(|(m, c)| (m.0, c.as_constant().expect("parameter-free polynomial")))
        .collect()
}

pub fn eval_dense(p: &Dense, at: &[Rat; 3]) -> Rat {
    p.iter().fold(Rat::zero(), |acc, (e, c)| {
        let mut t = c.clone();
        for i in 0..3 {
            for _ in 0..e[i] {
                t *= &at[i];
            }
        }
        acc + t
    })
}

fn add_to(p: &mut Dense, e: Exp, c: Rat) {
    let entry = p.entry(e).or_insert_with(Rat::zero);
    *entry += c;
    if entry.is_zero() {
        p.remove(&e);
    }
}

/// `L_X m` for the monomial `m`, with `X` given by three exponent maps.
pub fn lie_monomial(field: &[Dense; 3], m: Exp) -> Dense {
    let mut out = Dense::new();
    for i in 0..3 {
        if m[i] == 0 {
            continue;
        }
        let mut dm = m;
        dm[i] -= 1;
        for (e, c) in &field[i] {
            let prod = [dm[0] + e[0], dm[1] + e[1], dm[2] + e[2]];
            add_to(&mut out, prod, c * Rat::from_integer(m[i].into()));
        }
    }
    out
}

/// `(ax + yz, by + xz, z - s xy)` written out by hand.
pub fn d2_dense(a: &Rat, b: &Rat, negative: bool) -> [Dense; 3] {
    let s = if negative { rat(-1, 1) } else { rat(1, 1) };
    let mut fx = Dense::new();
    add_to(&mut fx, [1, 0, 0], a.clone());
    add_to(&mut fx, [0, 1, 1], Rat::one());
    let mut fy = Dense::new();
    add_to(&mut fy, [0, 1, 0], b.clone());
    add_to(&mut fy, [1, 0, 1], Rat::one());
    let mut fz = Dense::new();
    add_to(&mut fz, [0, 0, 1], Rat::one());
    add_to(&mut fz, [1, 1, 0], s);
    [fx, fy, fz]
}

/// `(σ(y - x), ρx - y - xz, xy - βz)`.
pub fn lorenz_dense(sigma: i64, rho: i64, beta: i64) -> [Dense; 3] {
    let mut fx = Dense::new();
    add_to(&mut fx, [0, 1, 0], rat(sigma, 1));
    add_to(&mut fx, [1, 0, 0], rat(-sigma, 1));
    let mut fy = Dense::new();
    add_to(&mut fy, [1, 0, 0], rat(rho, 1));
    add_to(&mut fy, [0, 1, 0], rat(-1, 1));
    add_to(&mut fy, [1, 0, 1], rat(-1, 1));
    let mut fz = Dense::new();
    add_to(&mut fz, [1, 1, 0], Rat::one());
    add_to(&mut fz, [0, 0, 1], rat(-beta, 1));
    [fx, fy, fz]
}

/// All exponents of total degree `<= d`.
pub fn exponents(d: u32) -> Vec<Exp> {
    let mut v = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            for k in 0..=d - i - j {
                v.push([i, j, k]);
            }
        }
    }
    v.sort_by_key(|e| (e[0] + e[1] + e[2], std::cmp::Reverse(*e)));
    v
}

/// Gauss-Jordan kernel basis of a dense rational matrix.
pub fn kernel(mut m: Vec<Vec<Rat>>, cols: usize) -> Vec<Vec<Rat>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Rat::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot = m[r].clone();
                for (v, p) in m[i].iter_mut().zip(&pivot) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rat::zero(); cols];
            v[free] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}

pub fn rank_of(m: Vec<Vec<Rat>>, cols: usize) -> usize {
    cols - kernel(m, cols).len()
}

/// The Lie derivative on polynomials of degree `<= d`, as a dense matrix
/// from coefficient vectors over `exponents(d)` to coefficient vectors
/// over `exponents(d + field degree - 1)`.
pub struct LieMatrix {
    pub domain: Vec<Exp>,
    pub codomain: Vec<Exp>,
    pub m: Vec<Vec<Rat>>,
}

impl LieMatrix {
    pub fn new(field: &[Dense; 3], d: u32) -> Self {
        let top = field
            .iter()
            .flat_map(|c| c.keys())
            .map(|e| e[0] + e[1] + e[2])
            .max()
            .unwrap_or(1);
        let domain = exponents(d);
        let codomain = exponents(d + top.max(1) - 1);
        let index: BTreeMap<Exp, usize> = codomain.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let mut m = vec![vec![Rat::zero(); domain.len()]; codomain.len()];
        for (j, e) in domain.iter().enumerate() {
            for (img, c) in lie_monomial(field, *e) {
                m[index[&img]][j] = c;
            }
        }
        LieMatrix { domain, codomain, m }
    }

    /// Kernel of `L_X - k`.
    pub fn kernel_at(&self, k: &Rat) -> Vec<Vec<Rat>> {
        let mut shifted = self.m.clone();
        for (j, e) in self.domain.iter().enumerate() {
            let i = self.codomain.iter().position(|x| x == e).unwrap();
            shifted[i][j] -= k;
        }
        kernel(shifted, self.domain.len())
    }

    /// Eigenvalues of `L_X` on polynomials of degree `<= d`, valid when the
    /// matrix is triangular in this basis (the field fixes the origin and
    /// its linear part is diagonal); panics otherwise.
    pub fn triangular_eigenvalues(&self) -> Vec<Rat> {
        let deg = |e: &Exp| e[0] + e[1] + e[2];
        let mut out: Vec<Rat> = Vec::new();
        for (j, ej) in self.domain.iter().enumerate() {
            for (i, ei) in self.codomain.iter().enumerate() {
                let below = deg(ei) < deg(ej) || (deg(ei) == deg(ej) && ei != ej);
                assert!(!below || self.m[i][j].is_zero(), "Lie matrix is not triangular");
            }
            let i = self.codomain.iter().position(|x| x == ej).unwrap();
            if !out.contains(&self.m[i][j]) {
                out.push(self.m[i][j].clone());
            }
        }
        out.sort();
        out
    }

    pub fn vector(&self, p: &Dense) -> Vec<Rat> {
        self.domain
            .iter()
            .map(|e| p.get(e).cloned().unwrap_or_else(Rat::zero))
            .collect()
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.m
            .iter()
            .map(|row| row.iter().zip(v).fold(Rat::zero(), |s, (a, b)| s + a * b))
            .collect()
    }
}

/// For every cofactor value with a nontrivial kernel: the kernel dimension
/// of `L_X - k` on polynomials of degree `<= d`.
pub fn darboux_dimensions(field: &[Dense; 3], d: u32) -> BTreeMap<Rat, usize> {
    let lie = LieMatrix::new(field, d);
    lie.triangular_eigenvalues()
        .into_iter()
        .filter_map(|k| {
            let n = lie.kernel_at(&k).len();
            (n > 0).then_some((k, n))
        })
        .collect()
}

/// Small nonzero rationals `p/q` with `|p| <= 9`, `1 <= q <= 9`.
pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=9).prop_map(|(p, q)| rat(p, q))
}

/// Parameter-free polynomials of degree `<= max_degree` with integer
/// coefficients in `[-9, 9]`.
pub fn poly_strategy(max_degree: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    let exps = exponents(max_degree);
    proptest::collection::vec((0..exps.len(), -9i64..=9), 0..=max_terms).prop_map(move |terms| {
        let mut p = Poly::zero();
        for (i, c) in terms {
            let e = exps[i];
            p = &p + &Poly::term(
                darboux_core::Monomial::new(e[0], e[1], e[2]),
                darboux_core::ParamPoly::from_int(c),
            );
        }
        p
    })
}

/// Random rational point for evaluation checks.
pub fn point_strategy() -> impl Strategy<Value = [Rat; 3]> {
    (small_rat(), small_rat(), small_rat()).prop_map(|(x, y, z)| [x, y, z])
}
