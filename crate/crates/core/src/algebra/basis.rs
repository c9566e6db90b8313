use alloc::vec::Vec;

use super::{AlgebraError, Monomial, ParamPoly, Poly, Rat};

/// Number of monomials in three variables of total degree at most `d`,
/// i.e. `C(d + 3, 3)`.
pub fn basis_size(d: u32) -> usize {
    let d = d as usize;
    (d + 1) * (d + 2) * (d + 3) / 6
}

/// Number of monomials of total degree exactly `d`.
fn slice_size(d: u32) -> usize {
    let d = d as usize;
    (d + 1) * (d + 2) / 2
}

/// Monomials of degree `<= max_degree` in ascending graded-lex order.
///
/// Index `i` of a coefficient vector refers to `monomials()[i]`. The
/// position of a monomial has a closed form, so lookups never search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    max_degree: u32,
    monomials: Vec<Monomial>,
}

impl MonomialBasis {
    pub fn new(max_degree: u32) -> Self {
        let mut monomials = Vec::with_capacity(basis_size(max_degree));
        for d in 0..=max_degree {
            monomials.extend(Self::slice(d));
        }
        MonomialBasis {
            max_degree,
            monomials,
        }
    }

    /// Monomials of degree exactly `d`, ascending.
    pub fn slice(d: u32) -> impl Iterator<Item = Monomial> {
        (0..=d).flat_map(move |l| (0..=d - l).map(move |m| Monomial::new(l, m, d - l - m)))
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        let d = m.degree();
        if d > self.max_degree {
            return None;
        }
        Some(Self::global_index(m))
    }

    /// Position of `m` among all monomials in ascending graded-lex order.
    pub fn global_index(m: &Monomial) -> usize {
        let d = m.degree();
        let below = if d == 0 { 0 } else { basis_size(d - 1) };
        below + Self::slice_index(m)
    }

    /// Position of `m` among the monomials of its own degree.
    pub fn slice_index(m: &Monomial) -> usize {
        let d = m.degree() as usize;
        let l = m.0[0] as usize;
        // Each x-exponent l' < l contributes d - l' + 1 monomials.
        let before: usize = (0..l).map(|lp| d - lp + 1).sum();
        before + m.0[1] as usize
    }

    /// Number of monomials of degree exactly `d`.
    pub fn slice_len(d: u32) -> usize {
        slice_size(d)
    }

    /// Coordinates of `p` in this basis.
    pub fn coeff_vector(&self, p: &Poly) -> Result<Vec<ParamPoly>, AlgebraError> {
        let degree = p.total_degree();
        if degree > self.max_degree {
            return Err(AlgebraError::DegreeOverflow {
                degree,
                bound: self.max_degree,
            });
        }
        let mut v = alloc::vec![ParamPoly::zero(); self.len()];
        for (m, c) in p.terms() {
            v[Self::global_index(m)] = c.clone();
        }
        Ok(v)
    }

    /// Coordinates of a parameter-free polynomial as rationals.
    pub fn rat_vector(&self, p: &Poly) -> Result<Vec<Rat>, AlgebraError> {
        self.coeff_vector(p)?
            .into_iter()
            .map(|c| c.as_constant().ok_or(AlgebraError::NotRational))
            .collect()
    }

    pub fn from_coeff_vector(&self, v: &[ParamPoly]) -> Result<Poly, AlgebraError> {
        if v.len() != self.len() {
            return Err(AlgebraError::BadVectorLength {
                got: v.len(),
                expected: self.len(),
            });
        }
        Ok(from_coeff_vector(&self.monomials, v.iter().cloned()))
    }

    pub fn from_rat_vector(&self, v: &[Rat]) -> Result<Poly, AlgebraError> {
        if v.len() != self.len() {
            return Err(AlgebraError::BadVectorLength {
                got: v.len(),
                expected: self.len(),
            });
        }
        Ok(from_coeff_vector(
            &self.monomials,
            v.iter().cloned().map(ParamPoly::constant),
        ))
    }
}

/// Builds `Σ c_i m_i` from parallel monomial and coefficient sequences.
pub fn from_coeff_vector(monomials: &[Monomial], coeffs: impl IntoIterator<Item = ParamPoly>) -> Poly {
    let mut p = Poly::zero();
    for (m, c) in monomials.iter().zip(coeffs) {
        p.add_term(*m, c);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(basis_size(2), 10);
        assert_eq!(basis_size(8), 165);
        assert_eq!(MonomialBasis::new(8).len(), 165);
    }

    #[test]
    fn closed_form_index_matches_enumeration() {
        let b = MonomialBasis::new(7);
        for (i, m) in b.monomials().iter().enumerate() {
            assert_eq!(b.index_of(m), Some(i));
        }
        assert!(b.monomials().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn overflow_is_an_error() {
        let b = MonomialBasis::new(2);
        let p = Poly::x().pow(3);
        assert_eq!(
            b.coeff_vector(&p),
            Err(AlgebraError::DegreeOverflow { degree: 3, bound: 2 })
        );
    }
}
