//! Finite linear symmetry groups acting on R^3.
//!
//! For a field `X` equivariant under `G`, every Darboux pair `(f, k)` gives
//! pairs `(f∘g, k∘g)` and the orbit product `(Π f∘g, Σ k∘g)`. Summing a
//! degree-one cofactor over the D2 group kills every linear term, so the
//! orbit product of any Darboux polynomial has a constant cofactor.

use alloc::vec::Vec;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{rat, ParamPoly, Poly, Rat};
use crate::field::Field;
use crate::search::verify_darboux;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("the pair (f, k) does not satisfy L_X f = k f")]
    NotDarboux,
    #[error("the field is not equivariant under the group")]
    NotEquivariant,
    #[error("cofactor has degree {0}, expected at most 1")]
    CofactorDegree(u32),
}

/// Linear map `x ↦ M x` with rational `M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    matrix: [[Rat; 3]; 3],
}

impl GroupElement {
    pub fn new(matrix: [[Rat; 3]; 3]) -> Self {
        GroupElement { matrix }
    }

    pub fn identity() -> Self {
        Self::diagonal([1, 1, 1])
    }

    pub fn diagonal(signs: [i64; 3]) -> Self {
        let mut m: [[Rat; 3]; 3] = Default::default();
        for (i, s) in signs.iter().enumerate() {
            m[i][i] = rat(*s, 1);
        }
        GroupElement { matrix: m }
    }

    pub fn matrix(&self) -> &[[Rat; 3]; 3] {
        &self.matrix
    }

    /// `self ∘ other`, i.e. the matrix product `self · other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let mut m: [[Rat; 3]; 3] = Default::default();
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).fold(Rat::zero(), |acc, k| {
                    acc + &self.matrix[i][k] * &other.matrix[k][j]
                });
            }
        }
        GroupElement { matrix: m }
    }

    pub fn is_identity(&self) -> bool {
        (0..3).all(|i| {
            (0..3).all(|j| {
                let v = &self.matrix[i][j];
                if i == j {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            })
        })
    }

    /// `g · v` for a vector of polynomials.
    fn apply_to(&self, v: &[Poly; 3]) -> [Poly; 3] {
        [0, 1, 2].map(|i| {
            let mut acc = Poly::zero();
            for (j, vj) in v.iter().enumerate() {
                let c = &self.matrix[i][j];
                if !c.is_zero() {
                    acc = &acc + &vj.scale_rat(c);
                }
            }
            acc
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryGroup {
    elements: Vec<GroupElement>,
}

impl SymmetryGroup {
    /// Builds a group from an explicit element list. Returns `None` unless
    /// the list contains the identity and is closed under composition.
    pub fn from_elements(elements: Vec<GroupElement>) -> Option<Self> {
        let group = SymmetryGroup { elements };
        group.is_closed().then_some(group)
    }

    pub fn trivial() -> Self {
        SymmetryGroup {
            elements: alloc::vec![GroupElement::identity()],
        }
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.elements.iter().any(GroupElement::is_identity)
            && self.elements.iter().all(|g| {
                self.elements
                    .iter()
                    .all(|h| self.elements.contains(&g.compose(h)))
            })
    }
}

/// The four diagonal sign matrices with an even number of `-1` entries.
pub fn d2_group() -> SymmetryGroup {
    SymmetryGroup {
        elements: alloc::vec![
            GroupElement::diagonal([1, 1, 1]),
            GroupElement::diagonal([-1, -1, 1]),
            GroupElement::diagonal([-1, 1, -1]),
            GroupElement::diagonal([1, -1, -1]),
        ],
    }
}

/// `f ∘ g`.
pub fn pullback(f: &Poly, g: &GroupElement) -> Poly {
    f.compose_linear(g.matrix())
}

/// True iff `X(g x) = g X(x)` identically for every `g` in the group.
pub fn is_equivariant(field: &Field, group: &SymmetryGroup) -> bool {
    group.elements().iter().all(|g| {
        let lhs = field.components().clone().map(|c| pullback(&c, g));
        lhs == g.apply_to(field.components())
    })
}

/// `Σ_{g ∈ G} k ∘ g` for a cofactor of degree at most one.
pub fn symmetrized_cofactor(k: &Poly, group: &SymmetryGroup) -> Result<Poly, SymmetryError> {
    let d = k.total_degree();
    if d > 1 {
        return Err(SymmetryError::CofactorDegree(d));
    }
    Ok(group
        .elements()
        .iter()
        .fold(Poly::zero(), |acc, g| &acc + &pullback(k, g)))
}

/// `(Π_{g ∈ G} f ∘ g, Σ_{g ∈ G} k ∘ g)`, checked to be a Darboux pair.
pub fn orbit_product(
    f: &Poly,
    k: &Poly,
    field: &Field,
    group: &SymmetryGroup,
) -> Result<(Poly, Poly), SymmetryError> {
    if !verify_darboux(field, f, k) {
        return Err(SymmetryError::NotDarboux);
    }
    if !is_equivariant(field, group) {
        return Err(SymmetryError::NotEquivariant);
    }
    let product = group
        .elements()
        .iter()
        .fold(Poly::one(), |acc, g| &acc * &pullback(f, g));
    let cofactor = group
        .elements()
        .iter()
        .fold(Poly::zero(), |acc, g| &acc + &pullback(k, g));
    debug_assert!(verify_darboux(field, &product, &cofactor));
    Ok((product, cofactor))
}

/// Constant part of a symmetrized cofactor, when it is constant.
pub fn constant_value(k: &Poly) -> Option<ParamPoly> {
    k.is_constant().then(|| k.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{d2_field, parse_field, FieldSign};

    fn p(s: &str) -> Poly {
        crate::field::parse_poly(s).unwrap()
    }

    #[test]
    fn d2_group_structure() {
        let g = d2_group();
        assert_eq!(g.len(), 4);
        assert!(g.is_closed());
        let prod = GroupElement::diagonal([-1, -1, 1]).compose(&GroupElement::diagonal([-1, 1, -1]));
        assert_eq!(prod, GroupElement::diagonal([1, -1, -1]));
        assert!(g.elements().iter().all(|e| e.compose(e).is_identity()));
        assert!(SymmetryGroup::from_elements(alloc::vec![GroupElement::diagonal([-1, 1, 1])]).is_none());
    }

    #[test]
    fn equivariance() {
        let g = d2_group();
        assert!(is_equivariant(&d2_field(FieldSign::Negative), &g));
        assert!(is_equivariant(&d2_field(FieldSign::Positive), &g));
        let bad = parse_field("dx = y; dy = 0; dz = 0").unwrap();
        assert!(!is_equivariant(&bad, &g));
        assert!(is_equivariant(&bad, &SymmetryGroup::trivial()));
    }

    #[test]
    fn pullbacks() {
        assert_eq!(pullback(&p("x^2+z^2"), &GroupElement::diagonal([-1, -1, 1])), p("x^2+z^2"));
        assert_eq!(pullback(&p("x"), &GroupElement::diagonal([-1, -1, 1])), p("-x"));
        assert_eq!(pullback(&p("x*y"), &GroupElement::diagonal([1, -1, -1])), p("-x*y"));
    }

    #[test]
    fn symmetrized_cofactors() {
        let g = d2_group();
        assert_eq!(symmetrized_cofactor(&p("2"), &g).unwrap(), p("8"));
        assert_eq!(symmetrized_cofactor(&p("3 + x"), &g).unwrap(), p("12"));
        assert!(symmetrized_cofactor(&p("z"), &g).unwrap().is_zero());
        assert!(symmetrized_cofactor(&p("x^2"), &g).is_err());
    }

    #[test]
    fn orbit_products() {
        let g = d2_group();
        let x = d2_field(FieldSign::Negative);
        let a1 = x.specialize(Some(&rat(1, 1)), Some(&rat(-2, 1))).unwrap();
        let (prod, k) = orbit_product(&p("x^2+z^2"), &p("2"), &a1, &g).unwrap();
        assert_eq!(prod, p("x^2+z^2").pow(4));
        assert_eq!(k, p("8"));

        let (prod, k) = orbit_product(&Poly::one(), &Poly::zero(), &a1, &g).unwrap();
        assert!(prod.is_one() && k.is_zero());

        let diag = x.substitute_params(&ParamPoly::a(), &ParamPoly::a());
        let (prod, k) = orbit_product(&p("x^2-y^2"), &p("2*a"), &diag, &g).unwrap();
        assert_eq!(prod, p("x^2-y^2").pow(4));
        assert_eq!(k, p("8*a"));

        assert_eq!(
            orbit_product(&p("x"), &Poly::zero(), &a1, &g),
            Err(SymmetryError::NotDarboux)
        );
    }
}
