//! The known low-degree Darboux polynomials of the D2 family.

use alloc::vec::Vec;

use super::result::ParameterCondition;
use crate::algebra::{ParamPoly, Poly};
use crate::field::FieldSign;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub f: Poly,
    pub cofactor: Poly,
    pub condition: ParameterCondition,
}

/// Quadratic Darboux polynomials of `(ax + yz, by + xz, z ∓ xy)` and the
/// loci on which they hold. The sign of `z²` follows the sign of `xy`.
pub fn catalog(sign: FieldSign) -> Vec<CatalogEntry> {
    let (x, y, z) = (Poly::x(), Poly::y(), Poly::z());
    let (x2, y2, z2) = (&x * &x, &y * &y, &z * &z);
    let with_z = |p: &Poly| match sign {
        FieldSign::Negative => p + &z2,
        FieldSign::Positive => p - &z2,
    };
    let two = Poly::from_int(2);
    let two_a = Poly::constant(ParamPoly::a().scale(&crate::algebra::rat(2, 1)));
    alloc::vec![
        CatalogEntry {
            f: with_z(&x2),
            cofactor: two.clone(),
            condition: ParameterCondition::AEqualsOne,
        },
        CatalogEntry {
            f: with_z(&y2),
            cofactor: two,
            condition: ParameterCondition::BEqualsOne,
        },
        CatalogEntry {
            f: &x2 - &y2,
            cofactor: two_a,
            condition: ParameterCondition::AEqualsB,
        },
    ]
}
