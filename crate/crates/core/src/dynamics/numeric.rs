use alloc::vec::Vec;

use super::linear::{Mat3, Vec3};
use super::DynamicsError;
use crate::algebra::{rat_to_f64, Monomial, Poly, Var};
use crate::field::Field;

/// Terms of a parameter-free polynomial with `f64` coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericPoly {
    terms: Vec<(Monomial, f64)>,
}

impl NumericPoly {
    pub fn new(p: &Poly) -> Result<Self, DynamicsError> {
        let terms = p
            .terms()
            .map(|(m, c)| {
                c.as_constant()
                    .map(|r| (*m, rat_to_f64(&r)))
                    .ok_or(DynamicsError::NotSpecialized)
            })
            .collect::<Result<_, _>>()?;
        Ok(NumericPoly { terms })
    }

    pub fn eval(&self, p: &Vec3) -> f64 {
        self.terms.iter().map(|(m, c)| c * m.eval_f64(p)).sum()
    }
}

/// A parameter-free field prepared for repeated floating point evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericField {
    components: [NumericPoly; 3],
    jacobian: [[NumericPoly; 3]; 3],
}

impl NumericField {
    pub fn new(field: &Field) -> Result<Self, DynamicsError> {
        let c = field.components();
        let comp = |i: usize| NumericPoly::new(&c[i]);
        let jac = field.jacobian();
        let row = |i: usize| -> Result<[NumericPoly; 3], DynamicsError> {
            Ok([
                NumericPoly::new(&jac[i][0])?,
                NumericPoly::new(&jac[i][1])?,
                NumericPoly::new(&jac[i][2])?,
            ])
        };
        Ok(NumericField {
            components: [comp(0)?, comp(1)?, comp(2)?],
            jacobian: [row(0)?, row(1)?, row(2)?],
        })
    }

    pub fn eval(&self, p: &Vec3) -> Vec3 {
        [
            self.components[0].eval(p),
            self.components[1].eval(p),
            self.components[2].eval(p),
        ]
    }

    pub fn jacobian(&self, p: &Vec3) -> Mat3 {
        let row = |i: usize| [0, 1, 2].map(|j| self.jacobian[i][j].eval(p));
        [row(0), row(1), row(2)]
    }

    pub fn component(&self, v: Var) -> &NumericPoly {
        &self.components[v.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::field::{d2_field, FieldSign};

    #[test]
    fn evaluates_d2() {
        let x = d2_field(FieldSign::Negative)
            .specialize(Some(&rat(1, 1)), Some(&rat(-2, 1)))
            .unwrap();
        let n = NumericField::new(&x).unwrap();
        assert_eq!(n.eval(&[1.0, 2.0, 3.0]), [1.0 + 6.0, -4.0 + 3.0, 3.0 - 2.0]);
        let j = n.jacobian(&[0.0, 0.0, 0.0]);
        assert_eq!(j, [[1.0, 0.0, 0.0], [0.0, -2.0, 0.0], [0.0, 0.0, 1.0]]);
        assert_eq!(
            NumericField::new(&d2_field(FieldSign::Negative)).unwrap_err(),
            DynamicsError::NotSpecialized
        );
    }
}
