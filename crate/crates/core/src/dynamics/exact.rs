//! Closed-form nontrivial equilibria of the D2 family.
//!
//! For `ż = z - xy` the equations reduce to `z = xy`, `x (a + y²) = 0`,
//! `y (b + x²) = 0`, so for `a, b < 0` there are four points
//! `(±√-b, ±√-a, xy)`. For `ż = z + xy` they are `(±√b, ±√a, -xy)` when
//! `a, b > 0`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::{rat_to_f64, Rat};
use crate::field::FieldSign;

/// `sign · √radicand` with `radicand >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactCoord {
    pub negative: bool,
    pub radicand: Rat,
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

impl ExactCoord {
    pub fn rational(r: &Rat) -> Self {
        ExactCoord {
            negative: r.is_negative(),
            radicand: r * r,
        }
    }

    /// The value as a rational when the radicand is a perfect square.
    pub fn as_rational(&self) -> Option<Rat> {
        let n = exact_sqrt(self.radicand.numer())?;
        let d = exact_sqrt(self.radicand.denom())?;
        let r = Rat::new(n, d);
        Some(if self.negative { -r } else { r })
    }

    pub fn to_f64(&self) -> f64 {
        let v = libm::sqrt(rat_to_f64(&self.radicand));
        if self.negative {
            -v
        } else {
            v
        }
    }

    fn signed_sqrt(negative: bool, radicand: Rat) -> Self {
        ExactCoord {
            negative: negative && !radicand.is_zero(),
            radicand,
        }
    }
}

impl fmt::Display for ExactCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{}", r),
            None => write!(f, "{}sqrt({})", if self.negative { "-" } else { "" }, self.radicand),
        }
    }
}

/// An equilibrium given by exact coordinates.
pub type ExactPoint = [ExactCoord; 3];

pub fn exact_to_f64(p: &ExactPoint) -> [f64; 3] {
    [p[0].to_f64(), p[1].to_f64(), p[2].to_f64()]
}

pub fn format_exact(p: &ExactPoint) -> alloc::string::String {
    alloc::format!("({}, {}, {})", p[0], p[1], p[2])
}

/// The four nontrivial equilibria of the D2 field at `(a, b)`, or none when
/// the sign conditions fail. Ordered by the signs of `x`, then `y`
/// (positive first).
pub fn d2_exact_equilibria(sign: FieldSign, a: &Rat, b: &Rat) -> Vec<ExactPoint> {
    let (rx, ry, z_flip) = match sign {
        FieldSign::Negative if a.is_negative() && b.is_negative() => (-b, -a, false),
        FieldSign::Positive if a.is_positive() && b.is_positive() => (b.clone(), a.clone(), true),
        _ => return Vec::new(),
    };
    let rz = &rx * &ry;
    let mut out = Vec::with_capacity(4);
    for sx in [false, true] {
        for sy in [false, true] {
            out.push([
                ExactCoord::signed_sqrt(sx, rx.clone()),
                ExactCoord::signed_sqrt(sy, ry.clone()),
                ExactCoord::signed_sqrt((sx != sy) != z_flip, rz.clone()),
            ]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::dynamics::NumericField;
    use crate::field::d2_field;
    use alloc::string::ToString;

    #[test]
    fn negative_sign_points() {
        let pts = d2_exact_equilibria(FieldSign::Negative, &rat(-1, 1), &rat(-1, 1));
        let text: Vec<_> = pts.iter().map(format_exact).collect();
        assert_eq!(text, ["(1, 1, 1)", "(1, -1, -1)", "(-1, 1, -1)", "(-1, -1, 1)"]);
        let pts = d2_exact_equilibria(FieldSign::Negative, &rat(-4, 1), &rat(-4, 1));
        assert_eq!(format_exact(&pts[0]), "(2, 2, 4)");
        let pts = d2_exact_equilibria(FieldSign::Negative, &rat(-2, 1), &rat(-3, 1));
        assert_eq!(pts[0][0].to_string(), "sqrt(3)");
        assert_eq!(pts[0][2].to_string(), "sqrt(6)");
        assert!(d2_exact_equilibria(FieldSign::Negative, &rat(1, 1), &rat(-2, 1)).is_empty());
    }

    #[test]
    fn points_are_equilibria() {
        for sign in [FieldSign::Negative, FieldSign::Positive] {
            let (a, b) = match sign {
                FieldSign::Negative => (rat(-2, 1), rat(-3, 1)),
                FieldSign::Positive => (rat(5, 2), rat(1, 3)),
            };
            let field = d2_field(sign).specialize(Some(&a), Some(&b)).unwrap();
            let num = NumericField::new(&field).unwrap();
            let pts = d2_exact_equilibria(sign, &a, &b);
            assert_eq!(pts.len(), 4);
            for p in &pts {
                let v = num.eval(&exact_to_f64(p));
                assert!(v.iter().all(|c| c.abs() < 1e-12), "{:?}", v);
            }
        }
    }
}
