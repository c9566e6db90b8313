use core::cmp::Ordering;
use core::fmt;

/// Phase-space variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        }
    }
}

/// `x^λ y^μ z^ν`, ordered graded-lexicographically with `x > y > z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(x: u32, y: u32, z: u32) -> Self {
        Monomial([x, y, z])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if self.divisible_by(other) {
            Some(Monomial([
                self.0[0] - other.0[0],
                self.0[1] - other.0[1],
                self.0[2] - other.0[2],
            ]))
        } else {
            None
        }
    }

    pub fn divisible_by(&self, other: &Monomial) -> bool {
        (0..3).all(|i| self.0[i] >= other.0[i])
    }

    /// Lowers the exponent of `v` by one; `None` when it is already zero.
    pub fn lower(&self, v: Var) -> Option<Monomial> {
        let i = v.index();
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0;
        e[i] -= 1;
        Some(Monomial(e))
    }

    pub fn eval_f64(&self, p: &[f64; 3]) -> f64 {
        let mut acc = 1.0;
        for (i, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                acc *= p[i];
            }
        }
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                f.write_str(v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x2 = Monomial::new(2, 0, 0);
        let xy = Monomial::new(1, 1, 0);
        let y2 = Monomial::new(0, 2, 0);
        let z2 = Monomial::new(0, 0, 2);
        let x = Monomial::new(1, 0, 0);
        assert!(x2 > xy && xy > y2 && y2 > z2 && z2 > x);
        assert!(Monomial::new(0, 0, 3) > x2);
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::new(2, 1, 0).to_string(), "x^2*y");
        assert_eq!(Monomial::ONE.to_string(), "1");
    }
}
