use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rat;

/// Exponent pair `(i, j)` of `a^i b^j`, graded-lex with `a > b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ParamExp {
    pub a: u32,
    pub b: u32,
}

impl ParamExp {
    pub const ONE: ParamExp = ParamExp { a: 0, b: 0 };

    pub fn new(a: u32, b: u32) -> Self {
        ParamExp { a, b }
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b
    }

    fn mul(&self, other: &ParamExp) -> ParamExp {
        ParamExp::new(self.a + other.a, self.b + other.b)
    }

    /// Pushes `a^i`, `b^j` factors (omitting zero exponents) onto `out`.
    pub(crate) fn push_factors(&self, out: &mut Vec<String>) {
        for (name, e) in [("a", self.a), ("b", self.b)] {
            match e {
                0 => {}
                1 => out.push(String::from(name)),
                _ => out.push(format!("{}^{}", name, e)),
            }
        }
    }
}

impl Ord for ParamExp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| (self.a, self.b).cmp(&(other.a, other.b)))
    }
}

impl PartialOrd for ParamExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in the two free parameters `a`, `b` with rational
/// coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ParamPoly {
    terms: BTreeMap<ParamExp, Rat>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(ParamExp::ONE, c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rat::from_integer(n.into()))
    }

    pub fn a() -> Self {
        Self::term(ParamExp::new(1, 0), Rat::one())
    }

    pub fn b() -> Self {
        Self::term(ParamExp::new(0, 1), Rat::one())
    }

    pub fn term(e: ParamExp, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn add_term(&mut self, e: ParamExp, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == ParamExp::ONE)
    }

    /// The rational value when the polynomial does not involve `a` or `b`.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.terms.get(&ParamExp::ONE).cloned().unwrap_or_else(Rat::zero))
        } else {
            None
        }
    }

    pub fn uses_a(&self) -> bool {
        self.terms.keys().any(|e| e.a > 0)
    }

    pub fn uses_b(&self) -> bool {
        self.terms.keys().any(|e| e.b > 0)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(ParamExp::degree).max().unwrap_or(0)
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&ParamExp, &Rat)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, a: &Rat, b: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..e.a {
                t *= a;
            }
            for _ in 0..e.b {
                t *= b;
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `a := a_val`, `b := b_val`.
    pub fn substitute(&self, a_val: &ParamPoly, b_val: &ParamPoly) -> ParamPoly {
        let mut acc = ParamPoly::zero();
        for (e, c) in &self.terms {
            let t = (&a_val.pow(e.a) * &b_val.pow(e.b)).scale(c);
            acc = &acc + &t;
        }
        acc
    }
}

impl From<Rat> for ParamPoly {
    fn from(c: Rat) -> Self {
        ParamPoly::constant(c)
    }
}

impl<'a> Add<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.mul(e2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $m(self, rhs: ParamPoly) -> ParamPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mut factors = Vec::new();
            e.push_factors(&mut factors);
            write_signed_term(f, i == 0, c, &factors.join("*"))?;
        }
        Ok(())
    }
}

/// Writes one term of a sum: the sign separator, then `|c|` unless it is 1
/// and factors follow, then the `*`-joined factors.
pub(crate) fn write_signed_term(
    f: &mut fmt::Formatter<'_>,
    leading: bool,
    c: &Rat,
    factors: &str,
) -> fmt::Result {
    match (leading, c.is_negative()) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let mag = c.abs();
    match (mag.is_one(), factors.is_empty()) {
        (true, true) => f.write_str("1"),
        (true, false) => f.write_str(factors),
        (false, true) => write!(f, "{}", mag),
        (false, false) => write!(f, "{}*{}", mag, factors),
    }
}
