use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::param::write_signed_term;
use super::{rat_to_f64, Monomial, ParamPoly, Rat, Var};

/// Sparse polynomial in `x, y, z` with coefficients in `Q[a, b]`.
///
/// Terms are keyed by [`Monomial`] (graded-lex, `x > y > z`); zero
/// coefficients are pruned on every update, so structural equality is
/// polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Monomial, ParamPoly>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ParamPoly::one())
    }

    pub fn constant(c: ParamPoly) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::constant(ParamPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(ParamPoly::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), ParamPoly::one())
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }

    pub fn y() -> Self {
        Self::var(Var::Y)
    }

    pub fn z() -> Self {
        Self::var(Var::Z)
    }

    pub fn term(m: Monomial, c: ParamPoly) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Zero or a nonzero element of `Q[a, b]` (no phase variables).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn constant_term(&self) -> ParamPoly {
        self.terms.get(&Monomial::ONE).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Total degree with the zero polynomial mapped to 0.
    pub fn total_degree(&self) -> u32 {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, m: &Monomial) -> ParamPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms in descending graded-lex order (leading term first).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ParamPoly)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &ParamPoly)> {
        self.terms.iter().next_back()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    pub fn is_parameter_free(&self) -> bool {
        self.terms.values().all(ParamPoly::is_constant)
    }

    pub fn uses_a(&self) -> bool {
        self.terms.values().any(ParamPoly::uses_a)
    }

    pub fn uses_b(&self) -> bool {
        self.terms.values().any(ParamPoly::uses_b)
    }

    pub fn scale(&self, c: &ParamPoly) -> Poly {
        let mut out = Poly::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn scale_rat(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v.scale(c))).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to `v`.
    pub fn partial(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if let Some(lowered) = m.lower(v) {
                out.add_term(lowered, c.scale(&Rat::from_integer(e.into())));
            }
        }
        out
    }

    /// The degree-`j` homogeneous component.
    pub fn homogeneous_part(&self, j: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == j)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Splits into homogeneous components, ascending by degree; empty
    /// degrees are omitted.
    pub fn homogeneous_components(&self) -> Vec<(u32, Poly)> {
        let mut out: Vec<(u32, Poly)> = Vec::new();
        for (m, c) in &self.terms {
            let d = m.degree();
            match out.last_mut() {
                Some((last, p)) if *last == d => {
                    p.terms.insert(*m, c.clone());
                }
                _ => out.push((d, Poly::term(*m, c.clone()))),
            }
        }
        out
    }

    /// `p(v0, v1, v2)`: substitutes one polynomial per phase variable.
    pub fn substitute_vars(&self, subs: &[Poly; 3]) -> Poly {
        let mut powers: [Vec<Poly>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for v in Var::ALL {
                let e = m.exp(v) as usize;
                let cache = &mut powers[v.index()];
                if cache.is_empty() {
                    cache.push(Poly::one());
                }
                while cache.len() <= e {
                    let next = &cache[cache.len() - 1] * &subs[v.index()];
                    cache.push(next);
                }
                t = &t * &cache[e];
            }
            out = &out + &t;
        }
        out
    }

    /// `p(M·(x, y, z))` for a rational 3×3 matrix `M`.
    pub fn compose_linear(&self, m: &[[Rat; 3]; 3]) -> Poly {
        let row = |i: usize| {
            let mut p = Poly::zero();
            for v in Var::ALL {
                p.add_term(Monomial::var(v), ParamPoly::constant(m[i][v.index()].clone()));
            }
            p
        };
        self.substitute_vars(&[row(0), row(1), row(2)])
    }

    /// Evaluates the parameters, leaving a parameter-free polynomial.
    pub fn specialize(&self, a: &Rat, b: &Rat) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, ParamPoly::constant(c.eval(a, b)));
        }
        out
    }

    /// Substitutes `a := a_val`, `b := b_val` in every coefficient.
    pub fn substitute_params(&self, a_val: &ParamPoly, b_val: &ParamPoly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c.substitute(a_val, b_val));
        }
        out
    }

    /// Divides by the leading coefficient when that coefficient is a
    /// nonzero rational; otherwise returns a clone.
    pub fn monic(&self) -> Poly {
        match self.leading_term().and_then(|(_, c)| c.as_constant()) {
            Some(lc) if !lc.is_zero() => self.scale_rat(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Multivariate division by `divisor` in graded-lex order. Returns
    /// `(quotient, remainder)`; requires the leading coefficient of
    /// `divisor` to be a nonzero rational.
    pub fn div_rem(&self, divisor: &Poly) -> Option<(Poly, Poly)> {
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = lc.as_constant().filter(|c| !c.is_zero())?.recip();
        let mut rem = self.clone();
        let mut quo = Poly::zero();
        let mut residue = Poly::zero();
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (*m, c.clone())) {
            match m.div(lm) {
                Some(q) => {
                    let t = Poly::term(q, c.scale(&lc_inv));
                    rem = &rem - &(&t * divisor);
                    quo = &quo + &t;
                }
                None => {
                    rem.terms.remove(&m);
                    residue.add_term(m, c);
                }
            }
        }
        Some((quo, residue))
    }

    /// `self / divisor` when the division is exact.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    /// Evaluates a parameter-free polynomial at a real point.
    pub fn eval_f64(&self, p: &[f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let c = c.as_constant().map(|r| rat_to_f64(&r)).unwrap_or(f64::NAN);
                c * m.eval_f64(p)
            })
            .sum()
    }

    /// Evaluates a parameter-free polynomial at a rational point.
    pub fn eval_rat(&self, p: &[Rat; 3]) -> Option<Rat> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.as_constant()?;
            for v in Var::ALL {
                for _ in 0..m.exp(v) {
                    t *= &p[v.index()];
                }
            }
            acc += t;
        }
        Some(acc)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::ONE)
                .and_then(ParamPoly::as_constant)
                .is_some_and(|c| c.is_one())
    }
}

impl From<ParamPoly> for Poly {
    fn from(c: ParamPoly) -> Self {
        Poly::constant(c)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Canonical text: terms by descending phase monomial, then descending
/// parameter monomial, each as `c*a^i*b^j*x^l*y^m*z^n` with `c` reduced.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut leading = true;
        for (m, c) in self.terms() {
            for (e, r) in c.terms() {
                let mut factors: Vec<String> = Vec::new();
                e.push_factors(&mut factors);
                if *m != Monomial::ONE {
                    factors.push(alloc::format!("{}", m));
                }
                write_signed_term(f, leading, r, &factors.join("*"))?;
                leading = false;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn x() -> Poly {
        Poly::x()
    }
    fn y() -> Poly {
        Poly::y()
    }
    fn z() -> Poly {
        Poly::z()
    }

    #[test]
    fn add_cancels_and_prunes() {
        let p = &(&x() * &x()) - &(&y() * &y());
        let q = &y() * &y();
        assert_eq!(&p + &q, &x() * &x());
        assert_eq!(&p + &Poly::zero(), p);
        let r = &(&x() * &x()) + &(&z() * &z());
        assert_eq!((&r + &p).to_string(), "2*x^2 - y^2 + z^2");
    }

    #[test]
    fn mul_expands() {
        assert_eq!((&(&x() - &y()) * &(&x() + &y())).to_string(), "x^2 - y^2");
        let p = &(&x() * &x()) + &(&z() * &z());
        let q = &(&x() * &x()) - &(&y() * &y());
        assert_eq!((&p * &q).to_string(), "x^4 - x^2*y^2 + x^2*z^2 - y^2*z^2");
        assert_eq!(&p * &Poly::one(), p);
    }

    #[test]
    fn partials() {
        let x2y = &(&x() * &x()) * &y();
        assert_eq!(x2y.partial(Var::X).to_string(), "2*x*y");
        assert!(z().pow(3).partial(Var::X).is_zero());
        let d = &(&x() * &x()) - &(&y() * &y());
        assert_eq!(d.partial(Var::Y).to_string(), "-2*y");
    }

    #[test]
    fn homogeneous_split() {
        let p = &(&(&x() * &x()) + &(&z() * &z())) + &Poly::one();
        let comps = p.homogeneous_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].0, 0);
        assert!(comps[0].1.is_one());
        assert_eq!(comps[1].1.to_string(), "x^2 + z^2");
        assert!(Poly::zero().homogeneous_components().is_empty());
        let q = &(&(&x() * &x()) - &(&y() * &y())) + &x().pow(4);
        let comps = q.homogeneous_components();
        assert_eq!((comps[0].0, comps[1].0), (2, 4));
    }

    #[test]
    fn compose_with_sign_matrices() {
        let diag = |s: [i64; 3]| {
            let mut m: [[Rat; 3]; 3] = Default::default();
            for i in 0..3 {
                m[i][i] = rat(s[i], 1);
            }
            m
        };
        let p = &(&x() * &x()) + &(&z() * &z());
        assert_eq!(p.compose_linear(&diag([-1, -1, 1])), p);
        let xyz = &(&x() * &y()) * &z();
        assert_eq!(xyz.compose_linear(&diag([1, 1, 1])), xyz);
        assert_eq!(x().compose_linear(&diag([-1, 1, -1])), -x());
    }

    #[test]
    fn display_with_parameters() {
        let p = &Poly::constant(&ParamPoly::a() * &ParamPoly::from_int(2)) * &x();
        let p = &p + &Poly::from_rat(rat(-3, 4));
        assert_eq!(p.to_string(), "2*a*x - 3/4");
        assert_eq!((-x()).to_string(), "-x");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let h = &(&x() * &x()) + &(&z() * &z());
        let h2 = &h * &h;
        assert_eq!(h2.div_exact(&h), Some(h.clone()));
        assert_eq!(h.div_exact(&(&x() + &y())), None);
        let (q, r) = (&h + &y()).div_rem(&h).unwrap();
        assert!(q.is_one());
        assert_eq!(r, y());
    }
}
