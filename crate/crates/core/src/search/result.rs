use core::cmp::Ordering;
use core::fmt;

use crate::algebra::{rat, ParamPoly, Poly};
use crate::field::{Field, ParamPoint};

/// Where in the `(a, b)` plane a Darboux relation holds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParameterCondition {
    /// For all `(a, b)`, or the field has no parameters.
    Unconditional,
    AEqualsOne,
    BEqualsOne,
    AEqualsB,
    /// At one specialization only.
    At(ParamPoint),
    /// Observed on a locus outside the candidate family.
    Unclassified,
}

impl ParameterCondition {
    /// Loci tried when classifying a sweep cluster, in tie-breaking order.
    pub fn candidate_loci() -> [ParameterCondition; 4] {
        [
            ParameterCondition::Unconditional,
            ParameterCondition::AEqualsOne,
            ParameterCondition::BEqualsOne,
            ParameterCondition::AEqualsB,
        ]
    }

    /// Values substituted for `(a, b)` to impose the condition.
    pub fn substitution(&self) -> Option<(ParamPoly, ParamPoly)> {
        let one = ParamPoly::one;
        Some(match self {
            ParameterCondition::Unconditional => (ParamPoly::a(), ParamPoly::b()),
            ParameterCondition::AEqualsOne => (one(), ParamPoly::b()),
            ParameterCondition::BEqualsOne => (ParamPoly::a(), one()),
            ParameterCondition::AEqualsB => (ParamPoly::a(), ParamPoly::a()),
            ParameterCondition::At(p) => (
                ParamPoly::constant(p.a.clone()),
                ParamPoly::constant(p.b.clone()),
            ),
            ParameterCondition::Unclassified => return None,
        })
    }

    /// The field with the condition imposed on its parameters.
    pub fn apply(&self, field: &Field) -> Option<Field> {
        let (a, b) = self.substitution()?;
        Some(field.substitute_params(&a, &b))
    }

    pub fn contains(&self, p: &ParamPoint) -> bool {
        match self {
            ParameterCondition::Unconditional => true,
            ParameterCondition::AEqualsOne => p.a == rat(1, 1),
            ParameterCondition::BEqualsOne => p.b == rat(1, 1),
            ParameterCondition::AEqualsB => p.a == p.b,
            ParameterCondition::At(q) => p == q,
            ParameterCondition::Unclassified => false,
        }
    }
}

impl fmt::Display for ParameterCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParameterCondition::Unconditional => f.write_str("none"),
            ParameterCondition::AEqualsOne => f.write_str("a=1"),
            ParameterCondition::BEqualsOne => f.write_str("b=1"),
            ParameterCondition::AEqualsB => f.write_str("a=b"),
            ParameterCondition::At(p) => write!(f, "a={}, b={}", p.a, p.b),
            ParameterCondition::Unclassified => f.write_str("unclassified"),
        }
    }
}

/// A Darboux pair `(f, k)` with `L_X f = k f` exactly under `condition`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DarbouxResult {
    pub f: Poly,
    pub cofactor: Poly,
    pub degree: u32,
    pub condition: ParameterCondition,
    pub generator: bool,
}

impl DarbouxResult {
    pub fn new(f: Poly, cofactor: Poly, condition: ParameterCondition) -> Self {
        DarbouxResult {
            degree: f.total_degree(),
            f,
            cofactor,
            condition,
            generator: false,
        }
    }

    /// A zero cofactor makes `f` a polynomial first integral.
    pub fn is_first_integral(&self) -> bool {
        self.cofactor.is_zero()
    }
}

/// Canonical output order: degree, then leading monomial (largest first),
/// then cofactor, then the full polynomial.
pub fn canonical_cmp(x: &DarbouxResult, y: &DarbouxResult) -> Ordering {
    let lead = |r: &DarbouxResult| r.f.leading_term().map(|(m, _)| *m);
    x.degree
        .cmp(&y.degree)
        .then_with(|| lead(y).cmp(&lead(x)))
        .then_with(|| x.cofactor.cmp(&y.cofactor))
        .then_with(|| x.f.cmp(&y.f))
}
