use alloc::vec::Vec;

use super::cascade::CascadeOperators;
use super::candidates::candidate_values;
use super::generators::reduce_to_generators;
use super::result::{canonical_cmp, DarbouxResult, ParameterCondition};
use super::SearchError;
use crate::algebra::{ParamPoly, Poly, Rat};
use crate::field::{Field, FieldError, ParamPoint};

/// `L_X f - k f`; zero exactly when `(f, k)` is a Darboux pair. Works over
/// `Q[a, b]` when the field or the pair involve the parameters.
pub fn darboux_residual(field: &Field, f: &Poly, k: &Poly) -> Poly {
    &field.lie_derivative(f) - &(k * f)
}

/// True iff `L_X f = k f` holds as a polynomial identity.
pub fn verify_darboux(field: &Field, f: &Poly, k: &Poly) -> bool {
    darboux_residual(field, f, k).is_zero()
}

/// The cofactor `L_X f / f` when the division is exact. Requires the
/// leading coefficient of `f` to be a nonzero rational.
pub fn darboux_cofactor(field: &Field, f: &Poly) -> Option<Poly> {
    if f.is_zero() {
        return None;
    }
    field.lie_derivative(f).div_exact(f)
}

/// Specializes the field at `point` when it has parameters, and reports
/// under which condition results hold.
fn prepare(field: &Field, point: Option<&ParamPoint>) -> Result<(Field, ParameterCondition), SearchError> {
    if field.is_parameter_free() {
        return Ok((field.clone(), ParameterCondition::Unconditional));
    }
    let point = point.ok_or_else(|| {
        let missing = if field.parameters().contains(&crate::field::Param::A) { "a" } else { "b" };
        SearchError::Field(FieldError::MissingParameter(missing))
    })?;
    Ok((field.specialize_at(point), ParameterCondition::At(point.clone())))
}

/// All Darboux polynomials of degree exactly `d` with cofactor `c0`, as a
/// canonical basis modulo lower-degree solutions: every `f` of degree `d`
/// with `L_X f = c0 f` is a combination of the returned polynomials and of
/// solutions of lower degree.
pub fn cascade_solve(
    field: &Field,
    d: u32,
    c0: &Rat,
    point: Option<&ParamPoint>,
) -> Result<Vec<Poly>, SearchError> {
    let (spec, _) = prepare(field, point)?;
    let ops = CascadeOperators::new(&spec, d)?;
    let basis = ops.canonical_basis(&ops.kernel(c0));
    Ok(basis.into_iter().filter(|p| p.total_degree() == d).collect())
}

/// Solutions for one cofactor, excluding constants, each verified.
fn solve_cofactor(ops: &CascadeOperators, field: &Field, c0: &Rat, condition: &ParameterCondition) -> Vec<DarbouxResult> {
    let k = Poly::constant(ParamPoly::constant(c0.clone()));
    ops.canonical_basis(&ops.kernel(c0))
        .into_iter()
        .filter(|f| !f.is_constant())
        .filter(|f| {
            let ok = verify_darboux(field, f, &k);
            debug_assert!(ok, "kernel vector {f} fails verification");
            ok
        })
        .map(|f| DarbouxResult::new(f, k.clone(), condition.clone()))
        .collect()
}

/// Every Darboux polynomial with constant cofactor up to `bound`, as a
/// canonical basis per cofactor (monic, degree-partitioned), with
/// generators flagged and results in canonical order.
///
/// Fields with parameters are specialized at `point`; the search itself
/// is always over the rationals.
pub fn find_darboux(
    field: &Field,
    bound: u32,
    point: Option<&ParamPoint>,
) -> Result<Vec<DarbouxResult>, SearchError> {
    if bound == 0 {
        return Err(SearchError::DegreeBound(bound));
    }
    let (spec, condition) = prepare(field, point)?;
    let ops = CascadeOperators::new(&spec, bound)?;
    let mut results: Vec<DarbouxResult> = candidate_values(&spec, &ops)
        .iter()
        .flat_map(|c0| solve_cofactor(&ops, &spec, c0, &condition))
        .collect();
    let gens = reduce_to_generators(&results, &spec);
    for r in results.iter_mut() {
        r.generator = gens.generators.iter().any(|g| g.f == r.f);
    }
    results.sort_by(canonical_cmp);
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::field::{d2_field, parse_field, parse_poly, FieldSign};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn point(a: i64, b: i64) -> ParamPoint {
        ParamPoint::new(rat(a, 1), rat(b, 1))
    }

    #[test]
    fn cascade_examples() {
        let x = d2_field(FieldSign::Negative);
        let s = cascade_solve(&x, 2, &rat(2, 1), Some(&point(1, -2))).unwrap();
        assert_eq!(s, vec![p("x^2 + z^2")]);
        let s = cascade_solve(&x, 2, &rat(6, 1), Some(&point(3, 3))).unwrap();
        assert!(s.contains(&p("x^2 - y^2")));
        let generic = ParamPoint::new(rat(2, 3), rat(-5, 7));
        let ops = CascadeOperators::new(&x.specialize_at(&generic), 2).unwrap();
        for c0 in candidate_values(&x.specialize_at(&generic), &ops) {
            assert!(cascade_solve(&x, 2, &c0, Some(&generic)).unwrap().is_empty());
        }
    }

    #[test]
    fn find_examples() {
        let x = d2_field(FieldSign::Negative);
        let r = find_darboux(&x, 4, Some(&point(1, -2))).unwrap();
        let got: Vec<(Poly, Poly, bool)> = r.iter().map(|r| (r.f.clone(), r.cofactor.clone(), r.generator)).collect();
        assert_eq!(
            got,
            vec![
                (p("x^2 + z^2"), p("2"), true),
                (p("x^2 + z^2").pow(2), p("4"), false),
            ]
        );

        let r = find_darboux(&x, 2, Some(&point(0, 0))).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].f, p("x^2 - y^2"));
        assert!(r[0].is_first_integral());

        let r = find_darboux(&x, 2, Some(&point(1, 1))).unwrap();
        assert!(r.iter().all(|r| r.cofactor == p("2")));
        let span: Vec<Poly> = r.iter().map(|r| r.f.clone()).collect();
        assert_eq!(span, vec![p("x^2 + z^2"), p("y^2 + z^2")]);
    }

    #[test]
    fn verification() {
        let x = d2_field(FieldSign::Negative);
        let b1 = x.substitute_params(&ParamPoly::a(), &ParamPoly::one());
        assert!(verify_darboux(&b1, &p("y^2 + z^2"), &p("2")));
        assert!(!verify_darboux(&x, &p("x"), &Poly::zero()));
        let pos = d2_field(FieldSign::Positive).substitute_params(&ParamPoly::one(), &ParamPoly::b());
        assert!(verify_darboux(&pos, &p("x^2 - z^2"), &p("2")));
        assert_eq!(darboux_residual(&x, &p("x^2 - y^2"), &p("2*a")), p("2*a*y^2 - 2*b*y^2"));
        assert_eq!(darboux_cofactor(&b1, &p("y^2 + z^2")), Some(p("2")));
        assert_eq!(darboux_cofactor(&x, &p("x")), None);
    }

    #[test]
    fn lorenz_discovery() {
        let lorenz = parse_field("dx = 10*(y-x); dy = 28*x - y - x*z; dz = x*y - 20*z").unwrap();
        let r = find_darboux(&lorenz, 2, None).unwrap();
        assert!(r.iter().any(|r| r.f == p("x^2 - 20*z") && r.cofactor == p("-20")));
    }

    #[test]
    fn errors() {
        let x = d2_field(FieldSign::Negative);
        assert_eq!(find_darboux(&x, 0, Some(&point(1, 1))).unwrap_err(), SearchError::DegreeBound(0));
        assert_eq!(
            find_darboux(&x, 2, None).unwrap_err(),
            SearchError::Field(FieldError::MissingParameter("a"))
        );
    }
}
