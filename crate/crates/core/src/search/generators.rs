//! Reduction of a set of Darboux polynomials to generators.
//!
//! A result is derived when it is a product of generators whose cofactors
//! sum to its own (checked by trial division), or a linear combination of
//! such products with the same cofactor (checked by rank). Everything else
//! is a generator.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::find::verify_darboux;
use super::result::{canonical_cmp, DarbouxResult};
use crate::algebra::linalg::{rank, Matrix};
use crate::algebra::{MonomialBasis, Poly, Rat};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation {
    /// Product of the listed generators (indices into
    /// [`GeneratorSet::generators`], with multiplicity).
    Product(Vec<usize>),
    /// Same-cofactor linear combination of products of generators.
    Combination,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedResult {
    pub result: DarbouxResult,
    pub derivation: Derivation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    /// Generators in canonical order, each flagged `generator = true`.
    pub generators: Vec<DarbouxResult>,
    pub derived: Vec<DerivedResult>,
    /// Inputs that failed exact verification and were ignored.
    pub rejected: Vec<DarbouxResult>,
    pub closure_note: String,
}

/// Generators (indices, nondecreasing) whose product is `f` and whose
/// cofactors sum to `k`.
fn factor(f: &Poly, k: &Poly, gens: &[DarbouxResult]) -> Option<Vec<usize>> {
    if f.is_constant() {
        return k.is_zero().then(Vec::new);
    }
    for (i, g) in gens.iter().enumerate() {
        if g.degree > f.total_degree() {
            continue;
        }
        if let Some(q) = f.div_exact(&g.f) {
            if let Some(mut rest) = factor(&q, &(k - &g.cofactor), gens) {
                rest.push(i);
                rest.sort_unstable();
                return Some(rest);
            }
        }
    }
    None
}

/// Every product of generators of degree `<= max_degree` whose cofactors
/// sum to `k`, including the empty product when `k = 0`.
fn products_with_cofactor(gens: &[DarbouxResult], k: &Poly, max_degree: u32) -> Vec<Poly> {
    fn walk(
        gens: &[DarbouxResult],
        start: usize,
        prod: &Poly,
        cof: &Poly,
        budget: u32,
        k: &Poly,
        out: &mut Vec<Poly>,
    ) {
        if cof == k {
            out.push(prod.clone());
        }
        for (i, g) in gens.iter().enumerate().skip(start) {
            if g.degree == 0 || g.degree > budget {
                continue;
            }
            walk(gens, i, &(prod * &g.f), &(cof + &g.cofactor), budget - g.degree, k, out);
        }
    }
    let mut out = Vec::new();
    walk(gens, 0, &Poly::one(), &Poly::zero(), max_degree, k, &mut out);
    out
}

/// True when `f` lies in the rational span of `pool`.
fn in_span(f: &Poly, pool: &[Poly]) -> Option<bool> {
    if pool.is_empty() {
        return Some(false);
    }
    let basis = MonomialBasis::new(pool.iter().chain([f]).map(Poly::total_degree).max().unwrap_or(0));
    let rows: Vec<Vec<Rat>> = pool
        .iter()
        .map(|p| basis.rat_vector(p).ok())
        .collect::<Option<_>>()?;
    let with_f: Vec<Vec<Rat>> = rows.iter().cloned().chain([basis.rat_vector(f).ok()?]).collect();
    let r0 = rank(&Matrix::from_rows(rows, basis.len()));
    let r1 = rank(&Matrix::from_rows(with_f, basis.len()));
    Some(r0 == r1)
}

/// Splits verified results into generators and derived members. Results
/// are processed by increasing degree and, within a degree, sparsest
/// first, so the simplest representatives become generators.
pub fn reduce_to_generators(results: &[DarbouxResult], field: &Field) -> GeneratorSet {
    let mut rejected = Vec::new();
    let mut order: Vec<&DarbouxResult> = Vec::new();
    for r in results {
        let holds = match r.condition.apply(field) {
            Some(x) => verify_darboux(&x, &r.f, &r.cofactor),
            None => true,
        };
        if holds && !r.f.is_zero() {
            order.push(r);
        } else {
            rejected.push(r.clone());
        }
    }
    order.sort_by(|x, y| {
        x.degree
            .cmp(&y.degree)
            .then_with(|| x.f.num_terms().cmp(&y.f.num_terms()))
            .then_with(|| canonical_cmp(x, y))
    });

    let mut gens: Vec<DarbouxResult> = Vec::new();
    let mut derived: Vec<(DarbouxResult, Option<Vec<usize>>)> = Vec::new();
    for r in order {
        if let Some(idx) = factor(&r.f, &r.cofactor, &gens) {
            derived.push((r.clone(), Some(idx)));
            continue;
        }
        let pool = products_with_cofactor(&gens, &r.cofactor, r.degree);
        if in_span(&r.f, &pool) == Some(true) {
            derived.push((r.clone(), None));
            continue;
        }
        let mut g = r.clone();
        g.generator = true;
        gens.push(g);
    }

    // Canonical order for the generators, with product indices remapped.
    let mut perm: Vec<usize> = (0..gens.len()).collect();
    perm.sort_by(|&i, &j| canonical_cmp(&gens[i], &gens[j]));
    let mut new_index = alloc::vec![0; gens.len()];
    for (new, &old) in perm.iter().enumerate() {
        new_index[old] = new;
    }
    let generators: Vec<DarbouxResult> = perm.iter().map(|&i| gens[i].clone()).collect();
    let mut derived: Vec<DerivedResult> = derived
        .into_iter()
        .map(|(mut result, idx)| {
            result.generator = false;
            let derivation = match idx {
                Some(idx) => {
                    let mut v: Vec<usize> = idx.iter().map(|&i| new_index[i]).collect();
                    v.sort_unstable();
                    Derivation::Product(v)
                }
                None => Derivation::Combination,
            };
            DerivedResult { result, derivation }
        })
        .collect();
    derived.sort_by(|x, y| canonical_cmp(&x.result, &y.result));

    let products = derived
        .iter()
        .filter(|d| matches!(d.derivation, Derivation::Product(_)))
        .count();
    let mut closure_note = format!(
        "{} generator(s); {} result(s) are products of generators; {} are same-cofactor linear combinations of products of generators",
        generators.len(),
        products,
        derived.len() - products
    );
    if !rejected.is_empty() {
        closure_note.push_str(&format!("; {} input(s) failed verification and were ignored", rejected.len()));
    }
    GeneratorSet {
        generators,
        derived,
        rejected,
        closure_note,
    }
}
