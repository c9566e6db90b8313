//! Sweeps over a grid in the `(a, b)` plane and recovers, for every
//! generator seen on the grid, the parameter locus on which it persists.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::find::{darboux_cofactor, find_darboux, verify_darboux};
use super::result::{DarbouxResult, ParameterCondition};
use super::SearchError;
use crate::algebra::{rat, Poly, Rat};
use crate::field::{Field, ParamPoint};

/// One generator polynomial together with the locus on which it is a
/// Darboux polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub condition: ParameterCondition,
    pub f: Poly,
    /// Cofactor over `Q[a, b]` on the locus; `None` when unclassified.
    pub cofactor: Option<Poly>,
    /// The relation was re-checked exactly on the symbolic locus.
    pub verified: bool,
    /// Grid points at which `f` was found as a generator.
    pub points: Vec<ParamPoint>,
    /// Grid points at which the cofactor vanishes, so that `f` is a first
    /// integral there.
    pub first_integral_at: Vec<ParamPoint>,
}

/// Evenly spaced values `min, ..., max` (both included).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridAxis {
    pub min: Rat,
    pub max: Rat,
    pub steps: u32,
}

impl GridAxis {
    pub fn new(min: Rat, max: Rat, steps: u32) -> Self {
        GridAxis { min, max, steps }
    }

    pub fn values(&self) -> Vec<Rat> {
        match self.steps {
            0 => Vec::new(),
            1 => alloc::vec![self.min.clone()],
            n => {
                let h = (&self.max - &self.min) / Rat::from_integer((n - 1).into());
                (0..n)
                    .map(|i| &self.min + &h * Rat::from_integer(i.into()))
                    .collect()
            }
        }
    }
}

/// Cartesian product of two axes, `a` varying slowest.
pub fn grid(a: &GridAxis, b: &GridAxis) -> Vec<ParamPoint> {
    let bs = b.values();
    a.values()
        .into_iter()
        .flat_map(|av| bs.iter().map(move |bv| ParamPoint::new(av.clone(), bv.clone())))
        .collect()
}

/// Points where the D2 family has extra structure at low degree, off the
/// integer grid.
pub fn special_loci_points() -> Vec<ParamPoint> {
    [
        (rat(1, 1), rat(-5, 3)),
        (rat(1, 1), rat(2, 7)),
        (rat(-5, 3), rat(1, 1)),
        (rat(2, 7), rat(1, 1)),
        (rat(2, 7), rat(2, 7)),
        (rat(-5, 3), rat(-5, 3)),
    ]
    .into_iter()
    .map(|(a, b)| ParamPoint::new(a, b))
    .collect()
}

/// The integer grid `{-2, ..., 2}^2` plus [`special_loci_points`], sorted
/// and without duplicates.
pub fn default_grid() -> Vec<ParamPoint> {
    let axis = GridAxis::new(rat(-2, 1), rat(2, 1), 5);
    let mut pts = grid(&axis, &axis);
    pts.extend(special_loci_points());
    pts.sort();
    pts.dedup();
    pts
}

/// First locus (in [`ParameterCondition::candidate_loci`] order) that
/// contains all `points` and on which `f` has a constant cofactor over
/// `Q[a, b]`; the cofactor is returned with it.
pub fn classify_locus(field: &Field, f: &Poly, points: &[ParamPoint]) -> Option<(ParameterCondition, Poly)> {
    ParameterCondition::candidate_loci().into_iter().find_map(|locus| {
        if !points.iter().all(|p| locus.contains(p)) {
            return None;
        }
        let on_locus = locus.apply(field)?;
        let k = darboux_cofactor(&on_locus, f)?;
        k.is_constant().then_some((locus, k))
    })
}

/// Runs [`find_darboux`] at every grid point and clusters the generators.
pub fn parameter_sweep(field: &Field, bound: u32, grid: &[ParamPoint]) -> Result<Vec<SweepRow>, SearchError> {
    let runs = grid
        .iter()
        .map(|p| find_darboux(field, bound, Some(p)).map(|r| (p.clone(), r)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(parameter_sweep_from(field, &runs))
}

/// Clusters precomputed per-point results (as returned by
/// [`find_darboux`]) by generator polynomial and classifies each cluster.
/// Rows come in canonical order of `f`.
pub fn parameter_sweep_from(field: &Field, runs: &[(ParamPoint, Vec<DarbouxResult>)]) -> Vec<SweepRow> {
    let mut clusters: BTreeMap<Poly, Vec<(ParamPoint, bool)>> = BTreeMap::new();
    for (p, results) in runs {
        for r in results.iter().filter(|r| r.generator) {
            clusters
                .entry(r.f.clone())
                .or_default()
                .push((p.clone(), r.is_first_integral()));
        }
    }
    let mut rows: Vec<SweepRow> = clusters
        .into_iter()
        .map(|(f, mut hits)| {
            hits.sort();
            hits.dedup();
            let points: Vec<ParamPoint> = hits.iter().map(|(p, _)| p.clone()).collect();
            let first_integral_at = hits.iter().filter(|(_, fi)| *fi).map(|(p, _)| p.clone()).collect();
            let (condition, cofactor, verified) = match classify_locus(field, &f, &points) {
                Some((c, k)) => {
                    let ok = c.apply(field).is_some_and(|x| verify_darboux(&x, &f, &k));
                    (c, Some(k), ok)
                }
                None => (ParameterCondition::Unclassified, None, false),
            };
            SweepRow {
                condition,
                f,
                cofactor,
                verified,
                points,
                first_integral_at,
            }
        })
        .collect();
    rows.sort_by(|x, y| {
        let lead = |r: &SweepRow| r.f.leading_term().map(|(m, _)| *m);
        x.f.total_degree()
            .cmp(&y.f.total_degree())
            .then_with(|| lead(y).cmp(&lead(x)))
            .then_with(|| x.f.cmp(&y.f))
    });
    rows
}
