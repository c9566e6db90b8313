mod common;

use common::*;
use darboux_core::algebra::linalg::{nullspace, rank, Matrix};
use darboux_core::algebra::rat;
use darboux_core::field::parse_poly;
use darboux_core::{Poly, Rat, Var};
use num_traits::Zero;
use proptest::prelude::*;

fn eval(p: &Poly, at: &[Rat; 3]) -> Rat {
    eval_dense(&to_dense(p), at)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(
        p in poly_strategy(4, 6),
        q in poly_strategy(4, 6),
        r in poly_strategy(4, 6),
    ) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p + &Poly::zero(), p.clone());
        prop_assert_eq!(&p * &Poly::one(), p.clone());
        prop_assert!((&p - &p).is_zero());
        prop_assert!((&p + &(-&p)).is_zero());
    }

    #[test]
    fn arithmetic_matches_evaluation(
        p in poly_strategy(4, 6),
        q in poly_strategy(4, 6),
        at in point_strategy(),
    ) {
        prop_assert_eq!(eval(&(&p + &q), &at), eval(&p, &at) + eval(&q, &at));
        prop_assert_eq!(eval(&(&p * &q), &at), eval(&p, &at) * eval(&q, &at));
        prop_assert_eq!(p.eval_rat(&at).unwrap(), eval(&p, &at));
    }

    #[test]
    fn product_degree_and_pow(p in poly_strategy(3, 5), q in poly_strategy(3, 5)) {
        if !p.is_zero() && !q.is_zero() {
            prop_assert_eq!((&p * &q).total_degree(), p.total_degree() + q.total_degree());
        }
        prop_assert_eq!(p.pow(3), &(&p * &p) * &p);
    }

    #[test]
    fn leibniz_for_partials(p in poly_strategy(4, 6), q in poly_strategy(4, 6)) {
        for v in Var::ALL {
            let lhs = (&p * &q).partial(v);
            let rhs = &(&p.partial(v) * &q) + &(&p * &q.partial(v));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn sign_changes_are_involutions(p in poly_strategy(4, 8), s in prop::array::uniform3(prop::bool::ANY)) {
        let mut m = [[rat(0, 1), rat(0, 1), rat(0, 1)], [rat(0, 1), rat(0, 1), rat(0, 1)], [rat(0, 1), rat(0, 1), rat(0, 1)]];
        for i in 0..3 {
            m[i][i] = if s[i] { rat(-1, 1) } else { rat(1, 1) };
        }
        prop_assert_eq!(p.compose_linear(&m).compose_linear(&m), p.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(p in poly_strategy(3, 5), q in poly_strategy(2, 4)) {
        if !q.is_zero() {
            prop_assert_eq!((&p * &q).div_exact(&q), Some(p.clone()));
        }
    }

    #[test]
    fn homogeneous_components_sum_back(p in poly_strategy(5, 10)) {
        let parts = p.homogeneous_components();
        let total = parts.iter().fold(Poly::zero(), |acc, (_, h)| &acc + h);
        prop_assert_eq!(total, p.clone());
        for (d, h) in parts {
            prop_assert!(h.is_homogeneous());
            prop_assert_eq!(h.total_degree(), d);
        }
    }

    #[test]
    fn render_parse_round_trip(p in poly_strategy(5, 10)) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p.clone());
    }

    #[test]
    fn nullspace_matches_gauss_jordan(
        rows in 1usize..=20,
        cols in 1usize..=20,
        seed in prop::collection::vec(-3i64..=3, 400),
        sparsity in 0usize..4,
    ) {
        let entries: Vec<Vec<Rat>> = (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| {
                        let v = seed[i * 20 + j];
                        if (i + j) % 4 < sparsity { rat(0, 1) } else { rat(v, 1 + (i as i64 % 3)) }
                    })
                    .collect()
            })
            .collect();
        let m = Matrix::from_rows(entries.clone(), cols);
        let ker = nullspace(&m);
        let reference = kernel(entries.clone(), cols);
        prop_assert_eq!(ker.len(), reference.len());
        prop_assert_eq!(rank(&m), cols - reference.len());
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            prop_assert!(v.iter().any(|x| !x.is_zero()));
        }
        if !ker.is_empty() {
            prop_assert_eq!(rank_of(ker.clone(), cols), ker.len());
        }
    }
}

#[test]
fn brute_force_nullspace_small_cases() {
    // Every 2x3 matrix with entries in {-1, 0, 1}: the kernel computed by
    // elimination has the dimension predicted by exhaustive rank counting.
    let vals = [-1i64, 0, 1];
    for code in 0..3usize.pow(6) {
        let mut c = code;
        let mut e = Vec::new();
        for _ in 0..6 {
            e.push(rat(vals[c % 3], 1));
            c /= 3;
        }
        let rows = vec![e[0..3].to_vec(), e[3..6].to_vec()];
        let m = Matrix::from_rows(rows.clone(), 3);
        let r0 = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).count();
        let cross_zero = {
            let (a, b) = (&rows[0], &rows[1]);
            (&a[1] * &b[2] - &a[2] * &b[1]).is_zero()
                && (&a[2] * &b[0] - &a[0] * &b[2]).is_zero()
                && (&a[0] * &b[1] - &a[1] * &b[0]).is_zero()
        };
        let expected_rank = if r0 == 0 { 0 } else if cross_zero { 1 } else { 2 };
        assert_eq!(nullspace(&m).len(), 3 - expected_rank, "matrix {rows:?}");
    }
}
