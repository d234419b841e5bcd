mod common;

use common::*;
use polybern::combinat::{binomial_rat, factorial_rat};
use polybern::stirling::*;
use polybern::{MPoly, Rat};
use proptest::prelude::*;

fn explicit_stirling2(p: u32, k: u32) -> Rat {
    let sum: Rat = (0..=k)
        .map(|j| Rat::sign_pow(k - j) * binomial_rat(k, j as i64) * Rat::from(j).pow(p))
        .sum();
    sum / factorial_rat(k)
}

#[test]
fn triangle_matches_explicit_sum() {
    for p in 0..=12 {
        for k in 0..=p {
            assert_eq!(stirling2(p, k as i64), explicit_stirling2(p, k), "S({p},{k})");
        }
        assert!(stirling2(p, p as i64 + 1).is_zero());
        assert!(stirling2(p, -1).is_zero());
    }
}

#[test]
fn first_kind_row_sums_are_factorials() {
    for n in 0..=10 {
        let row: Rat = (0..=n).map(|k| stirling1_unsigned(n, k as i64)).sum();
        assert_eq!(row, factorial_rat(n));
    }
}

#[test]
fn offset_reductions() {
    for p in 0..=8 {
        for k in 0..=p as i64 {
            let one = GsnParams::new(Rat::one(), 1, p, Rat::one(), 0, 0).unwrap();
            assert_eq!(gsn_explicit(&one, k), MPoly::constant(stirling2(p + 1, k + 1)));
            let two = GsnParams::new(Rat::one(), 2, p, Rat::one(), 0, 0).unwrap();
            let expect = stirling2(p + 2, k + 2) - stirling2(p + 1, k + 2);
            assert_eq!(gsn_explicit(&two, k), MPoly::constant(expect));
        }
    }
}

#[test]
fn zero_slope_is_rejected() {
    assert!(GsnParams::new(Rat::zero(), 1, 2, Rat::one(), 0, 1).is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn defining_expansion(
        a1 in nonzero_rat(), b1 in small_rat(), a2 in nonzero_rat(), b2 in small_rat(),
        p1 in 0u32..=3, p2 in 0u32..=3,
    ) {
        let params = GsnParams::new(a1.clone(), b1.clone(), p1, a2.clone(), b2.clone(), p2).unwrap();
        let table: Vec<Rat> = (0..=p1 + p2)
            .map(|k| gsn_explicit(&params, k as i64).as_constant().unwrap())
            .collect();
        for m in 0..=p1 + p2 + 2 {
            let mr = Rat::from(m);
            let lhs = (&a1 * &mr + &b1).pow(p1) * (&a2 * &mr + &b2).pow(p2);
            let rhs: Rat = table
                .iter()
                .enumerate()
                .map(|(k, s)| s * factorial_rat(k as u32) * binomial_rat(m, k as i64))
                .sum();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn equal_parameters_collapse(a in nonzero_rat(), b in small_rat(), p1 in 0u32..=4, p2 in 0u32..=4) {
        let both = GsnParams::new(a.clone(), b.clone(), p1, a.clone(), b.clone(), p2).unwrap();
        let single = GsnParams::new(a, b, p1 + p2, Rat::one(), 0, 0).unwrap();
        for k in 0..=(p1 + p2) as i64 {
            prop_assert_eq!(gsn_explicit(&both, k), gsn_explicit(&single, k));
        }
    }

    #[test]
    fn out_of_range_orders_vanish(p1 in 0u32..=4, p2 in 0u32..=4, extra in 1i64..4) {
        prop_assert!(gsn_symbolic(p1, p2, -extra).is_zero());
        prop_assert!(gsn_symbolic(p1, p2, (p1 + p2) as i64 + extra).is_zero());
    }

    #[test]
    fn change_of_basis_at_rational_points(p1 in 0u32..=3, p2 in 0u32..=3, y1 in small_rat(), y2 in small_rat()) {
        for k in 0..=(p1 + p2) as i64 {
            prop_assert_eq!(gsn_change_basis(p1, p2, k, &y1, &y2), gsn_symbolic(p1, p2, k));
        }
    }
}

#[test]
fn symbolic_laws_up_to_degree_four() {
    let x1 = MPoly::var("x1");
    let x2 = MPoly::var("x2");
    let shift = [("x1", &x1 + &MPoly::one()), ("x2", &x2 + &MPoly::one())];
    for p1 in 0..=4 {
        for p2 in 0..=4 {
            let top = p1 + p2;
            assert_eq!(gsn_symbolic(p1, p2, 0), x1.pow(p1) * x2.pow(p2));
            assert_eq!(gsn_symbolic(p1, p2, top as i64), MPoly::one());
            for k in 0..=top as i64 {
                let s = gsn_symbolic(p1, p2, k);
                let next = gsn_symbolic(p1, p2, k + 1).scale(&Rat::from(k + 1));
                assert_eq!(s.subst(&shift), &s + &next, "shift p1={p1} p2={p2} k={k}");
                assert_eq!(gsn_recurrence(p1, p2, k), s);
                for m in 0..=2 {
                    assert_eq!(gsn_via_stirling_m(p1, p2, k, m), s);
                }
                for n in 1..=3 {
                    assert_eq!(gsn_via_stirling_n(p1, p2, k, n), s);
                }
            }
            for r in 0..=3 {
                let c = MPoly::from(r as i64 + 1);
                let closed = ((&x1 - &c).pow(p1) * (&x2 - &c).pow(p2)).scale(&factorial_rat(r));
                assert_eq!(gsn_factorial_sum(p1, p2, r), closed);
            }
        }
    }
}
