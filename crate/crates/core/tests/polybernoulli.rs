mod common;

use common::*;
use polybern::bernoulli::*;
use polybern::combinat::binomial_rat;
use polybern::{MPoly, Rat};
use proptest::prelude::*;

fn x1() -> MPoly {
    MPoly::var("x1")
}
fn x2() -> MPoly {
    MPoly::var("x2")
}

#[test]
fn classical_values() {
    let expect = [
        (0, Rat::one()),
        (1, Rat::new(-1, 2)),
        (2, Rat::new(1, 6)),
        (4, Rat::new(-1, 30)),
        (12, Rat::new(-691, 2730)),
    ];
    for (p, b) in expect {
        assert_eq!(bernoulli_number(p), b);
        assert_eq!(pb_number(p, 1), b);
    }
    for p in (3..20).step_by(2) {
        assert!(bernoulli_number(p).is_zero());
    }
}

#[test]
fn negative_orders_give_integers() {
    for p in 0..8 {
        for k in -4..=0 {
            assert!(pb_number(p, k).is_integer(), "p={p} k={k}");
        }
    }
}

#[test]
fn closed_forms_at_small_orders() {
    for p1 in 0..=5 {
        for p2 in 0..=5 {
            let one = MPoly::one();
            let two = MPoly::from(2);
            assert_eq!(pb2_poly(p1, p2, 0), (x1() - &one).pow(p1) * (x2() - &one).pow(p2));
            assert_eq!(pb2_poly(p1, p2, -1), (x1() - &two).pow(p1) * (x2() - &two).pow(p2));
        }
    }
}

#[test]
fn routes_agree() {
    for p1 in 0..=3 {
        for p2 in 0..=3 {
            for k in -2..=3 {
                let base = pb2(p1, p2, k, Pb2Route::Definition);
                for route in [
                    Pb2Route::Explicit,
                    Pb2Route::Numbers,
                    Pb2Route::StirlingM(0),
                    Pb2Route::StirlingM(2),
                    Pb2Route::StirlingN(1),
                    Pb2Route::StirlingN(3),
                ] {
                    assert_eq!(pb2(p1, p2, k, route).poly, base.poly, "{route:?} p1={p1} p2={p2} k={k}");
                }
            }
        }
    }
}

#[test]
fn reflection_of_classical_polynomials() {
    for r in 0..=10 {
        let b = pb_poly(r, 1);
        let reflected = b.subst(&[(X, MPoly::one() - MPoly::var(X))]);
        assert_eq!(reflected, b.scale(&Rat::sign_pow(r)));
        assert_eq!(b, bernoulli_poly(r));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn diagonal_corners_and_derivatives(p1 in 0u32..=4, p2 in 0u32..=4, k in -2i64..=3) {
        let b = pb2_poly(p1, p2, k);
        let x = MPoly::var(X);
        prop_assert_eq!(b.subst(&[("x1", x.clone()), ("x2", x)]), pb_poly(p1 + p2, k));
        prop_assert_eq!(pb2_poly(p1, 0, k), pb_poly(p1, k).subst(&[(X, x1())]));
        prop_assert_eq!(pb2_poly(0, p2, k), pb_poly(p2, k).subst(&[(X, x2())]));
        let d1 = if p1 == 0 { MPoly::zero() } else { pb2_poly(p1 - 1, p2, k).scale(&Rat::from(p1)) };
        prop_assert_eq!(b.diff("x1"), d1);
        let d2 = if p2 == 0 { MPoly::zero() } else { pb2_poly(p1, p2 - 1, k).scale(&Rat::from(p2)) };
        prop_assert_eq!(b.diff("x2"), d2);
    }

    #[test]
    fn addition_at_rational_centres(p1 in 0u32..=3, p2 in 0u32..=3, k in -2i64..=3, y1 in small_rat(), y2 in small_rat()) {
        let moved = pb2_addition(p1, p2, k, &MPoly::constant(y1), &MPoly::constant(y2));
        prop_assert_eq!(moved.poly, pb2_poly(p1, p2, k));
    }

    #[test]
    fn values_at_rational_points(p1 in 0u32..=3, p2 in 0u32..=3, k in -2i64..=3, a in small_rat(), b in small_rat()) {
        let poly = pb2(p1, p2, k, Pb2Route::Explicit);
        let direct = poly.eval(&[a.clone(), b.clone()]);
        prop_assert_eq!(Some(direct), pb2_poly(p1, p2, k).eval(&[("x1", a), ("x2", b)]));
    }

    #[test]
    fn one_variable_addition(p in 0u32..=6, k in -2i64..=3, y in small_rat()) {
        let yc = MPoly::constant(y.clone());
        let sum: MPoly = (0..=p)
            .map(|j| (MPoly::var(X) - &yc).pow(p - j).scale(&(binomial_rat(p, j as i64) * pb_poly(j, k).eval(&[(X, y.clone())]).unwrap())))
            .sum();
        prop_assert_eq!(sum, pb_poly(p, k));
    }

    #[test]
    fn n_variate_collapses(p1 in 0u32..=3, p2 in 0u32..=3, p3 in 0u32..=2, k in -1i64..=2) {
        prop_assert_eq!(pbn(&[p1], k).poly, pb_poly(p1, k).subst(&[(X, x1())]));
        prop_assert_eq!(pbn(&[p1, p2], k).poly, pb2_poly(p1, p2, k));
        let x = MPoly::var(X);
        let all = [("x1", x.clone()), ("x2", x.clone()), ("x3", x)];
        prop_assert_eq!(pbn(&[p1, p2, p3], k).poly.subst(&all), pb_poly(p1 + p2 + p3, k));
        prop_assert_eq!(pbn(&[p1, p2, p3], k).poly, pbn_via_stirling(&[p1, p2, p3], k));
    }
}
