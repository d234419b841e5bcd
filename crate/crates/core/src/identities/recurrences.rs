//! Generalized recurrences for bi-variate poly-Bernoulli polynomials, the
//! binomial shift family they imply, and the Carlitz reciprocity.

use crate::bernoulli::{bernoulli_number, inv_pow, pb2_poly, pb_poly, X};
use crate::combinat::{binomial_rat, factorial_rat};
use crate::poly::{rising_product, MPoly};
use crate::rat::Rat;
use crate::stirling::{gsn_symbolic, stirling2};
use crate::stirling::{X1, X2};

use super::{r_function, IdentityError};

/// The three members of a generalized recurrence: the sum over `x1`-indices,
/// the sum over `x2`-indices, and the closed Stirling-type right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Members {
    pub lhs1: MPoly,
    pub lhs2: MPoly,
    pub rhs: MPoly,
}

impl Members {
    fn agree(self, identity: &'static str) -> Result<Members, IdentityError> {
        for other in [&self.lhs2, &self.rhs] {
            if self.lhs1 != *other {
                return Err(IdentityError::Disagreement {
                    identity,
                    left: self.lhs1.render(),
                    right: other.render(),
                });
            }
        }
        Ok(self)
    }
}

fn x1() -> MPoly {
    MPoly::var(X1)
}

fn x2() -> MPoly {
    MPoly::var(X2)
}

/// `Σ_l C(q,l) (-v)^(q-l) B_{shifted(l)}^(k)` with `v` either `x1` or `x2`.
fn alternating_binomial_sum(q: u32, v: &MPoly, mut term: impl FnMut(u32) -> MPoly) -> MPoly {
    let neg = -v;
    (0..=q)
        .map(|l| neg.pow(q - l) * term(l).scale(&binomial_rat(q, l as i64)))
        .sum::<MPoly>()
        .embed(&[X1, X2])
}

/// The kernel `(-1)^l l! R_{q-1,k}(l) / (Π_{i=1}^{q+1} (l+i))^k`.
pub(crate) fn recurrence_kernel(q: u32, k: i64, l: u32) -> Result<Rat, IdentityError> {
    let r = r_function(q as i64 - 1, k, &Rat::from(l))?.value;
    let prod: Rat = (1..=q + 1).map(|i| Rat::from(l + i)).product();
    let scale = prod.checked_pow(-k).expect("product of positive integers");
    Ok(Rat::sign_pow(l) * factorial_rat(l) * r * scale)
}

/// Members of the first generalized recurrence:
/// `Σ C(q,l)(-x1)^(q-l) B_{p1+l,p2}^(k) = Σ C(q,l)(-x2)^(q-l) B_{p1,p2+l}^(k)
///  = -Σ_l S_{1,x1}^{1,x2,p2}(p1,l) (-1)^l l! R_{q-1,k}(l) / (Π (l+i))^k`.
///
/// Returns [`IdentityError::Disagreement`] if any two members differ.
pub fn gen_recurrence_a(p1: u32, p2: u32, q: u32, k: i64) -> Result<Members, IdentityError> {
    let lhs1 = alternating_binomial_sum(q, &x1(), |l| pb2_poly(p1 + l, p2, k));
    let lhs2 = alternating_binomial_sum(q, &x2(), |l| pb2_poly(p1, p2 + l, k));
    let mut rhs = MPoly::zero_in(&[X1, X2]);
    for l in 0..=p1 + p2 {
        rhs -= gsn_symbolic(p1, p2, l as i64).scale(&recurrence_kernel(q, k, l)?);
    }
    Members { lhs1, lhs2, rhs }.agree("generalized-recurrence")
}

/// `Σ_l (-1)^l B_{..}^(k) (1/l!) d^l/dv^l Π_{i<q} (v+i)`.
fn derivative_weighted_sum(q: u32, var: &str, mut term: impl FnMut(u32) -> MPoly) -> MPoly {
    let mut deriv = rising_product(q, var);
    let mut acc = MPoly::zero_in(&[X1, X2]);
    for l in 0..=q {
        let w = Rat::sign_pow(l) * factorial_rat(l).recip().unwrap();
        acc += (&deriv * &term(l)).scale(&w);
        deriv = deriv.diff(var);
    }
    acc
}

/// Members of the second generalized recurrence:
/// `Σ (-1)^l B_{p1+l,p2}^(k) (1/l!) D_{x1}^l Π(x1+i)` (and its `x2` twin)
/// `= Σ_l S_{1,x1+q}^{1,x2+q,p2}(p1,l) (-1)^l (l+q)! / (l+q+1)^k`.
pub fn gen_recurrence_b(p1: u32, p2: u32, q: u32, k: i64) -> Result<Members, IdentityError> {
    let lhs1 = derivative_weighted_sum(q, X1, |l| pb2_poly(p1 + l, p2, k));
    let lhs2 = derivative_weighted_sum(q, X2, |l| pb2_poly(p1, p2 + l, k));
    let shift = [(X1, x1() + MPoly::from(q as i64)), (X2, x2() + MPoly::from(q as i64))];
    let mut rhs = MPoly::zero_in(&[X1, X2]);
    for l in 0..=p1 + p2 {
        let w = Rat::sign_pow(l) * factorial_rat(l + q) * inv_pow(l + q + 1, k);
        rhs += gsn_symbolic(p1, p2, l as i64).subst(&shift).scale(&w);
    }
    Members { lhs1, lhs2, rhs }.agree("derivative-weighted-recurrence")
}

/// Applies `B_{a,b+1} = B_{a+1,b} + (x2-x1) B_{a,b}` `q` times to the row
/// `B_{p1+i,p2}`, `i = 0..=q`, landing on `B_{p1,p2+q}`.
fn difference_chain(p1: u32, p2: u32, q: u32, k: i64) -> MPoly {
    let d = x2() - x1();
    let mut row: Vec<MPoly> = (0..=q).map(|i| pb2_poly(p1 + i, p2, k)).collect();
    for _ in 0..q {
        row = row.windows(2).map(|w| &w[1] + &(&d * &w[0])).collect();
    }
    row.swap_remove(0)
}

/// The binomial shift identities for bi-variate poly-Bernoulli polynomials:
///
/// * `Σ C(q,j) (-1)^j B_{p1+j,p2+q-j}^(k) = (x2-x1)^q B_{p1,p2}^(k)`
/// * `Σ C(q,j) (x2-x1)^j B_{p1+q-j,p2}^(k) = B_{p1,p2+q}^(k)`, also reached
///   by iterating the one-step difference rule
/// * its `p1 = 0` case `Σ C(q,j) (x2-x1)^j B_{q-j,p2}^(k) = B_{p2+q}^(k)(x2)`,
///   and the further `p2 = 0` case, the one-variable addition formula
/// * `Σ C(q,j) (-1)^j B_{j,q-j}^(k) = (x2-x1)^q`.
pub fn check_binomial_shift_family(p1: u32, p2: u32, q: u32, k: i64) -> bool {
    binomial_shift_groups(p1, p2, q, k)
        .iter()
        .all(|(_, m)| m.iter().all(|x| *x == m[0]))
}

pub(crate) fn binomial_shift_groups(p1: u32, p2: u32, q: u32, k: i64) -> Vec<(&'static str, Vec<MPoly>)> {
    let d = x2() - x1();
    let c = |j: u32| binomial_rat(q, j as i64);

    let alternating: MPoly = (0..=q)
        .map(|j| pb2_poly(p1 + j, p2 + q - j, k).scale(&(Rat::sign_pow(j) * c(j))))
        .sum();
    let weighted: MPoly = (0..=q)
        .map(|j| d.pow(j) * pb2_poly(p1 + q - j, p2, k).scale(&c(j)))
        .sum();
    let corner: MPoly = (0..=q).map(|j| d.pow(j) * pb2_poly(q - j, p2, k).scale(&c(j))).sum();
    let one_var: MPoly = (0..=q)
        .map(|j| d.pow(q - j) * pb_poly(j, k).subst(&[(X, x1())]).scale(&c(j)))
        .sum();
    let pure: MPoly = (0..=q)
        .map(|j| pb2_poly(j, q - j, k).scale(&(Rat::sign_pow(j) * c(j))))
        .sum();

    vec![
        (
            "alternating-binomial-shift",
            vec![alternating, d.pow(q) * pb2_poly(p1, p2, k)],
        ),
        (
            "weighted-binomial-shift",
            vec![weighted, difference_chain(p1, p2, q, k), pb2_poly(p1, p2 + q, k)],
        ),
        (
            "corner-binomial-shift",
            vec![corner, pb_poly(p2 + q, k).subst(&[(X, x2())])],
        ),
        ("one-variable-shift", vec![one_var, pb_poly(q, k).subst(&[(X, x2())])]),
        ("pure-binomial-shift", vec![pure, d.pow(q)]),
    ]
}

/// The Carlitz reciprocity for Bernoulli numbers,
/// `(-1)^(p1+p2) Σ C(p2,j) B_{p1+j} = Σ C(p1,j) B_{j+p2}`, its Stirling form,
/// and the bi-variate restatement `B_{p1,p2}(1,0) = (-1)^(p1+p2) B_{p1,p2}(0,1)`
/// at `k = 1`.
pub fn carlitz_check(p1: u32, p2: u32) -> bool {
    let m = carlitz_members(p1, p2);
    m.iter().all(|v| *v == m[0])
}

pub(crate) fn carlitz_members(p1: u32, p2: u32) -> Vec<Rat> {
    let sign = Rat::sign_pow(p1 + p2);
    let left: Rat = (0..=p2)
        .map(|j| binomial_rat(p2, j as i64) * bernoulli_number(p1 + j))
        .sum::<Rat>()
        * &sign;
    let right: Rat = (0..=p1)
        .map(|j| binomial_rat(p1, j as i64) * bernoulli_number(j + p2))
        .sum();
    let stirling_form: Rat = (0..=p1)
        .flat_map(|j| (0..=j + p2).map(move |l| (j, l)))
        .map(|(j, l)| {
            binomial_rat(p1, j as i64) * stirling2(j + p2, l as i64) * Rat::sign_pow(l) * factorial_rat(l)
                / Rat::from(l + 1)
        })
        .sum();
    let b = pb2_poly(p1, p2, 1);
    let at = |a: i64, c: i64| b.eval(&[(X1, Rat::from(a)), (X2, Rat::from(c))]).unwrap();
    let (at10, at01) = (at(1, 0), at(0, 1));
    vec![left, right, stirling_form, at10, sign * at01]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stirling::gsn_factorial_sum;

    #[test]
    fn q_zero_is_the_definition() {
        for k in -1..3 {
            let m = gen_recurrence_a(2, 1, 0, k).unwrap();
            assert_eq!(m.lhs1, pb2_poly(2, 1, k));
            let m = gen_recurrence_b(2, 1, 0, k).unwrap();
            assert_eq!(m.rhs, pb2_poly(2, 1, k));
        }
    }

    #[test]
    fn first_recurrence_at_q_one_matches_displayed_kernel() {
        let (p1, p2, k) = (1, 1, 1);
        let m = gen_recurrence_a(p1, p2, 1, k).unwrap();
        let mut display = MPoly::zero();
        for l in 0..=p1 + p2 {
            let kern = Rat::from(l + 1) * inv_pow(l + 2, k) - Rat::from(l) * inv_pow(l + 1, k);
            display -= gsn_symbolic(p1, p2, l as i64).scale(&(Rat::sign_pow(l) * factorial_rat(l) * kern));
        }
        assert_eq!(m.rhs, display);
        assert_eq!(m.lhs1, pb2_poly(2, 1, 1) - x1() * pb2_poly(1, 1, 1));
    }

    #[test]
    fn first_recurrence_at_q_two_matches_displayed_kernel() {
        let (p1, p2, k) = (1, 0, 2);
        let m = gen_recurrence_a(p1, p2, 2, k).unwrap();
        let mut display = MPoly::zero();
        for l in 0..=p1 + p2 {
            let lr = Rat::from(l);
            let kern = Rat::from(2 * l + 1) * Rat::from(l + 1) * inv_pow(l + 2, k)
                - &lr * &lr * inv_pow(l + 1, k)
                - Rat::from((l + 1) * (l + 2)) * inv_pow(l + 3, k);
            display -= gsn_symbolic(p1, p2, l as i64).scale(&(Rat::sign_pow(l) * factorial_rat(l) * kern));
        }
        assert_eq!(m.rhs, display);
        let x = x1();
        let expect = &x * &x * pb2_poly(1, 0, k) - (&x * &pb2_poly(2, 0, k)).scale(&Rat::from(2)) + pb2_poly(3, 0, k);
        assert_eq!(m.lhs1, expect);
    }

    #[test]
    fn small_k_reduce_to_factorial_sums() {
        for q in 0..4 {
            let sign = Rat::sign_pow(q);
            let zero = gsn_factorial_sum(2, 2, 0).scale(&sign);
            assert_eq!(gen_recurrence_a(2, 2, q, 0).unwrap().rhs, zero);
            let minus = gsn_factorial_sum(2, 2, 1).scale(&(sign * Rat::from(2).pow(q)));
            assert_eq!(gen_recurrence_a(2, 2, q, -1).unwrap().rhs, minus);
        }
    }

    #[test]
    fn second_recurrence_at_q_one_is_difference_rule() {
        for k in -1..3 {
            let m = gen_recurrence_b(2, 1, 1, k).unwrap();
            assert_eq!(m.lhs1, x1() * pb2_poly(2, 1, k) - pb2_poly(3, 1, k));
            assert_eq!(m.lhs2, x2() * pb2_poly(2, 1, k) - pb2_poly(2, 2, k));
            let step = pb2_poly(2, 2, k) - pb2_poly(3, 1, k);
            assert_eq!(step, (x2() - x1()) * pb2_poly(2, 1, k));
        }
    }

    #[test]
    fn second_recurrence_at_origin_uses_first_kind_weights() {
        use crate::stirling::stirling1_unsigned;
        let (p1, p2, k) = (1, 2, 1);
        for q in 0..4u32 {
            let m = gen_recurrence_b(p1, p2, q, k).unwrap();
            let v = m.lhs1.eval(&[(X1, Rat::zero()), (X2, Rat::one())]).unwrap();
            let at01 = |a: u32, b: u32| pb2_poly(a, b, k).eval(&[(X1, Rat::zero()), (X2, Rat::one())]).unwrap();
            let first: Rat = (0..=q)
                .map(|l| Rat::sign_pow(l) * stirling1_unsigned(q, l as i64) * at01(p1 + l, p2))
                .sum();
            let second: Rat = (0..=q)
                .map(|l| Rat::sign_pow(l) * stirling1_unsigned(q + 1, l as i64 + 1) * at01(p1, p2 + l))
                .sum();
            assert_eq!(v, first);
            assert_eq!(v, second);
        }
    }

    #[test]
    fn binomial_shift_family_examples() {
        for k in -1..3 {
            assert!(check_binomial_shift_family(0, 0, 3, k));
            assert!(check_binomial_shift_family(0, 2, 2, k));
            assert!(check_binomial_shift_family(2, 1, 0, k));
        }
        // explicit p1 = p2 = 0, q = 3 instance
        let s: MPoly = (0..=3u32)
            .map(|j| pb2_poly(j, 3 - j, 2).scale(&(Rat::sign_pow(j) * binomial_rat(3, j as i64))))
            .sum();
        assert_eq!(s, (x2() - x1()).pow(3));
    }

    #[test]
    fn carlitz_small_cases() {
        assert!(carlitz_check(0, 0));
        assert!(carlitz_check(1, 1));
        assert!(carlitz_check(2, 3));
        let b = pb2_poly(1, 1, 1);
        let v = |a: i64, c: i64| b.eval(&[(X1, Rat::from(a)), (X2, Rat::from(c))]).unwrap();
        assert_eq!(v(1, 0), Rat::new(-1, 3));
        assert_eq!(v(0, 1), Rat::new(-1, 3));
    }
}
