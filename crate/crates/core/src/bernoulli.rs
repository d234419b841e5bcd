//! Bernoulli and poly-Bernoulli numbers and polynomials in one, two and
//! `n` variables.
//!
//! The one-variable poly-Bernoulli polynomial is
//! `B_p^(k)(x) = Σ_l (l+1)^(-k) Σ_j (-1)^j C(l,j) (j+x)^p`. The index `k` is
//! an arbitrary integer; for `k <= 0` every weight `(l+1)^(-k)` is an
//! integer. With this convention `B_p^(1)(x)` is the classical Bernoulli
//! polynomial, so `B_1^(1) = -1/2`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::combinat::{binomial_rat, factorial_rat};
use crate::poly::MPoly;
use crate::rat::Rat;
use crate::stirling::{gsn_explicit, gsn_symbolic, stirling1_unsigned, stirling2, GsnParams, Offset};

pub const X: &str = "x";

/// `1/(l+1)^k` for any integer `k`.
pub(crate) fn inv_pow(base: u32, k: i64) -> Rat {
    Rat::from(base).checked_pow(-k).expect("positive base")
}

/// `(-1)^l l! / (l+1)^k`, the weight attached to the `l`-th GSN.
pub(crate) fn weight(l: u32, k: i64) -> Rat {
    Rat::sign_pow(l) * factorial_rat(l) * inv_pow(l + 1, k)
}

/// `x_i` for `i = 1..=n`.
pub fn var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Classical Bernoulli number from the Stirling-weighted sum; `B_1 = -1/2`.
pub fn bernoulli_number(p: u32) -> Rat {
    (0..=p)
        .map(|l| stirling2(p, l as i64) * Rat::sign_pow(l) * factorial_rat(l) / Rat::from(l + 1))
        .sum()
}

/// Classical Bernoulli polynomial `B_p(x)` from the double Stirling sum.
pub fn bernoulli_poly(p: u32) -> MPoly {
    let x = MPoly::var(X);
    let mut acc = MPoly::zero_in(&[X]);
    for j in 0..=p {
        let c: Rat = (0..=j)
            .map(|l| stirling2(j, l as i64) * Rat::sign_pow(l) * factorial_rat(l) / Rat::from(l + 1))
            .sum();
        acc += x.pow(p - j).scale(&(binomial_rat(p, j as i64) * c));
    }
    acc
}

/// `B_p(u)` for a polynomial argument.
pub fn bernoulli_poly_at(p: u32, u: &MPoly) -> MPoly {
    bernoulli_poly(p).subst(&[(X, u.clone())])
}

fn number_cache() -> &'static RwLock<HashMap<(u32, i64), Rat>> {
    static C: OnceLock<RwLock<HashMap<(u32, i64), Rat>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Poly-Bernoulli number `B_p^(k) = Σ_l S(p,l) (-1)^l l! / (l+1)^k`.
pub fn pb_number(p: u32, k: i64) -> Rat {
    if let Some(v) = number_cache().read().unwrap().get(&(p, k)) {
        return v.clone();
    }
    let v: Rat = (0..=p).map(|l| stirling2(p, l as i64) * weight(l, k)).sum();
    number_cache().write().unwrap().insert((p, k), v.clone());
    v
}

/// Poly-Bernoulli polynomial in `x` from the defining alternating double sum.
pub fn pb_poly(p: u32, k: i64) -> MPoly {
    let mut acc = MPoly::zero_in(&[X]);
    for l in 0..=p {
        let inner: MPoly = (0..=l)
            .map(|j| {
                MPoly::shifted_var(X, j)
                    .pow(p)
                    .scale(&(Rat::sign_pow(j) * binomial_rat(l, j as i64)))
            })
            .sum();
        acc += inner.scale(&inv_pow(l + 1, k));
    }
    acc
}

/// Poly-Bernoulli polynomial in `x` as a weighted sum of `S_{1,x}(p, l)`.
pub fn pb_poly_via_gsn(p: u32, k: i64) -> MPoly {
    let params = GsnParams::new(Rat::one(), Offset::Symbol(X.into()), p, Rat::one(), 0, 0).unwrap();
    let mut acc = MPoly::zero_in(&[X]);
    for l in 0..=p {
        acc += gsn_explicit(&params, l as i64).scale(&weight(l, k));
    }
    acc
}

/// `B_p^(k)(u) = Σ_j C(p,j) u^(p-j) B_j^(k)` for a polynomial argument `u`.
pub fn pb_poly_at(p: u32, k: i64, u: &MPoly) -> MPoly {
    let mut acc = MPoly::zero();
    let mut upow = MPoly::one();
    // j runs downward so u's power climbs.
    for j in (0..=p).rev() {
        acc += upow.scale(&(binomial_rat(p, j as i64) * pb_number(j, k)));
        if j > 0 {
            upow = &upow * u;
        }
    }
    acc.embed(u.vars())
}

/// Degrees `(p_1, ..., p_n)` and the integer order `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbIndex {
    pub degrees: Vec<u32>,
    pub k: i64,
}

/// A poly-Bernoulli polynomial in `x1, ..., xn` together with its index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbPolynomial {
    pub index: PbIndex,
    pub poly: MPoly,
}

impl PbPolynomial {
    /// Evaluates at a point of `Q^n`, coordinates in variable order.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        let names = var_names(self.index.degrees.len());
        let values: Vec<(&str, Rat)> = names.iter().map(String::as_str).zip(point.iter().cloned()).collect();
        self.poly.eval(&values).expect("every variable bound")
    }
}

/// Construction routes for the bi-variate polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pb2Route {
    /// Weighted sum of the symbolic GSN.
    Definition,
    /// Double alternating sum of shifted powers.
    Explicit,
    /// Binomial expansion over poly-Bernoulli numbers.
    Numbers,
    /// Standard Stirling numbers around the integer centre `m`.
    StirlingM(u32),
    /// Stirling numbers of both kinds around the positive integer centre `n`.
    StirlingN(u32),
}

const X1: &str = "x1";
const X2: &str = "x2";

fn centred_products(p1: u32, p2: u32, c: i64) -> Vec<Vec<MPoly>> {
    let d1 = MPoly::shifted_var(X1, -c);
    let d2 = MPoly::shifted_var(X2, -c);
    (0..=p1)
        .map(|j1| {
            let a = d1.pow(p1 - j1).scale(&binomial_rat(p1, j1 as i64));
            (0..=p2)
                .map(|j2| &a * &d2.pow(p2 - j2).scale(&binomial_rat(p2, j2 as i64)))
                .collect()
        })
        .collect()
}

/// `B_{p1,p2}^(k)(x1, x2)` through the chosen route.
pub fn pb2(p1: u32, p2: u32, k: i64, route: Pb2Route) -> PbPolynomial {
    let top = p1 + p2;
    let mut acc = MPoly::zero_in(&[X1, X2]);
    match route {
        Pb2Route::Definition => {
            for l in 0..=top {
                acc += gsn_symbolic(p1, p2, l as i64).scale(&weight(l, k));
            }
        }
        Pb2Route::Explicit => {
            for l in 0..=top {
                let mut inner = MPoly::zero();
                for j in 0..=l {
                    let s = (l - j) as i64;
                    let term = MPoly::shifted_var(X1, s).pow(p1) * MPoly::shifted_var(X2, s).pow(p2);
                    inner += term.scale(&(Rat::sign_pow(j) * binomial_rat(l, j as i64)));
                }
                acc += inner.scale(&(Rat::sign_pow(l) * inv_pow(l + 1, k)));
            }
        }
        Pb2Route::Numbers => {
            let prods = centred_products(p1, p2, 0);
            for j1 in 0..=p1 {
                for j2 in 0..=p2 {
                    acc += prods[j1 as usize][j2 as usize].scale(&pb_number(j1 + j2, k));
                }
            }
        }
        Pb2Route::StirlingM(m) => {
            let prods = centred_products(p1, p2, m as i64);
            for j1 in 0..=p1 {
                for j2 in 0..=p2 {
                    let c: Rat = (0..=top)
                        .flat_map(|l| (0..=m).map(move |i| (l, i)))
                        .map(|(l, i)| {
                            binomial_rat(m, i as i64)
                                * stirling2(j1 + j2, (l + i) as i64)
                                * Rat::sign_pow(l)
                                * factorial_rat(l + i)
                                * inv_pow(l + 1, k)
                        })
                        .sum();
                    acc += prods[j1 as usize][j2 as usize].scale(&c);
                }
            }
        }
        Pb2Route::StirlingN(n) => {
            assert!(n >= 1, "the first-kind route needs n >= 1");
            let prods = centred_products(p1, p2, n as i64);
            for j1 in 0..=p1 {
                for j2 in 0..=p2 {
                    let c: Rat = (0..=top)
                        .flat_map(|l| (0..n).map(move |i| (l, i)))
                        .map(|(l, i)| {
                            Rat::sign_pow(i)
                                * stirling1_unsigned(n, (n - i) as i64)
                                * stirling2(j1 + j2 + n - i, (l + n) as i64)
                                * weight(l, k)
                        })
                        .sum();
                    acc += prods[j1 as usize][j2 as usize].scale(&c);
                }
            }
        }
    }
    PbPolynomial {
        index: PbIndex {
            degrees: vec![p1, p2],
            k,
        },
        poly: acc,
    }
}

/// Shorthand for the bi-variate polynomial through the number expansion.
pub fn pb2_poly(p1: u32, p2: u32, k: i64) -> MPoly {
    pb2(p1, p2, k, Pb2Route::Numbers).poly
}

pub(crate) fn for_each_multi_index(degrees: &[u32], mut f: impl FnMut(&[u32])) {
    let mut idx = vec![0u32; degrees.len()];
    loop {
        f(&idx);
        let mut i = 0;
        loop {
            if i == idx.len() {
                return;
            }
            if idx[i] < degrees[i] {
                idx[i] += 1;
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn multi_binomial_term(names: &[String], degrees: &[u32], js: &[u32]) -> MPoly {
    let mut t = MPoly::constant_in(names, Rat::one());
    for ((name, &p), &j) in names.iter().zip(degrees).zip(js) {
        t = t * MPoly::var(name).pow(p - j).scale(&binomial_rat(p, j as i64));
    }
    t
}

/// Poly-Bernoulli polynomial in `n = degrees.len()` variables from the
/// multi-binomial expansion over poly-Bernoulli numbers.
pub fn pbn(degrees: &[u32], k: i64) -> PbPolynomial {
    assert!(!degrees.is_empty(), "at least one variable");
    let names = var_names(degrees.len());
    let mut acc = MPoly::zero_in(&names);
    for_each_multi_index(degrees, |js| {
        let w: u32 = js.iter().sum();
        acc += multi_binomial_term(&names, degrees, js).scale(&pb_number(w, k));
    });
    PbPolynomial {
        index: PbIndex {
            degrees: degrees.to_vec(),
            k,
        },
        poly: acc,
    }
}

/// Same polynomial through `S(j_1 + ... + j_n, l)` and the GSN weights.
pub fn pbn_via_stirling(degrees: &[u32], k: i64) -> MPoly {
    let names = var_names(degrees.len());
    let mut acc = MPoly::zero_in(&names);
    for_each_multi_index(degrees, |js| {
        let w: u32 = js.iter().sum();
        let c: Rat = (0..=w).map(|l| stirling2(w, l as i64) * weight(l, k)).sum();
        acc += multi_binomial_term(&names, degrees, js).scale(&c);
    });
    acc
}

/// Double sum re-centring `B_{p1,p2}^(k)` at `(y1, y2)`:
/// `Σ C(p1,j1) C(p2,j2) (x1-y1)^(p1-j1) (x2-y2)^(p2-j2) B_{j1,j2}^(k)(y1,y2)`.
pub fn pb2_addition(p1: u32, p2: u32, k: i64, y1: &MPoly, y2: &MPoly) -> PbPolynomial {
    let d1 = MPoly::var(X1) - y1;
    let d2 = MPoly::var(X2) - y2;
    let mut acc = MPoly::zero_in(&[X1, X2]);
    for j1 in 0..=p1 {
        for j2 in 0..=p2 {
            let inner = pb2_poly(j1, j2, k).subst(&[(X1, y1.clone()), (X2, y2.clone())]);
            let w = binomial_rat(p1, j1 as i64) * binomial_rat(p2, j2 as i64);
            acc += (d1.pow(p1 - j1) * d2.pow(p2 - j2) * inner).scale(&w);
        }
    }
    PbPolynomial {
        index: PbIndex {
            degrees: vec![p1, p2],
            k,
        },
        poly: acc,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MPoly {
        MPoly::var(X)
    }
    fn c(n: i64, d: i64) -> MPoly {
        MPoly::constant(Rat::new(n, d))
    }

    // Defining sum evaluated at a rational point, independent of MPoly.
    fn pb_poly_value(p: u32, k: i64, at: &Rat) -> Rat {
        (0..=p)
            .map(|l| {
                let inner: Rat = (0..=l)
                    .map(|j| Rat::sign_pow(j) * binomial_rat(l, j as i64) * (Rat::from(j) + at).pow(p))
                    .sum();
                inner * inv_pow(l + 1, k)
            })
            .sum()
    }

    #[test]
    fn bernoulli_numbers() {
        assert_eq!(bernoulli_number(0), Rat::one());
        assert_eq!(bernoulli_number(1), Rat::new(-1, 2));
        assert_eq!(bernoulli_number(2), Rat::new(1, 6));
        assert_eq!(bernoulli_number(3), Rat::zero());
        assert_eq!(bernoulli_number(4), Rat::new(-1, 30));
        assert_eq!(bernoulli_number(12), Rat::new(-691, 2730));
    }

    #[test]
    fn bernoulli_polynomials() {
        assert_eq!(bernoulli_poly(0), MPoly::one());
        assert_eq!(bernoulli_poly(1), x() - c(1, 2));
        assert_eq!(bernoulli_poly(2), x().pow(2) - x() + c(1, 6));
        for p in 0..10 {
            assert_eq!(bernoulli_poly(p).eval(&[(X, Rat::zero())]), Some(bernoulli_number(p)));
        }
    }

    #[test]
    fn poly_bernoulli_numbers() {
        for k in -3..5 {
            assert_eq!(pb_number(0, k), Rat::one());
            assert_eq!(pb_number(1, k), -inv_pow(2, k));
        }
        assert_eq!(pb_number(2, 2), Rat::new(-1, 36));
        for p in 0..10 {
            assert_eq!(pb_number(p, 1), bernoulli_number(p));
        }
    }

    #[test]
    fn poly_bernoulli_polynomials() {
        for k in -2..4 {
            assert_eq!(pb_poly(0, k), MPoly::one());
        }
        assert_eq!(pb_poly(2, 1), x().pow(2) - x() + c(1, 6));
        assert_eq!(pb_poly(1, 2), x() - c(1, 4));
        for p in 0..8 {
            for k in -2..4 {
                let a = pb_poly(p, k);
                assert_eq!(a, pb_poly_via_gsn(p, k), "p={p} k={k}");
                assert_eq!(a, pb_poly_at(p, k, &x()));
                assert_eq!(a.eval(&[(X, Rat::zero())]), Some(pb_number(p, k)));
                for at in [Rat::new(-3, 2), Rat::from(2)] {
                    assert_eq!(a.eval(&[(X, at.clone())]), Some(pb_poly_value(p, k, &at)));
                }
            }
            assert_eq!(pb_poly(p, 1), bernoulli_poly(p));
        }
    }

    #[test]
    fn polynomial_arguments() {
        let u = MPoly::var("x1") - MPoly::var("y");
        assert_eq!(pb_poly_at(1, 1, &u), &u - &c(1, 2));
        let v = c(1, 1) - x();
        assert_eq!(pb_poly_at(2, 1, &v), x().pow(2) - x() + c(1, 6));
        for p in 0..6 {
            for k in -1..3 {
                assert_eq!(pb_poly_at(p, k, &v), pb_poly(p, k).subst(&[(X, v.clone())]));
            }
        }
    }

    #[test]
    fn displayed_bivariate_examples() {
        let x1 = MPoly::var(X1);
        let x2 = MPoly::var(X2);
        for k in -2..5 {
            let h2 = inv_pow(2, k);
            let h3 = inv_pow(3, k);
            let h4 = inv_pow(4, k);
            let b11 = MPoly::constant(Rat::from(2) * &h3) - (&x1 + &x2 + c(1, 1)).scale(&h2) + &x1 * &x2;
            assert_eq!(pb2_poly(1, 1, k), b11);
            let b12 = (x1.scale(&Rat::from(2)) + x2.scale(&Rat::from(4)) + c(6, 1)).scale(&h3)
                - (&x1 * &(x2.scale(&Rat::from(2)) + c(1, 1)) + (&x2 + &c(1, 1)).pow(2)).scale(&h2)
                + &x1 * &x2.pow(2)
                - MPoly::constant(Rat::from(6) * h4);
            assert_eq!(pb2_poly(1, 2, k), b12);
        }
    }

    #[test]
    fn routes_agree_small() {
        for p1 in 0..3 {
            for p2 in 0..3 {
                for k in -1..3 {
                    let base = pb2(p1, p2, k, Pb2Route::Definition).poly;
                    for r in [
                        Pb2Route::Explicit,
                        Pb2Route::Numbers,
                        Pb2Route::StirlingM(0),
                        Pb2Route::StirlingM(2),
                        Pb2Route::StirlingN(1),
                        Pb2Route::StirlingN(3),
                    ] {
                        assert_eq!(pb2(p1, p2, k, r).poly, base, "{r:?} p1={p1} p2={p2} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn n_variate_collapses() {
        for k in -1..3 {
            for p in 0..4 {
                assert_eq!(pbn(&[p], k).poly, pb_poly(p, k).subst(&[(X, MPoly::var("x1"))]));
            }
            let diag = pbn(&[1, 1, 1], k).poly.subst(&[("x1", x()), ("x2", x()), ("x3", x())]);
            assert_eq!(diag, pb_poly(3, k));
            let relabeled = pb2_poly(1, 2, k).subst(&[(X2, MPoly::var("x3"))]);
            assert_eq!(pbn(&[1, 0, 2], k).poly, relabeled);
            assert_eq!(pbn(&[2, 1, 1], k).poly, pbn_via_stirling(&[2, 1, 1], k));
        }
    }

    #[test]
    fn addition_centres() {
        let x1 = MPoly::var(X1);
        let x2 = MPoly::var(X2);
        assert_eq!(pb2_addition(2, 1, 1, &x1, &x2).poly, pb2_poly(2, 1, 1));
        assert_eq!(
            pb2_addition(2, 2, 2, &MPoly::zero(), &MPoly::zero()).poly,
            pb2_poly(2, 2, 2)
        );
        assert_eq!(
            pb2_addition(1, 1, 1, &MPoly::one(), &MPoly::one()).poly,
            pb2_poly(1, 1, 1)
        );
    }

    #[test]
    fn evaluation_helper() {
        let b = pb2(1, 1, 1, Pb2Route::Numbers);
        assert_eq!(b.eval(&[Rat::one(), Rat::zero()]), Rat::new(-1, 3));
        assert_eq!(b.eval(&[Rat::zero(), Rat::one()]), Rat::new(-1, 3));
    }
}
