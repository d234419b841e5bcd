//! Stirling numbers of both kinds and the generalized Stirling numbers
//! `S_{a1,b1}^{a2,b2,p2}(p1, k)`.
//!
//! The standard triangles are memoized behind a lock. Rows are appended only
//! when complete, so readers never see a partially built row.

mod gsn;

pub use gsn::{
    gsn_change_basis, gsn_explicit, gsn_factorial_sum, gsn_recurrence, gsn_symbolic, gsn_via_stirling_m,
    gsn_via_stirling_n, GsnParams, Offset,
};
pub(crate) use gsn::{X1, X2};

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rat::Rat;

struct Triangle {
    rows: RwLock<Vec<Vec<BigInt>>>,
    next_row: fn(n: usize, prev: &[BigInt]) -> Vec<BigInt>,
}

impl Triangle {
    fn new(next_row: fn(usize, &[BigInt]) -> Vec<BigInt>) -> Triangle {
        Triangle {
            rows: RwLock::new(vec![vec![BigInt::one()]]),
            next_row,
        }
    }

    fn get(&self, n: u32, k: i64) -> BigInt {
        if k < 0 || k > n as i64 {
            return BigInt::zero();
        }
        let (n, k) = (n as usize, k as usize);
        {
            let rows = self.rows.read().unwrap();
            if let Some(row) = rows.get(n) {
                return row[k].clone();
            }
        }
        let mut rows = self.rows.write().unwrap();
        while rows.len() <= n {
            let m = rows.len();
            let row = (self.next_row)(m, &rows[m - 1]);
            rows.push(row);
        }
        rows[n][k].clone()
    }
}

fn second_kind_row(n: usize, prev: &[BigInt]) -> Vec<BigInt> {
    // S(n,k) = k S(n-1,k) + S(n-1,k-1)
    (0..=n)
        .map(|k| {
            let keep = prev.get(k).map(|s| s * k).unwrap_or_default();
            let grow = if k > 0 { prev[k - 1].clone() } else { BigInt::zero() };
            keep + grow
        })
        .collect()
}

fn first_kind_row(n: usize, prev: &[BigInt]) -> Vec<BigInt> {
    // s(n,k) = s(n-1,k-1) + (n-1) s(n-1,k)
    (0..=n)
        .map(|k| {
            let keep = prev.get(k).map(|s| s * (n - 1)).unwrap_or_default();
            let grow = if k > 0 { prev[k - 1].clone() } else { BigInt::zero() };
            keep + grow
        })
        .collect()
}

fn second_kind() -> &'static Triangle {
    static T: OnceLock<Triangle> = OnceLock::new();
    T.get_or_init(|| Triangle::new(second_kind_row))
}

fn first_kind() -> &'static Triangle {
    static T: OnceLock<Triangle> = OnceLock::new();
    T.get_or_init(|| Triangle::new(first_kind_row))
}

/// Stirling number of the second kind `S(p, k)`; zero outside `0 <= k <= p`.
pub fn stirling2(p: u32, k: i64) -> Rat {
    Rat::from_int(second_kind().get(p, k))
}

/// Unsigned Stirling number of the first kind `s(n, k)`.
pub fn stirling1_unsigned(n: u32, k: i64) -> Rat {
    Rat::from_int(first_kind().get(n, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{binomial_rat, factorial_rat};
    use crate::poly::rising_product;

    // S(p,k) = (1/k!) Σ_j (-1)^j C(k,j) (k-j)^p
    fn stirling2_alternating_sum(p: u32, k: u32) -> Rat {
        let s: Rat = (0..=k)
            .map(|j| Rat::sign_pow(j) * binomial_rat(k, j as i64) * Rat::from(k - j).pow(p))
            .sum();
        s / factorial_rat(k)
    }

    #[test]
    fn second_kind_values() {
        assert_eq!(stirling2(0, 0), Rat::one());
        assert_eq!(stirling2(4, 2), Rat::from(7));
        assert_eq!(stirling2(3, 5), Rat::zero());
        assert_eq!(stirling2(3, -1), Rat::zero());
        assert_eq!(stirling2(5, 0), Rat::zero());
    }

    #[test]
    fn second_kind_matches_alternating_sum() {
        for p in 0..16 {
            for k in 0..=p {
                assert_eq!(stirling2(p, k as i64), stirling2_alternating_sum(p, k), "S({p},{k})");
            }
        }
    }

    #[test]
    fn first_kind_values() {
        assert_eq!(stirling1_unsigned(3, 3), Rat::one());
        assert_eq!(stirling1_unsigned(4, 2), Rat::from(11));
        assert_eq!(stirling1_unsigned(2, 0), Rat::zero());
        assert_eq!(stirling1_unsigned(0, 0), Rat::one());
        assert_eq!(stirling1_unsigned(4, 5), Rat::zero());
    }

    #[test]
    fn first_kind_matches_rising_product() {
        for q in 0..12u32 {
            let p = rising_product(q, "x");
            for l in 0..=q {
                assert_eq!(p.coeff(&[("x", l)]), stirling1_unsigned(q, l as i64), "s({q},{l})");
            }
        }
    }

    #[test]
    fn concurrent_readers_agree() {
        let handles: Vec<_> = (0..8)
            .map(|t| std::thread::spawn(move || (0..40u32).map(|p| stirling2(p + t, 3)).collect::<Vec<_>>()))
            .collect();
        for (t, h) in handles.into_iter().enumerate() {
            let got = h.join().unwrap();
            for (p, v) in got.into_iter().enumerate() {
                assert_eq!(v, stirling2_alternating_sum(p as u32 + t as u32, 3));
            }
        }
    }
}
