//! Integer combinatorics shared by every sum in the crate.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rat::Rat;

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u32, k: i64) -> BigInt {
    if k < 0 || k > n as i64 {
        return BigInt::zero();
    }
    let k = (k as u32).min(n - k as u32);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn binomial_rat(n: u32, k: i64) -> Rat {
    Rat::from_int(binomial(n, k))
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn factorial_rat(n: u32) -> Rat {
    Rat::from_int(factorial(n))
}
