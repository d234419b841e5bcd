//! Exact rational scalars.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// An exact rational number, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRatError {
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl Rat {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rat {
        let den = den.into();
        assert!(!den.is_zero(), "rational with zero denominator");
        Rat(BigRational::new(num.into(), den))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Rat {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Rat> {
        if self.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    /// Integer power; negative exponents invert first. `None` when a negative
    /// power of zero is requested.
    pub fn checked_pow(&self, e: i64) -> Option<Rat> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            self.recip().map(|r| r.pow(e.unsigned_abs() as u32))
        }
    }

    pub fn pow(&self, e: u32) -> Rat {
        Rat(num_traits::pow(self.0.clone(), e as usize))
    }

    /// `(-1)^e` as a rational.
    pub fn sign_pow(e: impl Into<i64>) -> Rat {
        if e.into().rem_euclid(2) == 0 {
            Rat::one()
        } else {
            -Rat::one()
        }
    }

    /// Returns the value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Rat {
        Rat(r)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Rat {
        Rat::from_int(n)
    }
}

macro_rules! rat_from_prim {
    ($($t:ty),*) => {
        $(impl From<$t> for Rat {
            fn from(n: $t) -> Rat {
                Rat::from_int(n)
            }
        })*
    };
}
rat_from_prim!(i32, i64, u32, u64, usize);

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `a/b` and plain integers, with an optional leading sign.
    fn from_str(s: &str) -> Result<Rat, ParseRatError> {
        let t = s.trim();
        let bad = || ParseRatError::Invalid(s.to_string());
        let parse_int = |x: &str| -> Result<BigInt, ParseRatError> {
            let x = x.trim();
            let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            x.parse::<BigInt>().map_err(|_| bad())
        };
        match t.split_once('/') {
            None => Ok(Rat::from_int(parse_int(t)?)),
            Some((n, d)) => {
                let n = parse_int(n)?;
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(ParseRatError::ZeroDenominator(s.to_string()));
                }
                Ok(Rat::new(n, d))
            }
        }
    }
}

impl fmt::Display for Rat {
    /// `num/den`, or just `num` when the denominator is one.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}
rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl Product for Rat {
    fn product<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |acc, x| acc * x)
    }
}
