use crate::combinat::{binomial_rat, factorial_rat};
use crate::poly::MPoly;
use crate::rat::Rat;

use super::{stirling1_unsigned, stirling2};

pub(crate) const X1: &str = "x1";
pub(crate) const X2: &str = "x2";

/// The additive parameter `b` of an affine factor `a*n + b`: either an exact
/// rational or one of the named symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Offset {
    Value(Rat),
    Symbol(String),
}

impl Offset {
    pub fn to_poly(&self) -> MPoly {
        match self {
            Offset::Value(r) => MPoly::constant(r.clone()),
            Offset::Symbol(s) => MPoly::var(s),
        }
    }

    fn symbol(&self) -> Option<&str> {
        match self {
            Offset::Symbol(s) => Some(s),
            Offset::Value(_) => None,
        }
    }
}

impl From<Rat> for Offset {
    fn from(r: Rat) -> Offset {
        Offset::Value(r)
    }
}

impl From<i64> for Offset {
    fn from(n: i64) -> Offset {
        Offset::Value(Rat::from(n))
    }
}

/// Parameters `(a1, b1, p1, a2, b2, p2)` of a GSN family. Both slopes are
/// nonzero by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GsnParams {
    a1: Rat,
    b1: Offset,
    p1: u32,
    a2: Rat,
    b2: Offset,
    p2: u32,
}

impl GsnParams {
    /// Returns `None` when either slope is zero.
    pub fn new(a1: Rat, b1: impl Into<Offset>, p1: u32, a2: Rat, b2: impl Into<Offset>, p2: u32) -> Option<GsnParams> {
        if a1.is_zero() || a2.is_zero() {
            return None;
        }
        Some(GsnParams {
            a1,
            b1: b1.into(),
            p1,
            a2,
            b2: b2.into(),
            p2,
        })
    }

    /// The family `S_{1,x1}^{1,x2,p2}(p1, ·)`.
    pub fn symbolic(p1: u32, p2: u32) -> GsnParams {
        GsnParams {
            a1: Rat::one(),
            b1: Offset::Symbol(X1.into()),
            p1,
            a2: Rat::one(),
            b2: Offset::Symbol(X2.into()),
            p2,
        }
    }

    /// `S_{1,b1}^{1,b2,p2}(p1, ·)` with rational offsets.
    pub fn unit_slopes(b1: Rat, p1: u32, b2: Rat, p2: u32) -> GsnParams {
        GsnParams {
            a1: Rat::one(),
            b1: Offset::Value(b1),
            p1,
            a2: Rat::one(),
            b2: Offset::Value(b2),
            p2,
        }
    }

    pub fn p1(&self) -> u32 {
        self.p1
    }

    pub fn p2(&self) -> u32 {
        self.p2
    }

    fn symbols(&self) -> Vec<&str> {
        [self.b1.symbol(), self.b2.symbol()].into_iter().flatten().collect()
    }
}

/// `(1/k!) Σ_j (-1)^j C(k,j) (a1(k-j)+b1)^p1 (a2(k-j)+b2)^p2`, zero when
/// `k < 0` or `k > p1 + p2`.
pub fn gsn_explicit(params: &GsnParams, k: i64) -> MPoly {
    let symbols = params.symbols();
    if k < 0 || k > (params.p1 + params.p2) as i64 {
        return MPoly::zero_in(&symbols);
    }
    let k = k as u32;
    let b1 = params.b1.to_poly();
    let b2 = params.b2.to_poly();
    let mut acc = MPoly::zero_in(&symbols);
    for j in 0..=k {
        let n = Rat::from(k - j);
        let f1 = (MPoly::constant(&params.a1 * &n) + &b1).pow(params.p1);
        let f2 = (MPoly::constant(&params.a2 * &n) + &b2).pow(params.p2);
        acc += (f1 * f2).scale(&(Rat::sign_pow(j) * binomial_rat(k, j as i64)));
    }
    acc.scale(&factorial_rat(k).recip().unwrap())
}

/// `S_{1,x1}^{1,x2,p2}(p1, k)` as a polynomial in `x1, x2`.
pub fn gsn_symbolic(p1: u32, p2: u32, k: i64) -> MPoly {
    gsn_explicit(&GsnParams::symbolic(p1, p2), k).embed(&[X1, X2])
}

/// The symbolic family computed by recursion on `p1`:
/// `S(p1,k) = S(p1-1,k-1) + (k+x1) S(p1-1,k)`, seeded at `p1 = 0` by the
/// explicit sum.
pub fn gsn_recurrence(p1: u32, p2: u32, k: i64) -> MPoly {
    let top = (p1 + p2) as i64;
    if k < 0 || k > top {
        return MPoly::zero_in(&[X1, X2]);
    }
    let mut row: Vec<MPoly> = (0..=p2 as i64).map(|j| gsn_symbolic(0, p2, j)).collect();
    let x1 = MPoly::var(X1);
    for i in 1..=p1 {
        let len = (i + p2) as usize + 1;
        let next: Vec<MPoly> = (0..len)
            .map(|j| {
                let mut v = MPoly::zero_in(&[X1, X2]);
                if j > 0 {
                    if let Some(prev) = row.get(j - 1) {
                        v += prev;
                    }
                }
                if let Some(same) = row.get(j) {
                    v += (&x1 + &MPoly::from(j as i64)) * same;
                }
                v
            })
            .collect();
        row = next;
    }
    row.swap_remove(k as usize)
}

/// `Σ_{j1,j2} C(p1,j1) C(p2,j2) (x1-c)^(p1-j1) (x2-c)^(p2-j2) · kernel(j1, j2)`,
/// the shape shared by every change-of-centre formula.
pub(crate) fn centred_double_sum(
    p1: u32,
    p2: u32,
    c1: &MPoly,
    c2: &MPoly,
    mut kernel: impl FnMut(u32, u32) -> MPoly,
) -> MPoly {
    let d1 = MPoly::var(X1) - c1;
    let d2 = MPoly::var(X2) - c2;
    let pow1: Vec<MPoly> = (0..=p1).map(|e| d1.pow(e)).collect();
    let pow2: Vec<MPoly> = (0..=p2).map(|e| d2.pow(e)).collect();
    let mut acc = MPoly::zero_in(&[X1, X2]);
    for j1 in 0..=p1 {
        for j2 in 0..=p2 {
            let w = binomial_rat(p1, j1 as i64) * binomial_rat(p2, j2 as i64);
            let k = kernel(j1, j2);
            if k.is_zero() {
                continue;
            }
            acc += (&pow1[(p1 - j1) as usize] * &pow2[(p2 - j2) as usize] * k).scale(&w);
        }
    }
    acc
}

/// The symbolic family re-expanded around rational centres `(y1, y2)`.
pub fn gsn_change_basis(p1: u32, p2: u32, k: i64, y1: &Rat, y2: &Rat) -> MPoly {
    let c1 = MPoly::constant(y1.clone());
    let c2 = MPoly::constant(y2.clone());
    centred_double_sum(p1, p2, &c1, &c2, |j1, j2| {
        gsn_explicit(&GsnParams::unit_slopes(y1.clone(), j1, y2.clone(), j2), k)
    })
}

/// The symbolic family through standard Stirling numbers, centred at an
/// arbitrary non-negative integer `m`.
pub fn gsn_via_stirling_m(p1: u32, p2: u32, k: i64, m: u32) -> MPoly {
    if k < 0 {
        return MPoly::zero_in(&[X1, X2]);
    }
    let k = k as u32;
    let c = MPoly::from(m as i64);
    let sum = centred_double_sum(p1, p2, &c, &c, |j1, j2| {
        let s: Rat = (0..=m)
            .map(|i| binomial_rat(m, i as i64) * factorial_rat(k + i) * stirling2(j1 + j2, (k + i) as i64))
            .sum();
        MPoly::constant(s)
    });
    sum.scale(&factorial_rat(k).recip().unwrap())
}

/// The symbolic family through Stirling numbers of both kinds, centred at a
/// positive integer `n`.
pub fn gsn_via_stirling_n(p1: u32, p2: u32, k: i64, n: u32) -> MPoly {
    assert!(n >= 1, "the first-kind route needs n >= 1");
    if k < 0 {
        return MPoly::zero_in(&[X1, X2]);
    }
    let c = MPoly::from(n as i64);
    centred_double_sum(p1, p2, &c, &c, |j1, j2| {
        let s: Rat = (0..n)
            .map(|i| {
                Rat::sign_pow(i) * stirling1_unsigned(n, (n - i) as i64) * stirling2(j1 + j2 + n - i, k + n as i64)
            })
            .sum();
        MPoly::constant(s)
    })
}

/// `Σ_l S_{1,x1}^{1,x2,p2}(p1,l) (-1)^l (l+r)!`.
pub fn gsn_factorial_sum(p1: u32, p2: u32, r: u32) -> MPoly {
    (0..=(p1 + p2))
        .map(|l| gsn_symbolic(p1, p2, l as i64).scale(&(Rat::sign_pow(l) * factorial_rat(l + r))))
        .sum::<MPoly>()
        .embed(&[X1, X2])
}
