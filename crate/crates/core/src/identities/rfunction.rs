//! The rational family `R_{mu,k}(y)` with `R_{-1,k} = -1` and
//! `R_{mu,k}(y) = y (y+mu+2)^k R_{mu-1,k}(y) - (y+1)^(k+1) R_{mu-1,k}(y+1)`.

use crate::rat::Rat;

use super::IdentityError;

/// One evaluation of the R-function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RFunctionEval {
    pub mu: i64,
    pub k: i64,
    pub y: Rat,
    pub value: Rat,
}

/// Evaluates `R_{mu,k}(y)` exactly.
///
/// The recursion unrolls into a row of values `R_{m,k}(y + i)` for
/// `i = 0..=mu-m`, which is built from `m = -1` upward.
///
/// # Panics
///
/// Panics if `mu < -1`.
pub fn r_function(mu: i64, k: i64, y: &Rat) -> Result<RFunctionEval, IdentityError> {
    assert!(mu >= -1, "R-function index must be at least -1");
    let pole = || IdentityError::Pole { mu, k, y: y.clone() };
    let width = (mu + 1) as usize;
    let mut row: Vec<Rat> = vec![-Rat::one(); width + 1];
    for m in 0..=mu {
        let len = (mu - m) as usize + 1;
        let mut next = Vec::with_capacity(len);
        for i in 0..len {
            let t = y + Rat::from(i as i64);
            let a = (&t + Rat::from(m + 2)).checked_pow(k).ok_or_else(pole)?;
            let b = (&t + Rat::one()).checked_pow(k + 1).ok_or_else(pole)?;
            next.push(&t * a * &row[i] - b * &row[i + 1]);
        }
        row = next;
    }
    Ok(RFunctionEval {
        mu,
        k,
        y: y.clone(),
        value: row.swap_remove(0),
    })
}
