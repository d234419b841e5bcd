//! Transfer of shifted-power identities to poly-Bernoulli identities.
//!
//! If `Σ a_r (x+α)^r = Σ b_r (x+β)^r` holds as polynomials, then so does
//! `Σ a_r B_r^(k)(x+α) = Σ b_r B_r^(k)(x+β)`. Two independent realizations
//! are provided: [`ShiftedSum::bernoullify`] replaces every shifted power
//! factor by the poly-Bernoulli polynomial at the shifted argument, while
//! [`umbral_transfer`] applies the linear map `x^r ↦ B_r^(k)(x)` to the
//! expanded polynomial.

use crate::bernoulli::{pb_poly, pb_poly_at, X};
use crate::poly::MPoly;

use super::IdentityError;

/// `(var + shift)^exp`.
#[derive(Clone, Debug)]
pub struct ShiftedPower {
    pub var: String,
    pub shift: MPoly,
    pub exp: u32,
}

impl ShiftedPower {
    pub fn new(var: &str, shift: MPoly, exp: u32) -> ShiftedPower {
        ShiftedPower {
            var: var.to_string(),
            shift,
            exp,
        }
    }

    fn base(&self) -> MPoly {
        MPoly::var(&self.var) + &self.shift
    }
}

/// `coeff · Π (var_i + shift_i)^exp_i`.
#[derive(Clone, Debug)]
pub struct ShiftedTerm {
    pub coeff: MPoly,
    pub powers: Vec<ShiftedPower>,
}

impl ShiftedTerm {
    pub fn new(coeff: MPoly, powers: Vec<ShiftedPower>) -> ShiftedTerm {
        ShiftedTerm { coeff, powers }
    }
}

/// Per-variable poly-Bernoulli orders used by a transfer.
pub type Orders<'a> = [(&'a str, i64)];

fn order_of(orders: &Orders, var: &str) -> Option<i64> {
    orders.iter().find(|(v, _)| *v == var).map(|&(_, k)| k)
}

/// A finite sum of [`ShiftedTerm`]s.
#[derive(Clone, Debug, Default)]
pub struct ShiftedSum {
    pub terms: Vec<ShiftedTerm>,
}

impl ShiftedSum {
    pub fn new(terms: Vec<ShiftedTerm>) -> ShiftedSum {
        ShiftedSum { terms }
    }

    pub fn push(&mut self, coeff: MPoly, powers: Vec<ShiftedPower>) {
        self.terms.push(ShiftedTerm::new(coeff, powers));
    }

    /// The ordinary polynomial.
    pub fn expand(&self) -> MPoly {
        self.terms
            .iter()
            .map(|t| {
                t.powers
                    .iter()
                    .fold(t.coeff.clone(), |acc, p| acc * p.base().pow(p.exp))
            })
            .sum()
    }

    /// Replaces each factor `(v + α)^r` with `v` listed in `orders` by
    /// `B_r^(k_v)(v + α)`. Factors in other variables are expanded as powers.
    pub fn bernoullify(&self, orders: &Orders) -> Result<MPoly, IdentityError> {
        let mut acc = MPoly::zero();
        for t in &self.terms {
            check_coefficient(&t.coeff, orders)?;
            let mut prod = t.coeff.clone();
            for p in &t.powers {
                match order_of(orders, &p.var) {
                    Some(k) => {
                        check_shift(p, orders)?;
                        prod = prod * pb_poly_at(p.exp, k, &p.base());
                    }
                    None => prod = prod * p.base().pow(p.exp),
                }
            }
            acc += prod;
        }
        Ok(acc)
    }
}

fn check_coefficient(coeff: &MPoly, orders: &Orders) -> Result<(), IdentityError> {
    match coeff.used_vars().into_iter().find(|v| order_of(orders, v).is_some()) {
        Some(v) => Err(IdentityError::TransferVariableInCoefficient(v)),
        None => Ok(()),
    }
}

fn check_shift(p: &ShiftedPower, orders: &Orders) -> Result<(), IdentityError> {
    match p.shift.used_vars().into_iter().find(|v| order_of(orders, v).is_some()) {
        Some(v) => Err(IdentityError::TransferVariableInShift(v)),
        None => Ok(()),
    }
}

/// The linear map sending `Π v^e_v` to `Π B_{e_v}^(k_v)(v)` over the listed
/// variables, leaving every other variable untouched.
pub fn umbral_transfer(p: &MPoly, orders: &Orders) -> MPoly {
    let vars = p.vars().to_vec();
    let slots: Vec<Option<i64>> = vars.iter().map(|v| order_of(orders, v)).collect();
    let mut images: Vec<Vec<MPoly>> = vec![Vec::new(); vars.len()];
    let mut out = MPoly::zero();
    for (m, c) in p.terms() {
        let mut t = MPoly::constant(c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            match slots[i] {
                Some(k) => {
                    while images[i].len() <= e as usize {
                        let r = images[i].len() as u32;
                        images[i].push(pb_poly(r, k).subst(&[(X, MPoly::var(&vars[i]))]));
                    }
                    t = t * &images[i][e as usize];
                }
                None if e > 0 => t = t * MPoly::var(&vars[i]).pow(e),
                None => {}
            }
        }
        out += t;
    }
    out.embed(&vars)
}

/// An identity whose members are shifted-power sums that agree as ordinary
/// polynomials. Construction fails when they do not.
#[derive(Clone, Debug)]
pub struct TransferIdentity {
    members: Vec<ShiftedSum>,
}

/// Outcome of a transfer: the transferred members, and whether they agree.
#[derive(Clone, Debug)]
pub struct TransferWitness {
    pub holds: bool,
    pub members: Vec<MPoly>,
}

impl TransferWitness {
    fn from_members(members: Vec<MPoly>) -> TransferWitness {
        let holds = members.windows(2).all(|w| w[0] == w[1]);
        TransferWitness { holds, members }
    }

    /// The first member and the first member that differs from it.
    pub fn mismatch(&self) -> Option<(&MPoly, &MPoly)> {
        let first = self.members.first()?;
        self.members.iter().find(|m| *m != first).map(|m| (first, m))
    }
}

impl TransferIdentity {
    pub fn new(members: Vec<ShiftedSum>) -> Result<TransferIdentity, IdentityError> {
        let expanded: Vec<MPoly> = members.iter().map(ShiftedSum::expand).collect();
        if let Some(bad) = expanded.iter().find(|m| **m != expanded[0]) {
            return Err(IdentityError::BaseIdentity {
                lhs: expanded[0].render(),
                rhs: bad.render(),
            });
        }
        Ok(TransferIdentity { members })
    }

    pub fn members(&self) -> &[ShiftedSum] {
        &self.members
    }

    /// Transfers every member and compares them.
    pub fn transfer(&self, orders: &Orders) -> Result<TransferWitness, IdentityError> {
        let members = self
            .members
            .iter()
            .map(|m| m.bernoullify(orders))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TransferWitness::from_members(members))
    }

    /// Same transfer through the umbral map on the expanded polynomial.
    pub fn transfer_umbral(&self, orders: &Orders) -> MPoly {
        umbral_transfer(&self.members[0].expand(), orders)
    }
}

/// One-variable identity `Σ a_r (x+α)^r = Σ b_r (x+β)^r` in the variable `x`.
#[derive(Clone, Debug)]
pub struct IdentitySpec {
    n: u32,
    lhs_coeffs: Vec<MPoly>,
    lhs_shift: MPoly,
    rhs_coeffs: Vec<MPoly>,
    rhs_shift: MPoly,
}

fn side(coeffs: &[MPoly], shift: &MPoly) -> ShiftedSum {
    ShiftedSum::new(
        coeffs
            .iter()
            .enumerate()
            .map(|(r, a)| ShiftedTerm::new(a.clone(), vec![ShiftedPower::new(X, shift.clone(), r as u32)]))
            .collect(),
    )
}

impl IdentitySpec {
    /// Both coefficient sequences must have length `n + 1` and the polynomial
    /// identity must hold.
    pub fn new(
        n: u32,
        lhs_coeffs: Vec<MPoly>,
        lhs_shift: MPoly,
        rhs_coeffs: Vec<MPoly>,
        rhs_shift: MPoly,
    ) -> Result<IdentitySpec, IdentityError> {
        let want = n as usize + 1;
        if lhs_coeffs.len() != want || rhs_coeffs.len() != want {
            return Err(IdentityError::Shape {
                expected: want,
                lhs: lhs_coeffs.len(),
                rhs: rhs_coeffs.len(),
            });
        }
        for p in lhs_coeffs.iter().chain(&rhs_coeffs).chain([&lhs_shift, &rhs_shift]) {
            if p.used_vars().iter().any(|v| v == X) {
                return Err(IdentityError::TransferVariableInCoefficient(X.to_string()));
            }
        }
        let spec = IdentitySpec {
            n,
            lhs_coeffs,
            lhs_shift,
            rhs_coeffs,
            rhs_shift,
        };
        let l = side(&spec.lhs_coeffs, &spec.lhs_shift).expand();
        let r = side(&spec.rhs_coeffs, &spec.rhs_shift).expand();
        if l != r {
            return Err(IdentityError::BaseIdentity {
                lhs: l.render(),
                rhs: r.render(),
            });
        }
        Ok(spec)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn lhs(&self) -> ShiftedSum {
        side(&self.lhs_coeffs, &self.lhs_shift)
    }

    pub fn rhs(&self) -> ShiftedSum {
        side(&self.rhs_coeffs, &self.rhs_shift)
    }
}

/// `Σ_r coeffs[r] · B_r^(k)(x + shift)`.
pub fn bernoullify(coeffs: &[MPoly], shift: &MPoly, k: i64) -> MPoly {
    let arg = MPoly::var(X) + shift;
    coeffs
        .iter()
        .enumerate()
        .map(|(r, a)| a * &pb_poly_at(r as u32, k, &arg))
        .sum()
}

/// Transfers both sides of `spec` with order `k` and compares them.
pub fn verify_transfer(spec: &IdentitySpec, k: i64) -> TransferWitness {
    let lhs = bernoullify(&spec.lhs_coeffs, &spec.lhs_shift, k);
    let rhs = bernoullify(&spec.rhs_coeffs, &spec.rhs_shift, k);
    TransferWitness::from_members(vec![lhs, rhs])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::pb_number;
    use crate::combinat::binomial_rat;
    use crate::rat::Rat;

    fn x() -> MPoly {
        MPoly::var(X)
    }
    fn y() -> MPoly {
        MPoly::var("y")
    }

    // x^p = Σ_j C(p,j) (x-y)^j y^(p-j)
    fn addition_spec(p: u32) -> IdentitySpec {
        let mut lhs = vec![MPoly::zero(); p as usize + 1];
        lhs[p as usize] = MPoly::one();
        let rhs = (0..=p)
            .map(|r| y().pow(p - r).scale(&binomial_rat(p, r as i64)))
            .collect();
        IdentitySpec::new(p, lhs, MPoly::zero(), rhs, -y()).unwrap()
    }

    #[test]
    fn addition_formula_transfers() {
        for k in -1..4 {
            let w = verify_transfer(&addition_spec(3), k);
            assert!(w.holds);
            assert_eq!(w.members[0], pb_poly(3, k));
        }
    }

    #[test]
    fn constant_identity() {
        let s = IdentitySpec::new(0, vec![MPoly::one()], MPoly::zero(), vec![MPoly::one()], y()).unwrap();
        let w = verify_transfer(&s, 5);
        assert!(w.holds);
        assert_eq!(w.members[0], MPoly::one());
    }

    #[test]
    fn malformed_specs_rejected() {
        let bad = IdentitySpec::new(
            1,
            vec![MPoly::zero(), MPoly::one()],
            MPoly::zero(),
            vec![MPoly::zero(), MPoly::one()],
            MPoly::one(),
        );
        assert!(matches!(bad, Err(IdentityError::BaseIdentity { .. })));
        let short = IdentitySpec::new(2, vec![MPoly::one()], MPoly::zero(), vec![MPoly::one()], MPoly::zero());
        assert!(matches!(short, Err(IdentityError::Shape { .. })));
    }

    #[test]
    fn retransfer_with_second_order() {
        // Σ C(p,j) x^(p-j) B_j^(k) = Σ C(p,j) (x-y)^(p-j) B_j^(k)(y), then transfer in x with k1
        let (p, k, k1) = (3u32, 2i64, -1i64);
        let mut lhs = ShiftedSum::default();
        let mut rhs = ShiftedSum::default();
        for j in 0..=p {
            let c = binomial_rat(p, j as i64);
            lhs.push(
                MPoly::constant(&c * &pb_number(j, k)),
                vec![ShiftedPower::new(X, MPoly::zero(), p - j)],
            );
            rhs.push(
                pb_poly_at(j, k, &y()).scale(&c),
                vec![ShiftedPower::new(X, -y(), p - j)],
            );
        }
        let id = TransferIdentity::new(vec![lhs, rhs]).unwrap();
        let w = id.transfer(&[(X, k1)]).unwrap();
        assert!(w.holds, "{:?}", w.mismatch());
        assert_eq!(w.members[0], id.transfer_umbral(&[(X, k1)]));
    }

    #[test]
    fn umbral_map_commutes_with_translation() {
        let shift = y() + MPoly::constant(Rat::new(1, 3));
        for r in 0..6 {
            for k in -1..3 {
                let base = (x() + &shift).pow(r);
                assert_eq!(umbral_transfer(&base, &[(X, k)]), pb_poly_at(r, k, &(x() + &shift)));
            }
        }
    }

    #[test]
    fn shifts_may_not_mention_transfer_variables() {
        let mut s = ShiftedSum::default();
        s.push(MPoly::one(), vec![ShiftedPower::new("x1", MPoly::var("x2"), 2)]);
        assert!(matches!(
            s.bernoullify(&[("x1", 1), ("x2", 1)]),
            Err(IdentityError::TransferVariableInShift(_))
        ));
        assert!(s.bernoullify(&[("x1", 1)]).is_ok());
    }
}
