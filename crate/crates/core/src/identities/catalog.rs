//! The registry of named identities and the grid runner.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::bernoulli::{
    bernoulli_poly, for_each_multi_index, pb2, pb2_addition, pb2_poly, pb_number, pb_poly, pb_poly_at, pb_poly_via_gsn,
    pbn, pbn_via_stirling, var_names, weight, Pb2Route, X,
};
use crate::combinat::{binomial_rat, factorial_rat};
use crate::poly::MPoly;
use crate::rat::Rat;
use crate::stirling::{
    gsn_change_basis, gsn_explicit, gsn_factorial_sum, gsn_recurrence, gsn_symbolic, gsn_via_stirling_m,
    gsn_via_stirling_n, stirling1_unsigned, stirling2, GsnParams, X1, X2,
};

use super::recurrences::{binomial_shift_groups, carlitz_members, recurrence_kernel};
use super::{
    gen_recurrence_a, gen_recurrence_b, r_function, verify_transfer, CheckRecord, IdentityError, IdentitySpec,
    ShiftedPower, ShiftedSum, SuiteReport, TransferIdentity,
};

const Y: &str = "y";
const Z: &str = "z";

/// Groups of catalog entries that can be run on their own.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Gsn,
    Pb,
    Transfer,
    Recurrences,
    Nvar,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["gsn", "pb", "transfer", "recurrences", "nvar", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gsn => "gsn",
            Suite::Pb => "pb",
            Suite::Transfer => "transfer",
            Suite::Recurrences => "recurrences",
            Suite::Nvar => "nvar",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        Ok(match s {
            "gsn" => Suite::Gsn,
            "pb" => Suite::Pb,
            "transfer" => Suite::Transfer,
            "recurrences" => Suite::Recurrences,
            "nvar" => Suite::Nvar,
            "all" => Suite::All,
            _ => {
                return Err(format!(
                    "unknown suite `{s}`; expected one of {}",
                    Suite::NAMES.join(", ")
                ))
            }
        })
    }
}

/// The parameter grid. Every entry runs over all degrees up to `max_p`
/// (no entry runs when it is `None`); entries with several order slots take
/// the Cartesian product of `k_set`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogConfig {
    pub max_p: Option<u32>,
    pub q_range: Vec<u32>,
    pub k_set: Vec<i64>,
    pub m_set: Vec<u32>,
    pub n_set: Vec<u32>,
    pub r_set: Vec<u32>,
    pub rational_samples: Vec<Rat>,
}

impl Default for CatalogConfig {
    fn default() -> CatalogConfig {
        CatalogConfig {
            max_p: Some(3),
            q_range: (0..=3).collect(),
            k_set: vec![-1, 0, 1, 2],
            m_set: vec![0, 1, 2],
            n_set: vec![1, 2, 3],
            r_set: vec![0, 1, 2, 3],
            rational_samples: vec![Rat::zero(), Rat::one(), Rat::new(-1, 2), Rat::from(2)],
        }
    }
}

impl CatalogConfig {
    /// The grid with nothing in it.
    pub fn empty() -> CatalogConfig {
        CatalogConfig {
            max_p: None,
            q_range: Vec::new(),
            k_set: Vec::new(),
            m_set: Vec::new(),
            n_set: Vec::new(),
            r_set: Vec::new(),
            rational_samples: Vec::new(),
        }
    }
}

/// Runs every registered identity of every suite.
pub fn run_catalog(config: &CatalogConfig) -> SuiteReport {
    run_suite(Suite::All, config)
}

/// Runs the entries of one suite over the configured grid.
pub fn run_suite(suite: Suite, config: &CatalogConfig) -> SuiteReport {
    let mut r = Runner::new(config);
    if r.cfg.max_p.is_none() {
        return r.report;
    }
    let all = suite == Suite::All;
    if all || suite == Suite::Gsn {
        gsn_entries(&mut r);
    }
    if all || suite == Suite::Pb {
        pb_entries(&mut r);
    }
    if all || suite == Suite::Transfer {
        transfer_entries(&mut r);
    }
    if all || suite == Suite::Recurrences {
        recurrence_entries(&mut r);
    }
    if all || suite == Suite::Nvar {
        nvar_entries(&mut r);
    }
    r.report
}

/// `Σ C(p1,j1) C(p2,j2) (-1)^(j1+j2) B_{p1-j1} B_{p2-j2} B_{j1+j2}` over
/// classical Bernoulli numbers; zero whenever `p1 + p2` is odd.
pub fn odd_weight_sum(p1: u32, p2: u32) -> Rat {
    let b = |j: u32| pb_number(j, 1);
    let mut acc = Rat::zero();
    for j1 in 0..=p1 {
        for j2 in 0..=p2 {
            acc += binom2(p1, j1, p2, j2) * Rat::sign_pow(j1 + j2) * b(p1 - j1) * b(p2 - j2) * b(j1 + j2);
        }
    }
    acc
}

macro_rules! params {
    ($($name:ident),* $(,)?) => {
        vec![$((stringify!($name), $name.to_string())),*]
    };
}

type Params = Vec<(&'static str, String)>;

struct Runner<'c> {
    cfg: &'c CatalogConfig,
    report: SuiteReport,
    pbn_memo: HashMap<(Vec<u32>, i64), MPoly>,
}

impl<'c> Runner<'c> {
    fn new(cfg: &'c CatalogConfig) -> Runner<'c> {
        Runner {
            cfg,
            report: SuiteReport::default(),
            pbn_memo: HashMap::new(),
        }
    }

    fn max_p(&self) -> u32 {
        self.cfg.max_p.unwrap_or(0)
    }

    fn pairs(&self) -> Vec<(u32, u32)> {
        let m = self.max_p();
        (0..=m).flat_map(|a| (0..=m).map(move |b| (a, b))).collect()
    }

    fn ks(&self) -> Vec<i64> {
        self.cfg.k_set.clone()
    }

    fn k_pairs(&self) -> Vec<(i64, i64)> {
        let ks = &self.cfg.k_set;
        ks.iter().flat_map(|&a| ks.iter().map(move |&b| (a, b))).collect()
    }

    /// Consecutive pairs of rational samples, wrapping around.
    fn sample_pairs(&self) -> Vec<(Rat, Rat)> {
        let s = &self.cfg.rational_samples;
        (0..s.len())
            .map(|i| (s[i].clone(), s[(i + 1) % s.len()].clone()))
            .collect()
    }

    fn pbn(&mut self, degrees: &[u32], k: i64) -> MPoly {
        self.pbn_memo
            .entry((degrees.to_vec(), k))
            .or_insert_with(|| pbn(degrees, k).poly)
            .clone()
    }

    fn record(&mut self, name: &str, params: Params, members: &[MPoly]) {
        let mismatch = members.iter().find(|m| **m != members[0]);
        self.report.push(CheckRecord {
            name: name.to_string(),
            params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            passed: mismatch.is_none(),
            lhs: mismatch.map(|_| members[0].render()),
            rhs: mismatch.map(MPoly::render),
        });
    }

    fn record_rats(&mut self, name: &str, params: Params, members: &[Rat]) {
        let polys: Vec<MPoly> = members.iter().cloned().map(MPoly::constant).collect();
        self.record(name, params, &polys);
    }

    fn record_result(&mut self, name: &str, params: Params, members: Result<Vec<MPoly>, IdentityError>) {
        match members {
            Ok(m) => self.record(name, params, &m),
            Err(e) => {
                let (lhs, rhs) = match e {
                    IdentityError::Disagreement { left, right, .. } => (left, right),
                    IdentityError::BaseIdentity { lhs, rhs } => (lhs, rhs),
                    other => (other.to_string(), String::new()),
                };
                self.report.push(CheckRecord {
                    name: name.to_string(),
                    params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
                    passed: false,
                    lhs: Some(lhs),
                    rhs: Some(rhs),
                });
            }
        }
    }
}

fn binom2(p1: u32, j1: u32, p2: u32, j2: u32) -> Rat {
    binomial_rat(p1, j1 as i64) * binomial_rat(p2, j2 as i64)
}

fn x1() -> MPoly {
    MPoly::var(X1)
}
fn x2() -> MPoly {
    MPoly::var(X2)
}
fn xv() -> MPoly {
    MPoly::var(X)
}
fn int(n: i64) -> MPoly {
    MPoly::from(n)
}
fn rat(r: &Rat) -> MPoly {
    MPoly::constant(r.clone())
}

/// `Σ_{j1,j2} C(p1,j1) C(p2,j2) (x1+s1)^(p1-j1) (x2+s2)^(p2-j2) · f(j1,j2)`.
fn centred(p1: u32, p2: u32, s1: &MPoly, s2: &MPoly, mut f: impl FnMut(u32, u32) -> MPoly) -> MPoly {
    let a: Vec<MPoly> = (0..=p1).map(|e| (x1() + s1).pow(e)).collect();
    let b: Vec<MPoly> = (0..=p2).map(|e| (x2() + s2).pow(e)).collect();
    let mut acc = MPoly::zero_in(&[X1, X2]);
    for j1 in 0..=p1 {
        for j2 in 0..=p2 {
            acc += (&a[(p1 - j1) as usize] * &b[(p2 - j2) as usize] * f(j1, j2)).scale(&binom2(p1, j1, p2, j2));
        }
    }
    acc
}

/// The same double sum with the factors kept as shifted powers.
fn centred_sum(p1: u32, p2: u32, s1: &MPoly, s2: &MPoly, mut f: impl FnMut(u32, u32) -> MPoly) -> ShiftedSum {
    let mut sum = ShiftedSum::default();
    for j1 in 0..=p1 {
        for j2 in 0..=p2 {
            let c = f(j1, j2).scale(&binom2(p1, j1, p2, j2));
            if c.is_zero() {
                continue;
            }
            sum.push(
                c,
                vec![
                    ShiftedPower::new(X1, s1.clone(), p1 - j1),
                    ShiftedPower::new(X2, s2.clone(), p2 - j2),
                ],
            );
        }
    }
    sum
}

/// Bernoullified members of a transfer identity followed by the umbral image
/// of the common base polynomial.
fn transferred(base: Vec<ShiftedSum>, orders: &[(&str, i64)]) -> Result<Vec<MPoly>, IdentityError> {
    let id = TransferIdentity::new(base)?;
    let mut members = id.transfer(orders)?.members;
    members.push(id.transfer_umbral(orders));
    Ok(members)
}

fn subst_all(members: &[MPoly], bindings: &[(&str, MPoly)]) -> Vec<MPoly> {
    members.iter().map(|m| m.subst(bindings)).collect()
}

// ---------------------------------------------------------------------------
// Generalized Stirling numbers

fn gsn_entries(r: &mut Runner) {
    let max_p = r.max_p();
    for (p1, p2) in r.pairs() {
        let top = p1 + p2;
        let table: Vec<MPoly> = (0..=top).map(|l| gsn_symbolic(p1, p2, l as i64)).collect();

        for m in 0..=top + 2 {
            let lhs = (x1() + int(m as i64)).pow(p1) * (x2() + int(m as i64)).pow(p2);
            let rhs: MPoly = (0..=top)
                .map(|l| table[l as usize].scale(&(factorial_rat(l) * binomial_rat(m, l as i64))))
                .sum();
            r.record("gsn-defining-expansion", params!(p1, p2, m), &[lhs, rhs]);
        }

        let x1p = x1().pow(p1) * x2().pow(p2);
        r.record("gsn-value-at-zero", params!(p1, p2), &[table[0].clone(), x1p.clone()]);
        let at_one = (x1() + int(1)).pow(p1) * (x2() + int(1)).pow(p2) - &x1p;
        r.record("gsn-value-at-one", params!(p1, p2), &[gsn_symbolic(p1, p2, 1), at_one]);
        r.record(
            "gsn-top-value",
            params!(p1, p2),
            &[table[top as usize].clone(), MPoly::one()],
        );

        let samples = r.sample_pairs();
        for l in -1..=top as i64 + 1 {
            let mut members = vec![gsn_symbolic(p1, p2, l), gsn_recurrence(p1, p2, l)];
            members.extend(r.cfg.m_set.iter().map(|&m| gsn_via_stirling_m(p1, p2, l, m)));
            members.extend(
                r.cfg
                    .n_set
                    .iter()
                    .filter(|&&n| n >= 1)
                    .map(|&n| gsn_via_stirling_n(p1, p2, l, n)),
            );
            members.extend(samples.iter().map(|(a, b)| gsn_change_basis(p1, p2, l, a, b)));
            r.record("gsn-route-equivalence", params!(p1, p2, l), &members);
        }

        let shift = [(X1, x1() + int(1)), (X2, x2() + int(1))];
        for l in 0..=top {
            let lhs = table[l as usize].subst(&shift);
            let rhs = &table[l as usize] + &gsn_symbolic(p1, p2, l as i64 + 1).scale(&Rat::from(l + 1));
            r.record("gsn-unit-shift", params!(p1, p2, l), &[lhs, rhs]);
        }

        for &rr in &r.cfg.r_set.clone() {
            let c = int(rr as i64 + 1);
            let closed = ((x1() - &c).pow(p1) * (x2() - &c).pow(p2)).scale(&factorial_rat(rr));
            let r_ = rr;
            r.record(
                "gsn-factorial-sum",
                params!(p1, p2, r_),
                &[gsn_factorial_sum(p1, p2, rr), closed],
            );
        }

        for a in r.cfg.rational_samples.clone().into_iter().filter(|a| !a.is_zero()) {
            for b in r.cfg.rational_samples.clone() {
                for l in 0..=top as i64 {
                    let both = GsnParams::new(a.clone(), b.clone(), p1, a.clone(), b.clone(), p2).unwrap();
                    let single = GsnParams::new(a.clone(), b.clone(), top, Rat::one(), 0, 0).unwrap();
                    r.record(
                        "gsn-equal-parameter-collapse",
                        params!(p1, p2, a, b, l),
                        &[gsn_explicit(&both, l), gsn_explicit(&single, l)],
                    );
                }
            }
        }
    }

    for p in 0..=2 * max_p + 2 {
        for k in 0..=p as i64 {
            let one = GsnParams::new(Rat::one(), 1, p, Rat::one(), 0, 0).unwrap();
            let two = GsnParams::new(Rat::one(), 2, p, Rat::one(), 0, 0).unwrap();
            r.record(
                "gsn-unit-offset-reduction",
                params!(p, k),
                &[gsn_explicit(&one, k), MPoly::constant(stirling2(p + 1, k + 1))],
            );
            r.record(
                "gsn-offset-two-reduction",
                params!(p, k),
                &[
                    gsn_explicit(&two, k),
                    MPoly::constant(stirling2(p + 2, k + 2) - stirling2(p + 1, k + 2)),
                ],
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Poly-Bernoulli structure

fn displayed(p1: u32, p2: u32, k: i64) -> Option<MPoly> {
    let c = |base: i64| MPoly::constant(Rat::from(base).checked_pow(-k).unwrap());
    match (p1, p2) {
        (1, 1) => Some(c(3) * int(2) - c(2) * (x1() + x2() + int(1)) + x1() * x2()),
        (1, 2) => Some(
            c(3) * (x1() * int(2) + x2() * int(4) + int(6))
                - c(2) * (x1() * (x2() * int(2) + int(1)) + (x2() + int(1)).pow(2))
                + x1() * x2().pow(2)
                - c(4) * int(6),
        ),
        _ => None,
    }
}

fn pb_entries(r: &mut Runner) {
    let max_p = r.max_p();
    for k in r.ks() {
        for (p1, p2) in [(1, 1), (1, 2)] {
            let shown = displayed(p1, p2, k).unwrap();
            r.record(
                "displayed-example",
                params!(p1, p2, k),
                &[shown, pb2(p1, p2, k, Pb2Route::Definition).poly],
            );
        }
        for p in 0..=2 * max_p {
            r.record(
                "one-variable-gsn-route",
                params!(p, k),
                &[pb_poly(p, k), pb_poly_via_gsn(p, k)],
            );
        }
    }

    for r_ in 0..=2 * max_p + 4 {
        let b = pb_poly(r_, 1);
        let reflected = b.subst(&[(X, int(1) - xv())]);
        r.record(
            "bernoulli-reflection",
            params!(r_),
            &[reflected, b.scale(&Rat::sign_pow(r_))],
        );
        r.record("classical-agreement", params!(r_), &[b.clone(), bernoulli_poly(r_)]);
        let shifted = b.subst(&[(X, xv() + int(1))]);
        let sum: MPoly = (0..=r_).map(|j| pb_poly(j, 1).scale(&binomial_rat(r_, j as i64))).sum();
        r.record("classical-unit-shift", params!(r_), &[shifted, sum]);
    }

    let samples = r.sample_pairs();
    for (p1, p2) in r.pairs() {
        let zero = pb2_poly(p1, p2, 0);
        let closed0 = (x1() - int(1)).pow(p1) * (x2() - int(1)).pow(p2);
        r.record("closed-form-order-zero", params!(p1, p2), &[zero, closed0]);
        let minus = pb2_poly(p1, p2, -1);
        let closed1 = (x1() - int(2)).pow(p1) * (x2() - int(2)).pow(p2);
        r.record("closed-form-order-minus-one", params!(p1, p2), &[minus, closed1]);

        for k in r.ks() {
            let base = pb2_poly(p1, p2, k);
            let mut routes = vec![
                pb2(p1, p2, k, Pb2Route::Definition).poly,
                pb2(p1, p2, k, Pb2Route::Explicit).poly,
                base.clone(),
            ];
            routes.extend(r.cfg.m_set.iter().map(|&m| pb2(p1, p2, k, Pb2Route::StirlingM(m)).poly));
            routes.extend(
                r.cfg
                    .n_set
                    .iter()
                    .filter(|&&n| n >= 1)
                    .map(|&n| pb2(p1, p2, k, Pb2Route::StirlingN(n)).poly),
            );
            routes.push(pbn_via_stirling(&[p1, p2], k));
            r.record("pb2-route-equivalence", params!(p1, p2, k), &routes);

            let diag = base.subst(&[(X1, xv()), (X2, xv())]);
            r.record("diagonal-collapse", params!(p1, p2, k), &[diag, pb_poly(p1 + p2, k)]);

            let d1 = if p1 == 0 {
                MPoly::zero()
            } else {
                pb2_poly(p1 - 1, p2, k).scale(&Rat::from(p1))
            };
            r.record("partial-derivative-x1", params!(p1, p2, k), &[base.diff(X1), d1]);
            let d2 = if p2 == 0 {
                MPoly::zero()
            } else {
                pb2_poly(p1, p2 - 1, k).scale(&Rat::from(p2))
            };
            r.record("partial-derivative-x2", params!(p1, p2, k), &[base.diff(X2), d2]);

            if p2 == 0 {
                r.record(
                    "corner-x1",
                    params!(p1, p2, k),
                    &[base.clone(), pb_poly(p1, k).subst(&[(X, x1())])],
                );
            }
            if p1 == 0 {
                r.record(
                    "corner-x2",
                    params!(p1, p2, k),
                    &[base.clone(), pb_poly(p2, k).subst(&[(X, x2())])],
                );
            }

            let edge1: MPoly = (0..=p2)
                .map(|j| {
                    x2().pow(p2 - j)
                        .scale(&(binomial_rat(p2, j as i64) * pb_number(p1 + j, k)))
                })
                .sum();
            r.record(
                "edge-x1-zero",
                params!(p1, p2, k),
                &[base.subst(&[(X1, int(0))]), edge1],
            );
            let edge2: MPoly = (0..=p1)
                .map(|j| {
                    x1().pow(p1 - j)
                        .scale(&(binomial_rat(p1, j as i64) * pb_number(j + p2, k)))
                })
                .sum();
            r.record(
                "edge-x2-zero",
                params!(p1, p2, k),
                &[base.subst(&[(X2, int(0))]), edge2],
            );

            let symbolic = pb2_addition(p1, p2, k, &MPoly::var(Y), &MPoly::var(Z)).poly;
            r.record(
                "addition-symbolic-centre",
                params!(p1, p2, k),
                &[symbolic, base.clone()],
            );
            for (a, b) in &samples {
                let at = pb2_addition(p1, p2, k, &rat(a), &rat(b)).poly;
                r.record(
                    "addition-rational-centre",
                    params!(p1, p2, k, a, b),
                    &[at, base.clone()],
                );
            }
            let y = MPoly::var(Y);
            let common = centred(p1, p2, &-&y, &-&y, |j1, j2| pb_poly_at(j1 + j2, k, &y));
            r.record("addition-common-centre", params!(p1, p2, k), &[common, base.clone()]);

            let shifted = base.subst(&[(X1, x1() + int(1)), (X2, x2() + int(1))]);
            let mut sum = MPoly::zero();
            for j1 in 0..=p1 {
                for j2 in 0..=p2 {
                    sum += pb2_poly(j1, j2, k).scale(&binom2(p1, j1, p2, j2));
                }
            }
            r.record("binomial-argument-shift", params!(p1, p2, k), &[shifted, sum]);

            for (a, b) in &samples {
                let mut acc = MPoly::zero();
                for j1 in 0..=p1 {
                    for j2 in 0..=p2 {
                        let v = pb2_poly(j1, j2, k).eval(&[(X1, a.clone()), (X2, b.clone())]).unwrap();
                        acc += ((xv() - rat(a)).pow(p1 - j1) * (xv() - rat(b)).pow(p2 - j2))
                            .scale(&(binom2(p1, j1, p2, j2) * v));
                    }
                }
                r.record("recombination", params!(p1, p2, k, a, b), &[pb_poly(p1 + p2, k), acc]);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Identities obtained through the transfer theorem

fn transfer_entries(r: &mut Runner) {
    one_variable_transfers(r);
    stirling_centre_transfers(r);
    two_centre_transfers(r);
    three_fold_classical(r);
    factorial_weight_transfers(r);
    shifted_difference_transfers(r);
}

fn one_variable_transfers(r: &mut Runner) {
    let max_p = r.max_p();
    let y = MPoly::var(Y);
    for p in 0..=max_p {
        for k in r.ks() {
            // x^p = Σ C(p,j) y^(p-j) (x-y)^j
            let mut lhs = vec![MPoly::zero(); p as usize + 1];
            lhs[p as usize] = MPoly::one();
            let rhs: Vec<MPoly> = (0..=p)
                .map(|j| y.pow(p - j).scale(&binomial_rat(p, j as i64)))
                .collect();
            let members = IdentitySpec::new(p, lhs, MPoly::zero(), rhs, -&y).map(|spec| {
                let mut m = verify_transfer(&spec, k).members;
                let literal: MPoly = (0..=p)
                    .map(|j| (xv() - &y).pow(p - j) * pb_poly_at(j, k, &y).scale(&binomial_rat(p, j as i64)))
                    .sum();
                m.push(literal);
                m
            });
            r.record_result("poly-bernoulli-addition", params!(p, k), members);

            let numbers: MPoly = (0..=p)
                .map(|j| xv().pow(p - j).scale(&(binomial_rat(p, j as i64) * pb_number(j, k))))
                .sum();
            let centred_y: MPoly = (0..=p)
                .map(|j| (xv() - &y).pow(p - j) * pb_poly_at(j, k, &y).scale(&binomial_rat(p, j as i64)))
                .sum();
            r.record("addition-over-numbers", params!(p, k), &[numbers, centred_y]);
        }

        for (k, k1) in r.k_pairs() {
            let members = double_order_members(p, k, k1);
            match members {
                Ok(m) => {
                    r.record("double-order-addition", params!(p, k, k1), &m);
                    let mut diag = subst_all(&m, &[(Y, xv())]);
                    diag.push(
                        (0..=p)
                            .map(|j| pb_poly_at(j, k, &xv()).scale(&(binomial_rat(p, j as i64) * pb_number(p - j, k1))))
                            .sum(),
                    );
                    r.record("double-order-diagonal", params!(p, k, k1), &diag);
                }
                Err(e) => r.record_result("double-order-addition", params!(p, k, k1), Err(e)),
            }
        }

        for k1 in r.ks() {
            let b = |j: u32| pb_number(j, 1);
            let xp1 = xv() + int(1);
            let mut shifted = match double_order_members(p, 1, k1) {
                Ok(m) => subst_all(&m, &[(Y, xv())]),
                Err(e) => {
                    r.record_result("shifted-diagonal", params!(p, k1), Err(e));
                    continue;
                }
            };
            shifted = subst_all(&shifted, &[(X, xp1.clone())]);
            shifted.push(
                (0..=p)
                    .map(|j| pb_poly_at(p - j, k1, &xp1).scale(&(binomial_rat(p, j as i64) * b(j))))
                    .sum(),
            );
            shifted.push(
                (0..=p)
                    .map(|j| pb_poly_at(j, 1, &xp1).scale(&(binomial_rat(p, j as i64) * pb_number(p - j, k1))))
                    .sum(),
            );
            r.record("shifted-diagonal", params!(p, k1), &shifted);

            let lhs: MPoly = (0..=p)
                .map(|j| {
                    (pb_poly_at(p - j, k1, &xp1) - pb_poly_at(p - j, k1, &xv()))
                        .scale(&(binomial_rat(p, j as i64) * b(j)))
                })
                .sum();
            let rhs = if p == 0 {
                MPoly::zero()
            } else {
                pb_poly(p - 1, k1).scale(&Rat::from(p))
            };
            r.record("curious-difference", params!(p, k1), &[lhs, rhs]);
        }
    }
}

/// `Σ C(p,j) B_{p-j}^(k1)(x) B_j^(k) = Σ C(p,j) B_{p-j}^(k1)(x-y) B_j^(k)(y)`
/// obtained by transferring the number form of the addition formula.
fn double_order_members(p: u32, k: i64, k1: i64) -> Result<Vec<MPoly>, IdentityError> {
    let y = MPoly::var(Y);
    let mut lhs = ShiftedSum::default();
    let mut rhs = ShiftedSum::default();
    for j in 0..=p {
        let c = binomial_rat(p, j as i64);
        lhs.push(
            MPoly::constant(&c * &pb_number(j, k)),
            vec![ShiftedPower::new(X, MPoly::zero(), p - j)],
        );
        rhs.push(pb_poly_at(j, k, &y).scale(&c), vec![ShiftedPower::new(X, -&y, p - j)]);
    }
    transferred(vec![lhs, rhs], &[(X, k1)])
}

fn stirling_centre_transfers(r: &mut Runner) {
    for (p1, p2) in r.pairs() {
        for k0 in r.ks() {
            for m in r.cfg.m_set.clone() {
                for n in r.cfg.n_set.clone().into_iter().filter(|&n| n >= 1) {
                    let base = stirling_centre_base(p1, p2, k0, m, n);
                    let expanded: Vec<MPoly> = base.iter().map(ShiftedSum::expand).collect();
                    r.record("stirling-centre-expansions", params!(p1, p2, k0, m, n), &expanded);
                    for (k1, k2) in r.k_pairs() {
                        let at = int((m + n) as i64);
                        let members = transferred(base.clone(), &[(X1, k1), (X2, k2)])
                            .map(|ms| subst_all(&ms, &[(X1, at.clone()), (X2, at.clone())]));
                        r.record_result("stirling-centre-transfer", params!(p1, p2, k0, k1, k2, m, n), members);
                    }
                }
            }
        }
    }
}

/// The three Stirling-number expansions of the bi-variate polynomial,
/// centred at `0`, at `m` and at `n`.
fn stirling_centre_base(p1: u32, p2: u32, k0: i64, m: u32, n: u32) -> Vec<ShiftedSum> {
    let zero = MPoly::zero();
    let at0 = centred_sum(p1, p2, &zero, &zero, |j1, j2| {
        let j = j1 + j2;
        MPoly::constant((0..=j).map(|l| stirling2(j, l as i64) * weight(l, k0)).sum())
    });
    let sm = int(-(m as i64));
    let at_m = centred_sum(p1, p2, &sm, &sm, |j1, j2| {
        let j = j1 + j2;
        let mut acc = Rat::zero();
        for l in 0..=j {
            for i in 0..=m {
                acc += binomial_rat(m, i as i64)
                    * stirling2(j, (l + i) as i64)
                    * Rat::sign_pow(l)
                    * factorial_rat(l + i)
                    * crate::bernoulli::inv_pow(l + 1, k0);
            }
        }
        MPoly::constant(acc)
    });
    let sn = int(-(n as i64));
    let at_n = centred_sum(p1, p2, &sn, &sn, |j1, j2| {
        let j = j1 + j2;
        let mut acc = Rat::zero();
        for l in 0..=j {
            for i in 0..n {
                acc += Rat::sign_pow(i)
                    * stirling1_unsigned(n, (n - i) as i64)
                    * stirling2(j + n - i, (l + n) as i64)
                    * weight(l, k0);
            }
        }
        MPoly::constant(acc)
    });
    vec![at0, at_m, at_n]
}

/// Re-centrings of the bi-variate polynomial at symbolic `y` and `z`.
fn two_centre_base(p1: u32, p2: u32, k0: i64) -> Vec<ShiftedSum> {
    [Y, Z]
        .iter()
        .map(|c| {
            let v = MPoly::var(c);
            centred_sum(p1, p2, &-&v, &-&v, |j1, j2| pb_poly_at(j1 + j2, k0, &v))
        })
        .collect()
}

fn two_centre_transfers(r: &mut Runner) {
    let mut qs: Vec<Rat> = r.cfg.q_range.iter().map(|&q| Rat::from(q)).collect();
    qs.extend(r.cfg.rational_samples.iter().filter(|s| !s.is_integer()).cloned());
    for (p1, p2) in r.pairs() {
        for k0 in r.ks() {
            let base = two_centre_base(p1, p2, k0);
            let expanded: Vec<MPoly> = base.iter().map(ShiftedSum::expand).collect();
            r.record("two-centre-addition", params!(p1, p2, k0), &expanded);

            for (k1, k2) in r.k_pairs() {
                let members = match transferred(base.clone(), &[(X1, k1), (X2, k2)]) {
                    Ok(m) => m,
                    Err(e) => {
                        r.record_result("two-centre-transfer", params!(p1, p2, k0, k1, k2), Err(e));
                        continue;
                    }
                };
                r.record("two-centre-transfer", params!(p1, p2, k0, k1, k2), &members);

                let mut diag = subst_all(&members, &[(X1, xv()), (X2, xv()), (Y, xv())]);
                let mut literal = MPoly::zero();
                for j1 in 0..=p1 {
                    for j2 in 0..=p2 {
                        let w = binom2(p1, j1, p2, j2) * pb_number(p1 - j1, k1) * pb_number(p2 - j2, k2);
                        literal += pb_poly_at(j1 + j2, k0, &xv()).scale(&w);
                    }
                }
                diag.push(literal.clone());
                r.record("two-centre-diagonal", params!(p1, p2, k0, k1, k2), &diag);

                // the right member of the diagonal form, still in z
                let in_z = diag[1].clone();
                for q in &qs {
                    let mut members = vec![literal.clone()];
                    for zv in [
                        MPoly::zero(),
                        int(1) - xv().scale(&(q - Rat::one())),
                        xv().scale(q) - int(1),
                    ] {
                        members.push(in_z.subst(&[(Z, zv)]));
                    }
                    let mut both_x = MPoly::zero();
                    for j1 in 0..=p1 {
                        for j2 in 0..=p2 {
                            both_x += (pb_poly_at(p1 - j1, k1, &xv()) * pb_poly_at(p2 - j2, k2, &xv()))
                                .scale(&(binom2(p1, j1, p2, j2) * pb_number(j1 + j2, k0)));
                        }
                    }
                    members.push(both_x);
                    r.record("two-centre-specializations", params!(p1, p2, k0, k1, k2, q), &members);
                }
            }
        }
    }
}

fn three_fold_classical(r: &mut Runner) {
    let max_p = r.max_p();
    let b = |j: u32| pb_number(j, 1);
    let bx = |j: u32, u: &MPoly| pb_poly_at(j, 1, u);
    let x = xv();
    let twice = xv().scale(&Rat::from(2)) - int(1);
    for (p1, p2) in r.pairs() {
        let mut m = vec![MPoly::zero(); 4];
        for j1 in 0..=p1 {
            for j2 in 0..=p2 {
                let (a, c, j) = (p1 - j1, p2 - j2, j1 + j2);
                let w = binom2(p1, j1, p2, j2);
                let s = Rat::sign_pow(j);
                m[0] += bx(j, &x).scale(&(&w * b(a) * b(c)));
                m[1] += (bx(a, &x) * bx(c, &x)).scale(&(&w * b(j)));
                m[2] += (bx(a, &twice) * bx(c, &twice) * bx(j, &x)).scale(&(&w * &s));
                m[3] += (bx(a, &x) * bx(c, &x) * bx(j, &twice)).scale(&(&w * &s * Rat::sign_pow(p1 + p2)));
            }
        }
        r.record("classical-three-fold", params!(p1, p2), &m);
    }
    for p1 in 0..=2 * max_p + 1 {
        for p2 in 0..=2 * max_p + 1 - p1 {
            if (p1 + p2) % 2 == 1 {
                r.record_rats(
                    "odd-weight-vanishing",
                    params!(p1, p2),
                    &[odd_weight_sum(p1, p2), Rat::zero()],
                );
            }
        }
    }
}

fn factorial_weight_base(p1: u32, p2: u32, rr: u32) -> Vec<ShiftedSum> {
    let zero = MPoly::zero();
    let at0 = centred_sum(p1, p2, &zero, &zero, |j1, j2| {
        let j = j1 + j2;
        MPoly::constant(
            (0..=j)
                .map(|l| stirling2(j, l as i64) * Rat::sign_pow(l) * factorial_rat(l + rr))
                .sum(),
        )
    });
    let at1 = centred_sum(p1, p2, &int(-1), &int(-1), |j1, j2| {
        let j = j1 + j2;
        MPoly::constant(
            (0..=j)
                .map(|l| stirling2(j + 1, l as i64 + 1) * Rat::sign_pow(l) * factorial_rat(l + rr))
                .sum(),
        )
    });
    let s = int(-(rr as i64) - 1);
    let mut closed = ShiftedSum::default();
    closed.push(
        MPoly::constant(factorial_rat(rr)),
        vec![ShiftedPower::new(X1, s.clone(), p1), ShiftedPower::new(X2, s, p2)],
    );
    vec![at0, at1, closed]
}

fn factorial_weight_transfers(r: &mut Runner) {
    for (p1, p2) in r.pairs() {
        for r_ in r.cfg.r_set.clone() {
            let base = factorial_weight_base(p1, p2, r_);
            let expanded: Vec<MPoly> = base.iter().map(ShiftedSum::expand).collect();
            r.record("factorial-weight-expansion", params!(p1, p2, r_), &expanded);
            for (k1, k2) in r.k_pairs() {
                let members = transferred(base.clone(), &[(X1, k1), (X2, k2)]);
                r.record_result("factorial-weight-transfer", params!(p1, p2, r_, k1, k2), members);
            }
        }
    }
}

/// `p1 Σ_t (x1+t)^(p1-1) (x2+t)^p2 + p2 Σ_t (x1+t)^p1 (x2+t)^(p2-1)`, `t < r`.
fn telescoped(p1: u32, p2: u32, rr: u32) -> ShiftedSum {
    let mut sum = ShiftedSum::default();
    for t in 0..rr {
        let s = int(t as i64);
        if p1 > 0 {
            sum.push(
                int(p1 as i64),
                vec![
                    ShiftedPower::new(X1, s.clone(), p1 - 1),
                    ShiftedPower::new(X2, s.clone(), p2),
                ],
            );
        }
        if p2 > 0 {
            sum.push(
                int(p2 as i64),
                vec![ShiftedPower::new(X1, s.clone(), p1), ShiftedPower::new(X2, s, p2 - 1)],
            );
        }
    }
    sum
}

/// Members of the difference formula with classical numbers: the number
/// expansion, the two-centre expansion at symbolic `y` and `z`, and the
/// telescoped power sums.
fn shifted_difference_base(p1: u32, p2: u32, rr: u32) -> Vec<ShiftedSum> {
    let (y, z) = (MPoly::var(Y), MPoly::var(Z));
    let rp = int(rr as i64);
    let mut numbers = centred_sum(p1, p2, &rp, &rp, |j1, j2| MPoly::constant(pb_number(j1 + j2, 1)));
    let zero = MPoly::zero();
    numbers
        .terms
        .extend(centred_sum(p1, p2, &zero, &zero, |j1, j2| MPoly::constant(-pb_number(j1 + j2, 1))).terms);
    let ys = &rp - &y;
    let mut centres = centred_sum(p1, p2, &ys, &ys, |j1, j2| pb_poly_at(j1 + j2, 1, &y));
    centres
        .terms
        .extend(centred_sum(p1, p2, &-&z, &-&z, |j1, j2| -pb_poly_at(j1 + j2, 1, &z)).terms);
    vec![numbers, centres, telescoped(p1, p2, rr)]
}

fn shifted_difference_transfers(r: &mut Runner) {
    let (y, z) = (MPoly::var(Y), MPoly::var(Z));
    for (p1, p2) in r.pairs() {
        for r_ in r.cfg.r_set.clone().into_iter().filter(|&v| v >= 1) {
            let rp = int(r_ as i64);
            let moved = [(X1, x1() + &rp), (X2, x2() + &rp)];
            let b1 = pb2_poly(p1, p2, 1);
            let diff = b1.subst(&moved) - &b1;
            r.record(
                "shifted-difference",
                params!(p1, p2, r_),
                &[diff, telescoped(p1, p2, r_).expand()],
            );

            for k0 in r.ks() {
                let b = pb2_poly(p1, p2, k0);
                let diff = b.subst(&moved) - &b;
                let numbers = centred(p1, p2, &rp, &rp, |j1, j2| MPoly::constant(pb_number(j1 + j2, k0)))
                    - centred(p1, p2, &MPoly::zero(), &MPoly::zero(), |j1, j2| {
                        MPoly::constant(pb_number(j1 + j2, k0))
                    });
                let centres = centred(p1, p2, &(&rp - &y), &(&rp - &y), |j1, j2| pb_poly_at(j1 + j2, k0, &y))
                    - centred(p1, p2, &-&z, &-&z, |j1, j2| pb_poly_at(j1 + j2, k0, &z));
                r.record(
                    "shifted-difference-recentred",
                    params!(p1, p2, r_, k0),
                    &[diff, numbers, centres],
                );
            }

            let base = shifted_difference_base(p1, p2, r_);
            let expanded: Vec<MPoly> = base.iter().map(ShiftedSum::expand).collect();
            r.record("shifted-difference-classical", params!(p1, p2, r_), &expanded);

            for (k1, k2) in r.k_pairs() {
                let members = match transferred(base.clone(), &[(X1, k1), (X2, k2)]) {
                    Ok(m) => m,
                    Err(e) => {
                        r.record_result("shifted-difference-transfer", params!(p1, p2, r_, k1, k2), Err(e));
                        continue;
                    }
                };
                r.record("shifted-difference-transfer", params!(p1, p2, r_, k1, k2), &members);

                let ri = r_ as i64;
                let mut special = vec![members[0].clone(), members[2].clone()];
                for (a, c) in [(ri, ri), (ri, 0), (0, -ri), (2 * ri, ri)] {
                    special.push(members[1].subst(&[(Y, int(a)), (Z, int(c))]));
                }
                // (y, z) = (r, 0) written with one factor pulled out
                let mut factored = MPoly::zero();
                for j1 in 0..=p1 {
                    for j2 in 0..=p2 {
                        let j = j1 + j2;
                        let bern = pb_poly_at(j, 1, &rp) - MPoly::constant(pb_number(j, 1));
                        factored += (pb_poly_at(p1 - j1, k1, &x1()) * pb_poly_at(p2 - j2, k2, &x2()) * bern)
                            .scale(&binom2(p1, j1, p2, j2));
                    }
                }
                special.push(factored);
                r.record(
                    "shifted-difference-specializations",
                    params!(p1, p2, r_, k1, k2),
                    &special,
                );
            }
            let _ = (&y, &z);
        }
    }
}

// ---------------------------------------------------------------------------
// Generalized recurrences

fn recurrence_entries(r: &mut Runner) {
    let max_p = r.max_p();
    let qs = r.cfg.q_range.clone();
    for (p1, p2) in r.pairs() {
        for &q in &qs {
            for k in r.ks() {
                let a = gen_recurrence_a(p1, p2, q, k).map(|m| vec![m.lhs1, m.lhs2, m.rhs]);
                r.record_result("generalized-recurrence", params!(p1, p2, q, k), a);
                let b = gen_recurrence_b(p1, p2, q, k).map(|m| vec![m.lhs1, m.lhs2, m.rhs]);
                r.record_result("derivative-weighted-recurrence", params!(p1, p2, q, k), b);

                for (name, members) in binomial_shift_groups(p1, p2, q, k) {
                    r.record(name, params!(p1, p2, q, k), &members);
                }

                recentred_recurrence(r, p1, p2, q, k);
                first_kind_specialization(r, p1, p2, q, k);
            }
            enriched_first_kind(r, p1, p2, q);
        }
        let members = carlitz_members(p1, p2);
        r.record_rats("carlitz-reciprocity", params!(p1, p2), &members);
    }

    for mu in 0..=max_p as i64 + 1 {
        for y in 0..=2 * max_p as i64 {
            let yr = Rat::from(y);
            let at = |k: i64| r_function(mu, k, &yr).map(|e| e.value);
            if let Ok(v) = at(0) {
                r.record_rats("r-function-order-zero", params!(mu, y), &[v, Rat::sign_pow(mu)]);
            }
            if let Ok(v) = at(-1) {
                let den: Rat = (2..=mu + 2).map(|i| Rat::from(y + i)).product();
                let closed = Rat::sign_pow(mu) * Rat::from(2).pow(mu as u32 + 1) / den;
                r.record_rats("r-function-order-minus-one", params!(mu, y), &[v, closed]);
            }
        }
    }
    for k in r.ks() {
        for y in 0..=2 * max_p as i64 {
            let yr = Rat::from(y);
            let p = |base: i64, e: i64| Rat::from(base).checked_pow(e).unwrap();
            let r0 = p(y + 1, k + 1) - &yr * p(y + 2, k);
            let r1 = Rat::from(2 * y + 1) * p(y + 1, k + 1) * p(y + 3, k)
                - &yr * &yr * p(y + 2, k) * p(y + 3, k)
                - p(y + 1, k + 1) * p(y + 2, k + 1);
            let v0 = r_function(0, k, &yr).map(|e| e.value);
            let v1 = r_function(1, k, &yr).map(|e| e.value);
            match (v0, v1) {
                (Ok(v0), Ok(v1)) => {
                    r.record_rats("r-function-first", params!(k, y), &[v0, r0]);
                    r.record_rats("r-function-second", params!(k, y), &[v1, r1]);
                }
                (Err(e), _) | (_, Err(e)) => r.record_result("r-function-first", params!(k, y), Err(e)),
            }
        }
    }
}

/// The first generalized recurrence re-centred at symbolic points, then at
/// the variables themselves, then on the axis `x2 = 0`.
fn recentred_recurrence(r: &mut Runner, p1: u32, p2: u32, q: u32, k: i64) {
    let (y, z) = (MPoly::var(Y), MPoly::var(Z));
    let rhs: Result<MPoly, IdentityError> = (0..=p1 + p2)
        .map(|l| recurrence_kernel(q, k, l).map(|c| gsn_symbolic(p1, p2, l as i64).scale(&-c)))
        .sum();
    let rhs = match rhs {
        Ok(v) => v,
        Err(e) => return r.record_result("recentred-recurrence", params!(p1, p2, q, k), Err(e)),
    };
    let c = |l: u32| binomial_rat(q, l as i64);
    let (nx1, nx2) = (-x1(), -x2());

    let mut l1 = MPoly::zero();
    let mut l2 = MPoly::zero();
    for l in 0..=q {
        l1 += nx1.pow(q - l) * centred(p1 + l, p2, &-&y, &-&y, |j1, j2| pb_poly_at(j1 + j2, k, &y)).scale(&c(l));
        l2 += nx2.pow(q - l) * centred(p1, p2 + l, &-&z, &-&z, |j1, j2| pb_poly_at(j1 + j2, k, &z)).scale(&c(l));
    }
    r.record(
        "recentred-recurrence",
        params!(p1, p2, q, k),
        &[l1.clone(), l2.clone(), rhs.clone()],
    );

    let mut stirling_form = MPoly::zero();
    for j1 in 0..=p1 {
        for j2 in 0..=p2 {
            let j = j1 + j2;
            let mut s = Rat::zero();
            for l in 0..=j {
                match recurrence_kernel(q, k, l) {
                    Ok(kv) => s += stirling2(j, l as i64) * kv,
                    Err(e) => return r.record_result("self-centred-recurrence", params!(p1, p2, q, k), Err(e)),
                }
            }
            stirling_form -= (x1().pow(p1 - j1) * x2().pow(p2 - j2)).scale(&(binom2(p1, j1, p2, j2) * s));
        }
    }
    let mut first = MPoly::zero();
    let mut second = MPoly::zero();
    let mut third = MPoly::zero();
    let mut fourth = MPoly::zero();
    for l in 0..=q {
        let a = nx1.pow(q - l).scale(&c(l));
        let b = nx2.pow(q - l).scale(&c(l));
        for j2 in 0..=p2 {
            first += &a
                * &((x2() - x1()).pow(p2 - j2) * pb_poly_at(p1 + l + j2, k, &x1())).scale(&binomial_rat(p2, j2 as i64));
        }
        for j1 in 0..=p1 + l {
            second += &a
                * &((x1() - x2()).pow(p1 + l - j1) * pb_poly_at(j1 + p2, k, &x2()))
                    .scale(&binomial_rat(p1 + l, j1 as i64));
        }
        for j2 in 0..=p2 + l {
            third += &b
                * &((x2() - x1()).pow(p2 + l - j2) * pb_poly_at(p1 + j2, k, &x1()))
                    .scale(&binomial_rat(p2 + l, j2 as i64));
        }
        for j1 in 0..=p1 {
            fourth += &b
                * &((x1() - x2()).pow(p1 - j1) * pb_poly_at(j1 + p2 + l, k, &x2())).scale(&binomial_rat(p1, j1 as i64));
        }
    }
    let mut self_centred = vec![
        first.clone(),
        second,
        third,
        fourth,
        stirling_form,
        l1.subst(&[(Y, x1())]),
        l2.subst(&[(Z, x2())]),
    ];
    self_centred.push(rhs.clone());
    r.record("self-centred-recurrence", params!(p1, p2, q, k), &self_centred);

    let axis = [(X2, MPoly::zero())];
    let mut on_axis: Vec<MPoly> = vec![first.subst(&axis), rhs.subst(&axis)];
    let mut fifth = MPoly::zero();
    for l in 0..=q {
        for j1 in 0..=p1 + l {
            fifth += (nx1.pow(q - l) * x1().pow(p1 + l - j1))
                .scale(&(c(l) * binomial_rat(p1 + l, j1 as i64) * pb_number(j1 + p2, k)));
        }
    }
    on_axis.push(fifth);
    on_axis.push(
        (0..=p2 + q)
            .map(|j| nx1.pow(p2 + q - j) * pb_poly_at(p1 + j, k, &x1()).scale(&binomial_rat(p2 + q, j as i64)))
            .sum(),
    );
    on_axis.push(
        (0..=p1)
            .map(|j| {
                x1().pow(p1 - j)
                    .scale(&(binomial_rat(p1, j as i64) * pb_number(j + p2 + q, k)))
            })
            .sum(),
    );
    r.record("axis-recurrence", params!(p1, p2, q, k), &on_axis);
}

fn at_point(p: &MPoly, a: i64, b: i64) -> Rat {
    p.eval(&[(X1, Rat::from(a)), (X2, Rat::from(b))]).unwrap()
}

/// The second recurrence at `(x1, x2) = (0, 1)`, where the derivative
/// weights become Stirling numbers of the first kind.
fn first_kind_specialization(r: &mut Runner, p1: u32, p2: u32, q: u32, k: i64) {
    let s = |n: u32, j: u32| stirling1_unsigned(n, j as i64);
    let b = |j: u32| pb_number(j, k);
    let m = match gen_recurrence_b(p1, p2, q, k) {
        Ok(m) => m,
        Err(e) => return r.record_result("first-kind-specialization", params!(p1, p2, q, k), Err(e)),
    };
    let mut members = vec![at_point(&m.lhs1, 0, 1)];
    members.push(
        (0..=q)
            .map(|l| Rat::sign_pow(l) * s(q, l) * at_point(&pb2_poly(p1 + l, p2, k), 0, 1))
            .sum(),
    );
    members.push(
        (0..=q)
            .map(|l| Rat::sign_pow(l) * s(q + 1, l + 1) * at_point(&pb2_poly(p1, p2 + l, k), 0, 1))
            .sum(),
    );
    let params_q = GsnParams::unit_slopes(Rat::from(q), p1, Rat::from(q + 1), p2);
    members.push(
        (0..=p1 + p2)
            .map(|l| {
                gsn_explicit(&params_q, l as i64).as_constant().unwrap()
                    * Rat::sign_pow(l)
                    * factorial_rat(l + q)
                    * crate::bernoulli::inv_pow(l + q + 1, k)
            })
            .sum(),
    );
    members.push(
        (0..=q)
            .map(|l| {
                Rat::sign_pow(l)
                    * s(q, l)
                    * (0..=p2)
                        .map(|j| binomial_rat(p2, j as i64) * b(p1 + l + j))
                        .sum::<Rat>()
            })
            .sum(),
    );
    members.push(
        (0..=q)
            .map(|l| {
                Rat::sign_pow(l)
                    * s(q + 1, l + 1)
                    * (0..=p2 + l)
                        .map(|j| binomial_rat(p2 + l, j as i64) * b(p1 + j))
                        .sum::<Rat>()
            })
            .sum(),
    );
    let mut explicit = Rat::zero();
    let (qr, qr1) = (Rat::from(q), Rat::from(q + 1));
    for j1 in 0..=p1 {
        for j2 in 0..=p2 {
            let j = j1 + j2;
            let inner: Rat = (0..=j)
                .map(|l| {
                    stirling2(j, l as i64)
                        * Rat::sign_pow(l)
                        * factorial_rat(l + q)
                        * crate::bernoulli::inv_pow(l + q + 1, k)
                })
                .sum();
            explicit += binom2(p1, j1, p2, j2) * qr.pow(p1 - j1) * qr1.pow(p2 - j2) * inner;
        }
    }
    members.push(explicit);
    r.record_rats("first-kind-specialization", params!(p1, p2, q, k), &members);
}

/// The `k = 1` case of the first-kind specialization, enlarged with the
/// Carlitz reciprocity.
fn enriched_first_kind(r: &mut Runner, p1: u32, p2: u32, q: u32) {
    let s = |n: u32, j: u32| stirling1_unsigned(n, j as i64);
    let b = |j: u32| pb_number(j, 1);
    let sign = Rat::sign_pow(p1 + p2);
    let at = |a: u32, c: u32, x: i64, y: i64| at_point(&pb2_poly(a, c, 1), x, y);
    let mut members: Vec<Rat> = vec![(0..=q).map(|l| Rat::sign_pow(l) * s(q, l) * at(p1 + l, p2, 0, 1)).sum()];
    members.push((0..=q).map(|l| s(q, l) * at(p1 + l, p2, 1, 0)).sum::<Rat>() * &sign);
    members.push(
        (0..=q)
            .map(|l| Rat::sign_pow(l) * s(q + 1, l + 1) * at(p1, p2 + l, 0, 1))
            .sum(),
    );
    members.push((0..=q).map(|l| s(q + 1, l + 1) * at(p1, p2 + l, 1, 0)).sum::<Rat>() * &sign);
    let params_q = GsnParams::unit_slopes(Rat::from(q), p1, Rat::from(q + 1), p2);
    members.push(
        (0..=p1 + p2)
            .map(|l| {
                gsn_explicit(&params_q, l as i64).as_constant().unwrap() * Rat::sign_pow(l) * factorial_rat(l + q)
                    / Rat::from(l + q + 1)
            })
            .sum(),
    );
    members.push(
        (0..=q)
            .map(|l| {
                Rat::sign_pow(l)
                    * s(q, l)
                    * (0..=p2)
                        .map(|j| binomial_rat(p2, j as i64) * b(p1 + l + j))
                        .sum::<Rat>()
            })
            .sum(),
    );
    members.push(
        (0..=q)
            .map(|l| {
                s(q, l)
                    * (0..=p1 + l)
                        .map(|j| binomial_rat(p1 + l, j as i64) * b(j + p2))
                        .sum::<Rat>()
            })
            .sum::<Rat>()
            * &sign,
    );
    members.push(
        (0..=q)
            .map(|l| {
                Rat::sign_pow(l)
                    * s(q + 1, l + 1)
                    * (0..=p2 + l)
                        .map(|j| binomial_rat(p2 + l, j as i64) * b(p1 + j))
                        .sum::<Rat>()
            })
            .sum(),
    );
    members.push(
        (0..=q)
            .map(|l| {
                s(q + 1, l + 1)
                    * (0..=p1)
                        .map(|j| binomial_rat(p1, j as i64) * b(j + p2 + l))
                        .sum::<Rat>()
            })
            .sum::<Rat>()
            * &sign,
    );
    r.record_rats("enriched-first-kind", params!(p1, p2, q), &members);
}

// ---------------------------------------------------------------------------
// Several variables

fn nvar_entries(r: &mut Runner) {
    let max_p = r.max_p();
    let cap = max_p.min(2);
    let names = var_names(3);
    let xs: Vec<MPoly> = names.iter().map(|n| MPoly::var(n)).collect();

    for k in r.ks() {
        for p in 0..=max_p {
            let single = r.pbn(&[p], k);
            r.record(
                "n-variate-single",
                params!(p, k),
                &[single, pb_poly(p, k).subst(&[(X, x1())])],
            );
        }
        for (p1, p2) in r.pairs() {
            let pair = r.pbn(&[p1, p2], k);
            r.record("n-variate-pair", params!(p1, p2, k), &[pair, pb2_poly(p1, p2, k)]);
            let gap = r.pbn(&[p1, 0, p2], k);
            let relabeled = pb2_poly(p1, p2, k).subst(&[(X2, xs[2].clone())]);
            r.record("n-variate-zero-degree", params!(p1, p2, k), &[gap, relabeled]);
        }

        let mut triples = Vec::new();
        for_each_multi_index(&[cap; 3], |d| triples.push([d[0], d[1], d[2]]));
        for d in triples {
            let [p1, p2, p3] = d;
            let full = r.pbn(&d, k);
            let diag = full.subst(&[(X1, xv()), (X2, xv()), ("x3", xv())]);
            r.record(
                "n-variate-diagonal",
                params!(p1, p2, p3, k),
                &[diag, pb_poly(p1 + p2 + p3, k)],
            );
            r.record(
                "n-variate-stirling-route",
                params!(p1, p2, p3, k),
                &[full.clone(), pbn_via_stirling(&d, k)],
            );

            for q in r.cfg.q_range.clone().into_iter().filter(|&q| q <= cap) {
                three_variable_families(r, d, q, k, &xs);
            }
        }
    }
}

fn bump(d: [u32; 3], i: usize, by: u32) -> [u32; 3] {
    let mut e = d;
    e[i] += by;
    e
}

fn three_variable_families(r: &mut Runner, d: [u32; 3], q: u32, k: i64, xs: &[MPoly]) {
    let [p1, p2, p3] = d;
    let c = |j: u32| binomial_rat(q, j as i64);

    // (a)
    let mut members = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        let nx = -x;
        let mut acc = MPoly::zero();
        for l in 0..=q {
            acc += nx.pow(q - l) * r.pbn(&bump(d, i, l), k).scale(&c(l));
        }
        members.push(acc);
    }
    let mut rhs = MPoly::zero();
    let mut failed = None;
    for_each_multi_index(&d, |js| {
        let j: u32 = js.iter().sum();
        let mut mono = MPoly::one();
        let mut w = Rat::one();
        for i in 0..3 {
            mono = mono * xs[i].pow(d[i] - js[i]);
            w = w * binomial_rat(d[i], js[i] as i64);
        }
        let mut s = Rat::zero();
        for l in 0..=j {
            match recurrence_kernel(q, k, l) {
                Ok(kv) => s += stirling2(j, l as i64) * kv,
                Err(e) => failed = Some(e),
            }
        }
        rhs -= mono.scale(&(w * s));
    });
    match failed {
        Some(e) => r.record_result("three-variable-recurrence", params!(p1, p2, p3, q, k), Err(e)),
        None => {
            members.push(rhs);
            r.record("three-variable-recurrence", params!(p1, p2, p3, q, k), &members);
        }
    }

    // (b)
    let mut members = Vec::new();
    for (i, name) in [X1, X2, "x3"].iter().enumerate() {
        let mut deriv = crate::poly::rising_product(q, name);
        let mut acc = MPoly::zero();
        for l in 0..=q {
            let w = Rat::sign_pow(l) * factorial_rat(l).recip().unwrap();
            acc += (&deriv * &r.pbn(&bump(d, i, l), k)).scale(&w);
            deriv = deriv.diff(name);
        }
        members.push(acc);
    }
    let mut rhs = MPoly::zero();
    for_each_multi_index(&d, |js| {
        let j: u32 = js.iter().sum();
        let mut mono = MPoly::one();
        let mut w = Rat::one();
        for i in 0..3 {
            mono = mono * (&xs[i] + &int(q as i64)).pow(d[i] - js[i]);
            w = w * binomial_rat(d[i], js[i] as i64);
        }
        let s: Rat = (0..=j)
            .map(|l| {
                stirling2(j, l as i64)
                    * Rat::sign_pow(l)
                    * factorial_rat(l + q)
                    * crate::bernoulli::inv_pow(l + q + 1, k)
            })
            .sum();
        rhs += mono.scale(&(w * s));
    });
    members.push(rhs);
    r.record(
        "three-variable-derivative-recurrence",
        params!(p1, p2, p3, q, k),
        &members,
    );

    // (c)
    let base = r.pbn(&d, k);
    for (a, b) in [(1usize, 2usize), (0, 2), (0, 1)] {
        let mut acc = MPoly::zero();
        for j in 0..=q {
            let e = bump(bump(d, a, j), b, q - j);
            acc += r.pbn(&e, k).scale(&(Rat::sign_pow(j) * c(j)));
        }
        let rhs = (&xs[b] - &xs[a]).pow(q) * &base;
        let (va, vb) = (a + 1, b + 1);
        r.record(
            "three-variable-alternating-shift",
            params!(p1, p2, p3, q, k, va, vb),
            &[acc, rhs],
        );
    }

    // (d)
    for target in 0..3 {
        let mut members = Vec::new();
        for other in (0..3).filter(|&o| o != target) {
            let diff = &xs[target] - &xs[other];
            let mut acc = MPoly::zero();
            for j in 0..=q {
                acc += diff.pow(j) * r.pbn(&bump(d, other, q - j), k).scale(&c(j));
            }
            members.push(acc);
        }
        members.push(r.pbn(&bump(d, target, q), k));
        let var = target + 1;
        r.record(
            "three-variable-weighted-shift",
            params!(p1, p2, p3, q, k, var),
            &members,
        );
    }
}
