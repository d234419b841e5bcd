#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use polybern::{MPoly, Rat};
use proptest::prelude::*;

pub const VARS: [&str; 3] = ["x1", "x2", "y"];

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Rat::new(n, d))
}

pub fn nonzero_rat() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("nonzero", |r| !r.is_zero())
}

pub fn big_rat() -> impl Strategy<Value = Rat> {
    (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rat::new(n, d))
}

/// Sparse polynomials in x1, x2, y with at most six terms of degree three
/// per variable.
pub fn small_poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=3, 3), small_rat()), 0..6)
        .prop_map(|terms| MPoly::from_terms(&VARS, terms))
}

pub type TermMap = BTreeMap<BTreeMap<String, u32>, Rat>;

/// The term map of a polynomial keyed by variable name, zero exponents
/// dropped.
pub fn term_map(p: &MPoly) -> TermMap {
    p.terms()
        .map(|(m, c)| {
            let key = p
                .vars()
                .iter()
                .zip(m.exps())
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| (v.clone(), e))
                .collect();
            (key, c.clone())
        })
        .collect()
}

/// A stand-alone reader for the textual polynomial form
/// `c*v1^e1*v2 - c*... + c`.
pub fn parse_rendered(s: &str) -> TermMap {
    let mut out = TermMap::new();
    if s == "0" {
        return out;
    }
    let mut chunks: Vec<(bool, &str)> = Vec::new();
    let (mut neg, mut rest) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    loop {
        let plus = rest.find(" + ");
        let minus = rest.find(" - ");
        let next = match (plus, minus) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        match next {
            Some(i) => {
                chunks.push((neg, &rest[..i]));
                neg = &rest[i..i + 3] == " - ";
                rest = &rest[i + 3..];
            }
            None => {
                chunks.push((neg, rest));
                break;
            }
        }
    }
    for (neg, chunk) in chunks {
        let mut coeff = Rat::one();
        let mut key = BTreeMap::new();
        for factor in chunk.split('*') {
            if factor.starts_with(|c: char| c.is_ascii_digit()) {
                coeff = factor.parse().expect("coefficient");
            } else {
                let (v, e) = match factor.split_once('^') {
                    Some((v, e)) => (v, e.parse().expect("exponent")),
                    None => (factor, 1),
                };
                key.insert(v.to_string(), e);
            }
        }
        if neg {
            coeff = -coeff;
        }
        assert!(out.insert(key, coeff).is_none(), "repeated monomial in {s}");
    }
    out
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}
