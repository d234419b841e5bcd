//! Sparse multivariate polynomials over [`Rat`].
//!
//! A polynomial carries its own variable universe, kept sorted in natural
//! order (`x < x1 < x2 < ... < x10 < y < z`). Binary operations between
//! polynomials over different universes work over the union. Equality is
//! mathematical: variables that never occur with a nonzero exponent do not
//! affect it.
//!
//! Terms are kept in graded-lexicographic order (highest total degree first,
//! ties broken lexicographically with the first variable most significant),
//! which is also the rendering order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use crate::rat::Rat;

/// An exponent vector, one entry per variable of the owning universe.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn new(exps: impl Into<Box<[u32]>>) -> Monomial {
        Monomial(exps.into())
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    // "Less" sorts first, so larger monomials compare as smaller.
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Natural ordering on variable names: alphabetic prefix first, then the
/// numeric suffix as a number.
pub fn var_order(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, Option<u64>) {
        let cut = s
            .char_indices()
            .rev()
            .take_while(|(_, c)| c.is_ascii_digit())
            .last()
            .map(|(i, _)| i)
            .unwrap_or(s.len());
        let (head, tail) = s.split_at(cut);
        (head, tail.parse().ok())
    }
    let (ha, na) = split(a);
    let (hb, nb) = split(b);
    ha.cmp(hb).then(na.cmp(&nb)).then_with(|| a.cmp(b))
}

type Vars = Arc<[String]>;

fn make_vars<S: AsRef<str>>(names: &[S]) -> Vars {
    let mut v: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
    v.sort_by(|a, b| var_order(a, b));
    v.dedup();
    v.into()
}

fn union_vars(a: &Vars, b: &Vars) -> Vars {
    if Arc::ptr_eq(a, b) || a == b {
        return a.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    if a.is_empty() {
        return b.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match var_order(&a[i], &b[j]) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().cloned());
    out.into()
}

/// A sparse polynomial with exact rational coefficients and no zero terms.
#[derive(Clone)]
pub struct MPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    /// The zero polynomial over the empty universe.
    pub fn zero() -> MPoly {
        MPoly {
            vars: Arc::from(Vec::new()),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> MPoly {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> MPoly {
        MPoly::zero().with_constant(c)
    }

    /// The zero polynomial over the given universe.
    pub fn zero_in<S: AsRef<str>>(vars: &[S]) -> MPoly {
        MPoly {
            vars: make_vars(vars),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant_in<S: AsRef<str>>(vars: &[S], c: Rat) -> MPoly {
        MPoly::zero_in(vars).with_constant(c)
    }

    fn with_constant(mut self, c: Rat) -> MPoly {
        if !c.is_zero() {
            let m = Monomial::new(vec![0; self.vars.len()]);
            self.terms.insert(m, c);
        }
        self
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(name: &str) -> MPoly {
        let vars = make_vars(&[name]);
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::new(vec![1]), Rat::one());
        MPoly { vars, terms }
    }

    /// `name + shift`.
    pub fn shifted_var(name: &str, shift: impl Into<Rat>) -> MPoly {
        MPoly::var(name) + MPoly::constant(shift.into())
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs over `vars`.
    /// Exponent vectors must have one entry per variable in the given order;
    /// repeated monomials are summed.
    pub fn from_terms<S: AsRef<str>>(vars: &[S], terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> MPoly {
        let given: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        let sorted = make_vars(&given);
        assert_eq!(sorted.len(), given.len(), "duplicate variable names");
        let perm: Vec<usize> = sorted
            .iter()
            .map(|v| given.iter().position(|g| g == v).unwrap())
            .collect();
        let mut out = MPoly {
            vars: sorted,
            terms: BTreeMap::new(),
        };
        for (exps, c) in terms {
            assert_eq!(exps.len(), given.len(), "exponent vector length mismatch");
            let m: Vec<u32> = perm.iter().map(|&i| exps[i]).collect();
            out.add_term(Monomial::new(m), c);
        }
        out
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a polynomial with no non-constant terms.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: &str) -> Option<u32> {
        let i = self.var_index(var)?;
        self.terms.keys().map(|m| m.0[i]).max()
    }

    /// Coefficient of the monomial given as `(variable, exponent)` pairs.
    pub fn coeff(&self, powers: &[(&str, u32)]) -> Rat {
        let mut exps = vec![0u32; self.vars.len()];
        for &(v, e) in powers {
            match self.var_index(v) {
                Some(i) => exps[i] += e,
                None if e == 0 => {}
                None => return Rat::zero(),
            }
        }
        self.terms.get(&Monomial::new(exps)).cloned().unwrap_or_else(Rat::zero)
    }

    fn var_index(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    /// Variables that occur with a nonzero exponent in some term.
    pub fn used_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.0[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Re-expresses the polynomial over `universe ∪ self.vars`.
    pub fn embed<S: AsRef<str>>(&self, universe: &[S]) -> MPoly {
        self.embed_into(&union_vars(&self.vars, &make_vars(universe)))
    }

    /// Drops variables that never occur.
    pub fn trimmed(&self) -> MPoly {
        let used = self.used_vars();
        if used.len() == self.vars.len() {
            return self.clone();
        }
        let keep: Vec<usize> = used.iter().map(|v| self.var_index(v).unwrap()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                (
                    Monomial::new(keep.iter().map(|&i| m.0[i]).collect::<Vec<_>>()),
                    c.clone(),
                )
            })
            .collect();
        MPoly {
            vars: used.into(),
            terms,
        }
    }

    fn embed_into(&self, target: &Vars) -> MPoly {
        if Arc::ptr_eq(&self.vars, target) || self.vars[..] == target[..] {
            return MPoly {
                vars: target.clone(),
                terms: self.terms.clone(),
            };
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target
                    .iter()
                    .position(|t| t == v)
                    .expect("embedding target misses a variable")
            })
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; target.len()];
                for (i, &x) in m.0.iter().enumerate() {
                    e[map[i]] = x;
                }
                (Monomial::new(e), c.clone())
            })
            .collect();
        MPoly {
            vars: target.clone(),
            terms,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_universe(&self, other: &MPoly) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars[..] == other.vars[..]
    }

    fn accumulate(&mut self, rhs: &MPoly, negate: bool) {
        if !self.same_universe(rhs) {
            let u = union_vars(&self.vars, &rhs.vars);
            if u[..] != self.vars[..] {
                *self = self.embed_into(&u);
            }
            let r = rhs.embed_into(&u);
            return self.accumulate(&r, negate);
        }
        for (m, c) in &rhs.terms {
            let c = if negate { -c } else { c.clone() };
            self.add_term(m.clone(), c);
        }
    }

    fn mul_ref(&self, rhs: &MPoly) -> MPoly {
        if !self.same_universe(rhs) {
            let u = union_vars(&self.vars, &rhs.vars);
            return self.embed_into(&u).mul_ref(&rhs.embed_into(&u));
        }
        let mut out = MPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let e: Vec<u32> = ma.0.iter().zip(mb.0.iter()).map(|(a, b)| a + b).collect();
                out.add_term(Monomial::new(e), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// `self^e` by repeated squaring; `p^0 = 1`.
    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::constant_in(&self.vars, Rat::one());
        if e == 0 {
            return result;
        }
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = &base * &base;
        }
        result
    }

    /// Substitutes polynomials for variables. Unbound variables are kept.
    pub fn subst(&self, bindings: &[(&str, MPoly)]) -> MPoly {
        if bindings.is_empty() {
            return self.clone();
        }
        // One slot per variable: Some(image) when bound, else the variable itself.
        let images: Vec<MPoly> = self
            .vars
            .iter()
            .map(|v| {
                bindings
                    .iter()
                    .rev()
                    .find(|(name, _)| *name == v.as_str())
                    .map(|(_, p)| p.clone())
                    .unwrap_or_else(|| MPoly::var(v))
            })
            .collect();
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::one(), p.clone()]).collect();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out += &t;
        }
        // Keep unbound variables in the universe even if they cancel.
        let retained: Vec<&str> = self
            .vars
            .iter()
            .filter(|v| !bindings.iter().any(|(n, _)| *n == v.as_str()))
            .map(String::as_str)
            .collect();
        out.embed(&retained)
    }

    /// Substitutes rational values and returns the result.
    pub fn subst_values(&self, values: &[(&str, Rat)]) -> MPoly {
        let b: Vec<(&str, MPoly)> = values.iter().map(|(v, c)| (*v, MPoly::constant(c.clone()))).collect();
        self.subst(&b)
    }

    /// Evaluates at a point; `None` if some used variable is left unbound.
    pub fn eval(&self, values: &[(&str, Rat)]) -> Option<Rat> {
        self.subst_values(values).as_constant()
    }

    /// Formal partial derivative.
    pub fn diff(&self, var: &str) -> MPoly {
        let mut out = MPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        let Some(i) = self.var_index(var) else {
            return out;
        };
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = m.0.to_vec();
            n[i] -= 1;
            out.add_term(Monomial::new(n), c * Rat::from(e));
        }
        out
    }

    /// Renders in graded-lexicographic order, e.g. `x1^2*x2 - 1/2*x1 + 2/3`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let a = c.abs();
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(m.0.iter())
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&a.to_string());
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

/// `∏_{i=0}^{q-1} (var + i)`; the coefficient of `var^l` is the unsigned
/// Stirling number of the first kind `s(q, l)`.
pub fn rising_product(q: u32, var: &str) -> MPoly {
    (0..q).fold(MPoly::constant_in(&[var], Rat::one()), |acc, i| {
        &acc * &MPoly::shifted_var(var, i)
    })
}

impl PartialEq for MPoly {
    fn eq(&self, other: &MPoly) -> bool {
        if self.same_universe(other) {
            return self.terms == other.terms;
        }
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let u = union_vars(&self.vars, &other.vars);
        self.embed_into(&u).terms == other.embed_into(&u).terms
    }
}

impl Eq for MPoly {}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.vars.join(","), self.render())
    }
}

impl From<Rat> for MPoly {
    fn from(c: Rat) -> MPoly {
        MPoly::constant(c)
    }
}

impl From<i64> for MPoly {
    fn from(c: i64) -> MPoly {
        MPoly::constant(Rat::from(c))
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        self.accumulate(rhs, false);
    }
}

impl AddAssign<MPoly> for MPoly {
    fn add_assign(&mut self, rhs: MPoly) {
        self.accumulate(&rhs, false);
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        self.accumulate(rhs, true);
    }
}

impl SubAssign<MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: MPoly) {
        self.accumulate(&rhs, true);
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rat::one())
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $trait<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                let ($a, $b) = (&self, &rhs);
                $body
            }
        }
        impl $trait<&MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                let ($a, $b) = (&self, rhs);
                $body
            }
        }
        impl $trait<MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                let ($a, $b) = (self, &rhs);
                $body
            }
        }
    };
}

poly_binop!(Add, add, |a, b| {
    let mut out = a.clone();
    out.accumulate(b, false);
    out
});
poly_binop!(Sub, sub, |a, b| {
    let mut out = a.clone();
    out.accumulate(b, true);
    out
});
poly_binop!(Mul, mul, |a, b| a.mul_ref(b));

impl Mul<&Rat> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &Rat) -> MPoly {
        self.scale(rhs)
    }
}

impl Mul<Rat> for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: Rat) -> MPoly {
        self.scale(&rhs)
    }
}

impl Sum for MPoly {
    fn sum<I: Iterator<Item = MPoly>>(iter: I) -> MPoly {
        iter.fold(MPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}
