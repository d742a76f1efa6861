//! Sparse multivariate Laurent polynomials with rational coefficients.
//!
//! Parameters such as `alpha` are ordinary variables, so `1/alpha` is the
//! monomial `alpha^-1`. Terms are kept in a `BTreeMap` keyed by exponent
//! vector, which fixes the lexicographic term order used for display and
//! serialization.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{int, rat_pow, Rat};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, Rat>,
}

/// One serialized term: `{"c": "p/q", "e": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermRecord {
    #[serde(with = "super::rat::serde_rat")]
    pub c: Rat,
    pub e: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero(vars: &[&str]) -> Self {
        Self {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_like(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Rat) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn monomial(vars: &[&str], exps: &[i64], c: Rat) -> Self {
        assert_eq!(vars.len(), exps.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        p.add_term(exps.to_vec(), c);
        p
    }

    /// The variable `name` as a polynomial.
    pub fn var(vars: &[&str], name: &str) -> Self {
        let idx = vars
            .iter()
            .position(|v| *v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        Self::monomial(vars, &e, Rat::one())
    }

    /// Build from `(coefficient, exponents)` pairs, merging duplicates.
    pub fn from_terms<I>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (Rat, Vec<i64>)>,
    {
        let mut p = Self::zero(vars);
        for (c, e) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<i64>, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[i64]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Single term `(coefficient, exponents)`, if this is a monomial.
    pub fn as_monomial(&self) -> Option<(&Rat, &Vec<i64>)> {
        if self.is_monomial() {
            self.terms.iter().next().map(|(e, c)| (c, e))
        } else {
            None
        }
    }

    /// Inverse in the Laurent ring; only monomials are units.
    pub fn inverse(&self) -> Option<Self> {
        let (c, e) = self.as_monomial()?;
        let e: Vec<i64> = e.iter().map(|x| -x).collect();
        let mut out = self.zero_like();
        out.add_term(e, c.recip());
        Some(out)
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.vars.len() != other.vars.len() {
            return Err(Error::ArityMismatch {
                left: self.vars.len(),
                right: other.vars.len(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut acc: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(Rat::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Self {
            vars: self.vars.clone(),
            terms: acc,
        })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return self.zero_like();
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiply by a monomial with coefficient 1.
    pub fn shift(&self, exps: &[i64]) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(&self.var_names(), Rat::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Replace every variable by a unit monomial image (coefficient ±1).
    /// Images must live in a common variable context, which becomes the
    /// context of the result.
    pub fn substitute_monomials(&self, images: &[LaurentPoly]) -> Result<Self> {
        if images.len() != self.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: images.len(),
            });
        }
        let target_vars = images
            .first()
            .map(|i| i.var_names())
            .unwrap_or_else(|| self.var_names());
        let mut monos = Vec::with_capacity(images.len());
        for (index, img) in images.iter().enumerate() {
            if img.arity() != target_vars.len() {
                return Err(Error::ArityMismatch {
                    left: target_vars.len(),
                    right: img.arity(),
                });
            }
            match img.as_monomial() {
                Some((c, e)) if c.abs().is_one() => monos.push((c.clone(), e.clone())),
                _ => {
                    return Err(Error::NonMonomialImage {
                        index,
                        image: img.to_string(),
                    })
                }
            }
        }
        let mut out = Self::zero(&target_vars);
        for (e, c) in &self.terms {
            let mut exps = vec![0i64; target_vars.len()];
            let mut coeff = c.clone();
            for (k, &ek) in e.iter().enumerate() {
                let (sign, img) = &monos[k];
                coeff *= rat_pow(sign, ek);
                for (slot, x) in exps.iter_mut().zip(img) {
                    *slot += x * ek;
                }
            }
            out.add_term(exps, coeff);
        }
        Ok(out)
    }

    /// Evaluate at rational values; fails on a negative power of zero.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: point.len(),
            });
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k < 0 && x.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                t *= rat_pow(x, k);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Specialize variable `idx` to `value`, dropping it from the context.
    pub fn specialize(&self, idx: usize, value: &Rat) -> Result<Self> {
        let vars: Vec<&str> = self
            .var_names()
            .into_iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, v)| v)
            .collect();
        let mut out = Self::zero(&vars);
        for (e, c) in &self.terms {
            if e[idx] < 0 && value.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let mut rest = e.clone();
            let k = rest.remove(idx);
            out.add_term(rest, c * rat_pow(value, k));
        }
        Ok(out)
    }

    /// `∂f/∂x_idx`.
    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            if e[idx] != 0 {
                let mut ne = e.clone();
                ne[idx] -= 1;
                out.add_term(ne, c * int(e[idx]));
            }
        }
        out
    }

    /// `x_idx · ∂f/∂x_idx`.
    pub fn log_derivative(&self, idx: usize) -> Self {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * int(e[idx]));
        }
        out
    }

    /// Rename variables without touching exponents.
    pub fn renamed(&self, vars: &[&str]) -> Result<Self> {
        if vars.len() != self.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: vars.len(),
            });
        }
        Ok(Self {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: self.terms.clone(),
        })
    }

    /// Re-embed into a new context; `map[i]` is the target index of variable `i`.
    pub fn embed(&self, vars: &[&str], map: &[usize]) -> Self {
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut m = vec![i64::MAX; self.arity()];
        for e in self.terms.keys() {
            for (s, &x) in m.iter_mut().zip(e) {
                *s = (*s).min(x);
            }
        }
        if self.is_zero() {
            m.iter_mut().for_each(|x| *x = 0);
        }
        m
    }

    /// Divide out the monomial content, scale to primitive integer
    /// coefficients, and make the lexicographically greatest term positive.
    /// Returns the normalized polynomial; units only change the zero set off
    /// the coordinate hyperplanes.
    pub fn normalize_unit(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let m: Vec<i64> = self.min_exponents().iter().map(|x| -x).collect();
        let shifted = self.shift(&m);
        let lcm = shifted
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        let g = shifted.terms.values().fold(BigInt::zero(), |acc, c| {
            num_integer::gcd(acc, (c * Rat::from_integer(lcm.clone())).to_integer())
        });
        let mut scale = Rat::new(lcm, g);
        if shifted.terms.values().next_back().unwrap().is_negative() {
            scale = -scale;
        }
        shifted.scale(&scale)
    }

    /// View as a univariate polynomial in variable `idx`; all other
    /// exponents must be zero and the exponent of `idx` nonnegative.
    pub fn to_unipoly(&self, idx: usize) -> Option<UniPoly> {
        let mut coeffs: Vec<Rat> = Vec::new();
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &x)| i != idx && x != 0) || e[idx] < 0 {
                return None;
            }
            let k = e[idx] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rat::zero());
            }
            coeffs[k] += c;
        }
        Some(UniPoly::from_coeffs(coeffs))
    }

    /// Exponent vectors projected onto the given variable indices.
    pub fn support(&self, indices: &[usize]) -> Vec<Vec<i64>> {
        let mut pts: Vec<Vec<i64>> = self
            .terms
            .keys()
            .map(|e| indices.iter().map(|&i| e[i]).collect())
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(e, c)| TermRecord {
                c: c.clone(),
                e: e.clone(),
            })
            .collect()
    }

    pub fn from_records(vars: &[&str], records: &[TermRecord]) -> Result<Self> {
        let mut p = Self::zero(vars);
        for r in records {
            if r.e.len() != vars.len() {
                return Err(Error::ArityMismatch {
                    left: vars.len(),
                    right: r.e.len(),
                });
            }
            p.add_term(r.e.clone(), r.c.clone());
        }
        Ok(p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_records()).expect("records serialize")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k != 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("variable contexts must agree")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(&-rhs).expect("variable contexts must agree")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("variable contexts must agree")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rat::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Term-by-term identity of canonical forms.
pub trait PolyIdentity {
    fn identical(&self, other: &Self) -> Result<bool>;
}

impl PolyIdentity for UniPoly {
    fn identical(&self, other: &Self) -> Result<bool> {
        Ok(self == other)
    }
}

impl PolyIdentity for LaurentPoly {
    fn identical(&self, other: &Self) -> Result<bool> {
        self.check_ctx(other)?;
        Ok(self.terms == other.terms)
    }
}

pub fn poly_identity_check<P: PolyIdentity>(lhs: &P, rhs: &P) -> Result<bool> {
    lhs.identical(rhs)
}
