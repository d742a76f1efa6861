//! Operators in `D = α·d/dα` with Laurent coefficients in `α`.
//!
//! An operator is stored as `Σ_e α^e · P_e(D)`. Composition uses
//! `D∘α^k = α^k∘(D + k)`, and `A∘B` applies `B` first.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, LaurentPoly, Rat, TermRecord, UniPoly};

pub const ALPHA: &str = "alpha";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreOp {
    /// α-exponent → polynomial in D.
    parts: BTreeMap<i64, UniPoly>,
}

/// Wire form of one `c_k(α)·D^k` term.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OreTerm {
    #[serde(rename = "D")]
    pub d: usize,
    pub coeff: Vec<TermRecord>,
}

impl OreOp {
    pub fn zero() -> Self {
        Self {
            parts: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_part(0, UniPoly::one())
    }

    /// The operator `D`.
    pub fn d() -> Self {
        Self::from_part(0, UniPoly::x())
    }

    /// Multiplication by `α^e`.
    pub fn alpha_pow(e: i64) -> Self {
        Self::from_part(e, UniPoly::one())
    }

    /// `α^e · P(D)`.
    pub fn from_part(e: i64, p: UniPoly) -> Self {
        let mut parts = BTreeMap::new();
        if !p.is_zero() {
            parts.insert(e, p);
        }
        Self { parts }
    }

    /// `c · ∏ (D - r)` over the given roots.
    pub fn from_roots(e: i64, c: &Rat, roots: &[Rat]) -> Self {
        Self::from_part(e, UniPoly::from_roots(roots).scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (&i64, &UniPoly)> {
        self.parts.iter()
    }

    pub fn part(&self, e: i64) -> UniPoly {
        self.parts.get(&e).cloned().unwrap_or_else(UniPoly::zero)
    }

    /// Order in `D`; zero for the zero operator.
    pub fn order(&self) -> usize {
        self.parts.values().filter_map(UniPoly::degree).max().unwrap_or(0)
    }

    pub fn alpha_range(&self) -> Option<(i64, i64)> {
        Some((*self.parts.keys().next()?, *self.parts.keys().next_back()?))
    }

    /// Coefficient `c_k(α)` of `D^k`, with coefficients written on the left.
    pub fn coeff(&self, k: usize) -> LaurentPoly {
        LaurentPoly::from_terms(
            &[ALPHA],
            self.parts
                .iter()
                .map(|(e, p)| (p.coeff(k), vec![*e]))
                .filter(|(c, _)| !c.is_zero()),
        )
    }

    /// Build from left coefficients `c_k(α)` of `D^k`.
    pub fn from_coeffs(coeffs: &[LaurentPoly]) -> Result<Self> {
        let mut parts: BTreeMap<i64, Vec<Rat>> = BTreeMap::new();
        for (k, c) in coeffs.iter().enumerate() {
            if c.arity() != 1 {
                return Err(Error::ArityMismatch {
                    left: 1,
                    right: c.arity(),
                });
            }
            for (e, v) in c.terms() {
                let slot = parts.entry(e[0]).or_default();
                if slot.len() <= k {
                    slot.resize(k + 1, Rat::zero());
                }
                slot[k] += v;
            }
        }
        let mut out = Self::zero();
        for (e, cs) in parts {
            out = out.add(&Self::from_part(e, UniPoly::from_coeffs(cs)));
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut parts = self.parts.clone();
        for (e, p) in &other.parts {
            let s = &parts.get(e).cloned().unwrap_or_else(UniPoly::zero) + p;
            if s.is_zero() {
                parts.remove(e);
            } else {
                parts.insert(*e, s);
            }
        }
        Self { parts }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            parts: self.parts.iter().map(|(e, p)| (*e, p.scale(c))).collect(),
        }
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e, p) in &self.parts {
            for (f, q) in &other.parts {
                let shifted = p.shift(&int(*f));
                out = out.add(&Self::from_part(e + f, &shifted * q));
            }
        }
        out
    }

    /// Apply to `Σ s_j α^j` and return the coefficients of `α^0 … α^{K-1}`.
    pub fn apply_to_series(&self, series: &[Rat], k: usize) -> Result<Vec<Rat>> {
        let emin = self.alpha_range().map_or(0, |(lo, _)| lo.min(0));
        let needed = (k as i64 - emin) as usize;
        if needed > series.len() {
            return Err(Error::SeriesTooShort {
                available: series.len(),
                requested: needed,
            });
        }
        let mut out = vec![Rat::zero(); k];
        for (m, slot) in out.iter_mut().enumerate() {
            for (e, p) in &self.parts {
                let j = m as i64 - e;
                if j < 0 {
                    continue;
                }
                let s = &series[j as usize];
                if !s.is_zero() {
                    *slot += p.eval(&int(j)) * s;
                }
            }
        }
        Ok(out)
    }

    /// Rewrite `Σ c_k(α) D^k` as `Σ p_i(α) (d/dα)^i` using `D^k = Σ S(k,i) α^i ∂^i`.
    pub fn to_derivative_form(&self) -> DerivativeForm {
        let n = self.order();
        let stirling = stirling2_table(n);
        let vars = [ALPHA];
        let mut coeffs = vec![LaurentPoly::zero(&vars); n + 1];
        for k in 0..=n {
            let ck = self.coeff(k);
            if ck.is_zero() {
                continue;
            }
            for (i, slot) in coeffs.iter_mut().enumerate().take(k + 1) {
                let s = &stirling[k][i];
                if s.is_zero() {
                    continue;
                }
                let term = ck.shift(&[i as i64]).scale(&Rat::from_integer(s.clone()));
                *slot = &*slot + &term;
            }
        }
        DerivativeForm { coeffs }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<OreTerm> = (0..=self.order())
            .rev()
            .map(|k| (k, self.coeff(k)))
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| OreTerm {
                d: k,
                coeff: c.to_records(),
            })
            .collect();
        serde_json::to_value(terms).expect("operator serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let terms: Vec<OreTerm> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let n = terms.iter().map(|t| t.d).max().unwrap_or(0);
        let mut coeffs = vec![LaurentPoly::zero(&[ALPHA]); n + 1];
        for t in terms {
            let c = LaurentPoly::from_records(&[ALPHA], &t.coeff)?;
            coeffs[t.d] = &coeffs[t.d] + &c;
        }
        Self::from_coeffs(&coeffs)
    }
}

impl fmt::Display for OreOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, p) in self.parts.iter() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let poly = p.fmt_var("D");
            match e {
                0 => write!(f, "({poly})")?,
                1 => write!(f, "alpha*({poly})")?,
                _ => write!(f, "alpha^{e}*({poly})")?,
            }
        }
        Ok(())
    }
}

/// Stirling numbers of the second kind `S(k, i)` for `k, i ≤ n`.
pub fn stirling2_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); n + 1]; n + 1];
    s[0][0] = BigInt::one();
    for k in 1..=n {
        for i in 1..=k {
            s[k][i] = &s[k - 1][i - 1] + BigInt::from(i) * &s[k - 1][i];
        }
    }
    s
}

/// `Σ p_i(α) (d/dα)^i` with Laurent coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeForm {
    pub coeffs: Vec<LaurentPoly>,
}

/// Where the leading coefficient of a derivative form vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingLocus {
    /// Multiplicity of `α = 0` as a root.
    pub zero_multiplicity: u32,
    /// Distinct nonzero rational roots found by splitting off linear factors.
    pub rational_roots: Vec<Rat>,
    /// Squarefree part left after removing the roots above.
    pub residual: UniPoly,
}

impl DerivativeForm {
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &LaurentPoly {
        self.coeffs.last().expect("nonempty form")
    }

    /// Companion data: `y^(n) = Σ_{k<n} (num_k / den) y^(k)` with `num_k = -p_k`
    /// and `den = p_n`, all as Laurent polynomials.
    pub fn companion(&self) -> (Vec<LaurentPoly>, LaurentPoly) {
        let n = self.order();
        let num = self.coeffs[..n].iter().map(|p| -p).collect();
        (num, self.leading().clone())
    }

    /// Zeros of the leading coefficient on the α-line, excluding `α = ∞`.
    pub fn leading_locus(&self) -> LeadingLocus {
        let lead = self.leading();
        let shift = lead.min_exponents()[0];
        let poly = lead
            .shift(&[-shift])
            .to_unipoly(0)
            .expect("univariate after shift");
        let (zero_mult, rest) = poly.strip_zero_root();
        let zero_multiplicity = zero_mult as u32 + shift.max(0) as u32;
        let sq = if rest.degree().unwrap_or(0) == 0 {
            rest.clone()
        } else {
            rest.exact_div(&rest.gcd(&rest.derivative())).expect("gcd divides")
        };
        let mut residual = sq.monic();
        let mut rational_roots = Vec::new();
        if residual.degree() == Some(1) {
            rational_roots.push(-residual.coeff(0));
            residual = UniPoly::one();
        }
        LeadingLocus {
            zero_multiplicity,
            rational_roots,
            residual,
        }
    }
}
