//! Gamma-list calculus and the associated hypergeometric operators.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rat::{factorial, serde_rat, serde_rat_vec};
use crate::exact::{cyclotomic, int, rat, Rat, UniPoly};
use crate::ore::OreOp;

/// A balanced integer vector `γ` with entries summing to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct GammaList {
    entries: Vec<i64>,
}

impl GammaList {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.iter().any(|&g| g == 0) {
            return Err(Error::InvalidGamma("entries must be nonzero".into()));
        }
        if entries.iter().sum::<i64>() != 0 {
            return Err(Error::InvalidGamma("entries must sum to zero".into()));
        }
        if !entries.iter().any(|&g| g > 0) || !entries.iter().any(|&g| g < 0) {
            return Err(Error::InvalidGamma(
                "need at least one positive and one negative entry".into(),
            ));
        }
        Ok(Self { entries })
    }

    /// The list `(-18, -1, 2, 3, 5, 9)`.
    pub fn standard() -> Self {
        Self::new(vec![-18, -1, 2, 3, 5, 9]).expect("balanced")
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn positive(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.iter().copied().filter(|&g| g > 0)
    }

    pub fn negative(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.iter().copied().filter(|&g| g < 0)
    }

    /// `Σ_{γ>0} γ`, the order of the reducible operator.
    pub fn degree(&self) -> usize {
        self.positive().sum::<i64>() as usize
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl TryFrom<Vec<i64>> for GammaList {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<GammaList> for Vec<i64> {
    fn from(g: GammaList) -> Self {
        g.entries
    }
}

impl FromStr for GammaList {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let cleaned = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']'])
            .replace('\u{2212}', "-");
        let entries = cleaned
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad gamma entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

impl fmt::Display for GammaList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `A_j = ∏_{γ<0} (|γ| j)! / ∏_{γ>0} (γ j)!`.
pub fn coefficient(g: &GammaList, j: u64) -> Rat {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for &x in g.entries() {
        let f = factorial(x.unsigned_abs() * j);
        if x < 0 {
            num *= f;
        } else {
            den *= f;
        }
    }
    Rat::new(num, den)
}

/// `A_0, …, A_{n-1}`, built with the two-term recursion.
pub fn series(g: &GammaList, n: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(n);
    let mut a = Rat::one();
    for j in 0..n as u64 {
        if j > 0 {
            a = &a * coefficient_ratio(g, j - 1);
        }
        out.push(a.clone());
    }
    out
}

/// `A_{j+1} / A_j` as a product of rising factors.
pub fn coefficient_ratio(g: &GammaList, j: u64) -> Rat {
    let mut r = Rat::one();
    for &x in g.entries() {
        let n = x.unsigned_abs();
        for k in 1..=n {
            let f = int((n * j + k) as i64);
            if x < 0 {
                r *= f;
            } else {
                r /= f;
            }
        }
    }
    r
}

/// `∏ |γ_i|^{γ_i}`.
pub fn singular_value(g: &GammaList) -> Rat {
    g.entries()
        .iter()
        .fold(Rat::one(), |acc, &x| acc * crate::exact::rat::rat_pow(&int(x.abs()), x))
}

/// Local exponents after cancelling the common part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentData {
    /// Exponents at `α = 0`, in `[0, 1)`.
    #[serde(with = "serde_rat_vec")]
    pub exps0: Vec<Rat>,
    /// Exponents at `α = ∞`, in `(0, 1]`.
    #[serde(rename = "expsInf", with = "serde_rat_vec")]
    pub exps_inf: Vec<Rat>,
    pub order: usize,
    #[serde(with = "serde_rat")]
    pub alpha0: Rat,
}

fn fractions(entries: impl Iterator<Item = i64>) -> Vec<Rat> {
    let mut out: Vec<Rat> = entries
        .flat_map(|g| {
            let n = g.abs();
            (0..n).map(move |k| rat(k, n))
        })
        .collect();
    out.sort();
    out
}

/// `(S_0, S_∞)` before cancellation, sorted.
pub fn raw_exponents(g: &GammaList) -> (Vec<Rat>, Vec<Rat>) {
    (fractions(g.positive()), fractions(g.negative()))
}

/// Split two sorted multisets into (only-left, only-right, common).
fn multiset_split(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let (mut i, mut j) = (0, 0);
    let (mut la, mut lb, mut common) = (Vec::new(), Vec::new(), Vec::new());
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            la.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            lb.push(b[j].clone());
            j += 1;
        } else {
            common.push(a[i].clone());
            i += 1;
            j += 1;
        }
    }
    (la, lb, common)
}

/// The multiset `S_0 ∩ S_∞` removed by the reduction.
pub fn cancelled_exponents(g: &GammaList) -> Vec<Rat> {
    let (s0, sinf) = raw_exponents(g);
    multiset_split(&s0, &sinf).2
}

/// Map `0 ↦ 1` on the ∞ side.
fn shift_zero(c: &Rat) -> Rat {
    if c.is_zero() {
        Rat::one()
    } else {
        c.clone()
    }
}

pub fn reduced_exponents(g: &GammaList) -> ExponentData {
    let (s0, sinf) = raw_exponents(g);
    let (exps0, rest, _) = multiset_split(&s0, &sinf);
    let mut exps_inf: Vec<Rat> = rest.iter().map(shift_zero).collect();
    exps_inf.sort();
    ExponentData {
        order: exps0.len(),
        exps0,
        exps_inf,
        alpha0: singular_value(g),
    }
}

/// `α₀·∏(D - b) - α·∏(D + a)` over the reduced exponents.
pub fn build_irreducible_operator(g: &GammaList) -> OreOp {
    let e = reduced_exponents(g);
    let neg_a: Vec<Rat> = e.exps_inf.iter().map(|a| -a).collect();
    OreOp::from_roots(0, &e.alpha0, &e.exps0).sub(&OreOp::from_roots(1, &Rat::one(), &neg_a))
}

/// `α₀·∏_{γ>0}∏_{k<γ}(D - k/γ) - α·∏_{γ<0}∏_{k=1}^{|γ|}(D + k/|γ|)`.
pub fn build_reducible_operator(g: &GammaList) -> OreOp {
    let (s0, sinf) = raw_exponents(g);
    let neg_a: Vec<Rat> = sinf.iter().map(|c| -shift_zero(c)).collect();
    OreOp::from_roots(0, &singular_value(g), &s0).sub(&OreOp::from_roots(1, &Rat::one(), &neg_a))
}

/// `G = ∏(D - b)` over the cancelled exponents; `G∘H` is the reducible operator.
pub fn build_cofactor(g: &GammaList) -> OreOp {
    OreOp::from_roots(0, &Rat::one(), &cancelled_exponents(g))
}

/// Cyclotomic factorization of `∏ (t - e^{2πi c})` over a multiset of
/// exponents, as `n ↦ multiplicity of φ_n`.
pub fn cyclotomic_factors(exps: &[Rat]) -> Result<BTreeMap<u64, u32>> {
    let mut by_class: BTreeMap<u64, BTreeMap<BigInt, u32>> = BTreeMap::new();
    for c in exps {
        let mut r = c.clone() - Rat::from_integer(c.floor().to_integer());
        if r.is_negative() {
            r += Rat::one();
        }
        let n = r.denom().to_u64().ok_or_else(|| Error::InvalidGamma("denominator too large".into()))?;
        *by_class.entry(n).or_default().entry(r.numer().clone()).or_default() += 1;
    }
    let mut out = BTreeMap::new();
    for (n, nums) in by_class {
        let orbit = (1..=n).filter(|k| k.gcd(&n) == 1).count();
        let mults: Vec<u32> = nums.values().copied().collect();
        let m = mults[0];
        if nums.len() != orbit || mults.iter().any(|&x| x != m) {
            return Err(Error::InvalidGamma(format!(
                "exponents with denominator {n} do not form full primitive orbits"
            )));
        }
        out.insert(n, m);
    }
    Ok(out)
}

pub fn cyclotomic_product(factors: &BTreeMap<u64, u32>) -> Result<UniPoly> {
    let mut p = UniPoly::one();
    for (&n, &m) in factors {
        p = &p * &cyclotomic(n as usize)?.pow(m);
    }
    Ok(p)
}

/// Cyclotomic data of the local monodromy at `0` and `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BhRatio {
    pub q0: BTreeMap<u64, u32>,
    pub q_inf: BTreeMap<u64, u32>,
    pub holds: bool,
}

impl BhRatio {
    pub fn describe(factors: &BTreeMap<u64, u32>) -> String {
        factors
            .iter()
            .map(|(n, m)| if *m == 1 { format!("phi{n}") } else { format!("phi{n}^{m}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

pub fn bh_ratio(g: &GammaList) -> Result<BhRatio> {
    let e = reduced_exponents(g);
    let q0 = cyclotomic_factors(&e.exps0)?;
    let q_inf = cyclotomic_factors(&e.exps_inf)?;
    let lhs = &cyclotomic_product(&q_inf)?
        * &g.positive().fold(UniPoly::one(), |acc, n| &acc * &crate::exact::t_pow_minus_one(n as usize));
    let rhs = &cyclotomic_product(&q0)?
        * &g.negative().fold(UniPoly::one(), |acc, n| {
            &acc * &crate::exact::t_pow_minus_one(n.unsigned_abs() as usize)
        });
    Ok(BhRatio {
        q0,
        q_inf,
        holds: lhs == rhs,
    })
}

/// `q_∞·∏_{γ>0}(t^γ - 1) = q_0·∏_{γ<0}(t^{|γ|} - 1)` as an exact identity.
pub fn bh_ratio_check(g: &GammaList) -> Result<bool> {
    Ok(bh_ratio(g)?.holds)
}

/// First `j ≤ jmax` with `A_j` not an integer, if any.
pub fn integrality_scan(g: &GammaList, jmax: u64) -> Option<u64> {
    let s = series(g, jmax as usize + 1);
    s.iter().position(|a| !a.is_integer()).map(|j| j as u64)
}

/// `A_{j+1}/A_j` against the ratio of the two exponent products, `j ≤ jmax`.
pub fn recursion_check(g: &GammaList, jmax: u64) -> bool {
    let (s0, sinf) = raw_exponents(g);
    let alpha0 = singular_value(g);
    (0..=jmax).all(|j| {
        let jr = int(j as i64);
        let top = sinf.iter().fold(Rat::one(), |acc, c| acc * (&jr + shift_zero(c)));
        let bottom = s0.iter().fold(Rat::one(), |acc, b| acc * (&jr + Rat::one() - b));
        coefficient(g, j + 1) / coefficient(g, j) == top / (&alpha0 * bottom)
    })
}
