//! Plane curve models: discriminant, ramification cover, closures, genera.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::quadform::{QuadForm3, BASE_VARS};
use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, Rat, UniPoly};
use crate::lattice::{hull_and_facets, lattice_points, PointConfig};

/// A Laurent polynomial in `(α, u1, u2)`. `lattice_scale[i]` is the index of
/// the exponent lattice of `u_{i+1}` inside the lattice it covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurveModel {
    pub f: LaurentPoly,
    pub lattice_scale: Vec<u32>,
}

impl PlaneCurveModel {
    pub fn new(f: LaurentPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroDeterminant);
        }
        if f.arity() != BASE_VARS.len() {
            return Err(Error::ArityMismatch {
                left: BASE_VARS.len(),
                right: f.arity(),
            });
        }
        Ok(Self {
            f,
            lattice_scale: vec![1, 1],
        })
    }

    /// A unit has no zeros on the torus.
    pub fn is_empty_curve(&self) -> bool {
        self.f.is_monomial()
    }
}

/// Remove monomial content, make coefficients primitive integers, and fix the
/// sign by the `u2^3` coefficient (or the lexicographically greatest term).
pub fn normalize_curve(f: &LaurentPoly) -> LaurentPoly {
    let n = f.normalize_unit();
    let key: Vec<i64> = {
        let mut e = vec![0i64; n.arity()];
        if let Some(i) = n.var_index("u2") {
            e[i] = 3;
        }
        e
    };
    let c = n.coeff(&key);
    if c.is_negative() {
        -&n
    } else {
        n
    }
}

/// `det Q'` normalized by a unit.
pub fn discriminant(q: &QuadForm3) -> Result<PlaneCurveModel> {
    let d = q.det();
    if d.is_zero() {
        return Err(Error::ZeroDeterminant);
    }
    PlaneCurveModel::new(normalize_curve(&d))
}

/// The ramification cover defined by the `(i, j)` minor, which must be
/// `-α^a·u_k` for a single torus variable; substitutes `u_k ↦ α^{-a}·u_k²`.
#[derive(Clone, Debug)]
pub struct DoubleCover {
    pub model: PlaneCurveModel,
    pub minor: LaurentPoly,
    /// Images of `(α, u1, u2)`.
    pub images: Vec<LaurentPoly>,
    /// `f_cover = f_base ∘ images` exactly.
    pub pullback_identity: bool,
}

pub fn double_cover(q: &QuadForm3, base: &PlaneCurveModel, minor: (usize, usize)) -> Result<DoubleCover> {
    let (i, j) = minor;
    let m = &(q.get(i, i) * q.get(j, j)) - &(q.get(i, j) * q.get(i, j));
    if m.is_zero() {
        return Err(Error::VanishingMinor);
    }
    let neg = -&m;
    let shape_err = || Error::InvalidArgument(format!("minor {m} is not of the form -alpha^a*u_k"));
    let (c, e) = neg.as_monomial().ok_or_else(shape_err)?;
    if !c.is_one() {
        return Err(shape_err());
    }
    let u_slots: Vec<usize> = (1..3).filter(|&k| e[k] != 0).collect();
    if u_slots.len() != 1 || e[u_slots[0]] != 1 {
        return Err(shape_err());
    }
    let k = u_slots[0];
    let a = e[0];
    let mut images: Vec<LaurentPoly> = (0..3)
        .map(|v| {
            let mut ex = vec![0i64; 3];
            ex[v] = 1;
            LaurentPoly::monomial(&BASE_VARS, &ex, Rat::one())
        })
        .collect();
    let mut ex = vec![0i64; 3];
    ex[0] = -a;
    ex[k] = 2;
    images[k] = LaurentPoly::monomial(&BASE_VARS, &ex, Rat::one());
    let pulled = base.f.substitute_monomials(&images)?;
    let f = normalize_curve(&pulled);
    let mut lattice_scale = base.lattice_scale.clone();
    lattice_scale[k - 1] *= 2;
    Ok(DoubleCover {
        pullback_identity: f == pulled,
        model: PlaneCurveModel { f, lattice_scale },
        minor: m,
        images,
    })
}

/// A weighted homogeneous polynomial; variables are `alpha` then the
/// homogeneous coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedCurve {
    pub f: LaurentPoly,
    pub weights: Vec<u32>,
    pub degree: u32,
}

impl WeightedCurve {
    pub fn weighted_degrees(&self) -> Vec<i64> {
        self.f
            .terms()
            .map(|(e, _)| e[1..].iter().zip(&self.weights).map(|(x, w)| x * *w as i64).sum())
            .collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weighted_degrees().iter().all(|&d| d == self.degree as i64)
    }

    /// Value at a point of the weighted space, with α fixed.
    pub fn eval(&self, alpha: &Rat, x: &[Rat]) -> Result<Rat> {
        let mut p = vec![alpha.clone()];
        p.extend_from_slice(x);
        self.f.eval(&p)
    }
}

/// Weighted homogenization: `weights[0]` is the new variable, `weights[1..]`
/// those of `u1, u2`; `names` label the three homogeneous coordinates.
pub fn projective_closure(c: &PlaneCurveModel, weights: &[u32], names: &[&str]) -> Result<WeightedCurve> {
    if weights.len() != 3 || names.len() != 3 || weights.contains(&0) {
        return Err(Error::InvalidArgument("need three positive weights and names".into()));
    }
    let mins = c.f.min_exponents();
    let f = c.f.shift(&[0, -mins[1], -mins[2]]);
    let wdeg = |e: &[i64]| e[1] * weights[1] as i64 + e[2] * weights[2] as i64;
    let d = f.terms().map(|(e, _)| wdeg(e)).max().unwrap_or(0);
    let mut vars = vec!["alpha"];
    vars.extend_from_slice(names);
    let mut terms = Vec::new();
    for (e, coef) in f.terms() {
        let gap = d - wdeg(e);
        if gap % weights[0] as i64 != 0 {
            return Err(Error::NoCommonDegree(format!(
                "term with exponents {e:?} misses degree {d} modulo {}",
                weights[0]
            )));
        }
        terms.push((coef.clone(), vec![e[0], gap / weights[0] as i64, e[1], e[2]]));
    }
    let out = WeightedCurve {
        f: LaurentPoly::from_terms(&vars, terms),
        weights: weights.to_vec(),
        degree: d as u32,
    };
    debug_assert!(out.is_homogeneous());
    Ok(out)
}

/// Exponents of `(u1, u2)` scaled into integer coordinates.
fn support_2d(c: &PlaneCurveModel) -> Vec<Vec<i64>> {
    c.f.support(&[1, 2])
}

/// Interior lattice points of the Newton polygon in the model's exponent
/// lattice.
pub fn genus_from_polytope(c: &PlaneCurveModel) -> Result<u64> {
    let pts = support_2d(c);
    let p = hull_and_facets(&PointConfig::new(pts)?)?;
    if p.dim < 2 {
        return Err(Error::DegeneratePolygon(p.dim));
    }
    Ok(lattice_points(&p, 1, true)?.len() as u64)
}

/// Fixed loci of `x1 ↦ -x1` on a curve in `P(1,1,3)` with coordinates
/// `(x0, x1, y)`.
#[derive(Clone, Debug, Serialize)]
pub struct FixedPoints {
    /// Equation on the line `x1 = 0`.
    pub line_equation: String,
    /// Distinct points on `x1 = 0` with `x0 ≠ 0`.
    pub line_points: usize,
    /// Whether `(0:0:1)` lies on the curve.
    pub line_point_at_infinity: bool,
    /// Whether `(0:1:0)` lies on the curve.
    pub extra_point: bool,
    pub total: usize,
}

pub fn involution_fixed_points(w: &WeightedCurve, alpha: &Rat) -> Result<FixedPoints> {
    if w.weights != [1, 1, 3] {
        return Err(Error::InvalidArgument("expected weights (1,1,3)".into()));
    }
    let vars = w.f.var_names();
    let restricted = LaurentPoly::from_terms(
        &vars,
        w.f.terms().filter(|(e, _)| e[2] == 0).map(|(e, c)| (c.clone(), e.clone())),
    );
    let at = restricted.specialize(0, alpha)?;
    // Dehomogenize x0 = 1: a polynomial in y.
    let in_y = at.specialize(0, &Rat::one())?.specialize(0, &Rat::zero())?;
    let uni = in_y.to_unipoly(0).ok_or_else(|| Error::InvalidArgument("negative exponent".into()))?;
    let line_points = uni.distinct_root_count();
    let y_deg = (w.degree / 3) as i64;
    let line_point_at_infinity = w.degree % 3 != 0 || at.coeff(&[0, 0, y_deg]).is_zero();
    let extra_point = w.eval(alpha, &[Rat::zero(), Rat::one(), Rat::zero()])?.is_zero();
    let total = line_points + line_point_at_infinity as usize + extra_point as usize;
    Ok(FixedPoints {
        line_equation: restricted.to_string(),
        line_points,
        line_point_at_infinity,
        extra_point,
        total,
    })
}

/// Quotient map `(x0 : x1 : y) ↦ (x0³ : α·x0·x1² : y)` from the weighted
/// curve to the plane quartic, with its branch locus.
#[derive(Clone, Debug, Serialize)]
pub struct BranchData {
    /// `N(x0³, α x0 x1², y) = x0³ · Ñ` exactly.
    pub quotient_identity: bool,
    /// Equation of `N` restricted to `u1 = 0`, with the factor `u0` removed.
    pub branch_equation: String,
    pub branch_points_on_line: usize,
    /// Whether `p0 = (0:1:0)` lies on `N`.
    pub p0_on_curve: bool,
    pub total: usize,
}

pub fn branch_data(n: &WeightedCurve, cover: &WeightedCurve, alpha: &Rat) -> Result<BranchData> {
    let vars = cover.f.var_names();
    let mono = |e: [i64; 4]| LaurentPoly::monomial(&vars, &e, Rat::one());
    let images = vec![mono([1, 0, 0, 0]), mono([0, 3, 0, 0]), mono([1, 1, 2, 0]), mono([0, 0, 0, 1])];
    let pulled = n.f.substitute_monomials(&images)?;
    let quotient_identity = pulled == cover.f.shift(&[0, 3, 0, 0]);
    let nvars = n.f.var_names();
    let on_line = LaurentPoly::from_terms(
        &nvars,
        n.f.terms().filter(|(e, _)| e[2] == 0).map(|(e, c)| (c.clone(), e.clone())),
    );
    let min_u0 = on_line.min_exponents()[1];
    let branch = on_line.shift(&[0, -min_u0, 0, 0]);
    let uni = branch
        .specialize(0, alpha)?
        .specialize(0, &Rat::one())?
        .specialize(0, &Rat::zero())?
        .to_unipoly(0)
        .ok_or_else(|| Error::InvalidArgument("negative exponent".into()))?;
    let branch_points_on_line = uni.distinct_root_count();
    let p0_on_curve = n.eval(alpha, &[Rat::zero(), Rat::one(), Rat::zero()])?.is_zero();
    Ok(BranchData {
        quotient_identity,
        branch_equation: branch.to_string(),
        branch_points_on_line,
        p0_on_curve,
        total: branch_points_on_line + p0_on_curve as usize,
    })
}

fn legendre(a: u64, p: u64) -> i64 {
    let r = BigInt::from(a % p).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
    if r.is_zero() {
        0
    } else if r.is_one() {
        1
    } else {
        -1
    }
}

/// `(#Ñ(F_p torus), Σ_{Δ points} (1 + χ(u1/α)))` for the cover `u1 ↦ α u1²`.
pub fn cover_fiber_counts(base: &PlaneCurveModel, cover: &PlaneCurveModel, p: u64, alpha: u64) -> Result<(u64, u64)> {
    let upstairs = crate::gkz::count_torus_points(&cover.f, p, alpha)?;
    let pm = BigInt::from(p);
    let spec = base.f.specialize(0, &Rat::from_integer(BigInt::from(alpha % p)))?;
    let ainv = BigInt::from(alpha % p).modpow(&BigInt::from(p - 2), &pm).to_u64().unwrap();
    let mut sum = 0u64;
    for u1 in 1..p {
        for u2 in 1..p {
            let mut acc = BigInt::zero();
            for (e, c) in spec.terms() {
                let d = c.denom().mod_floor(&pm);
                if d.is_zero() {
                    return Err(Error::DenominatorVanishes(p));
                }
                let t = c.numer()
                    * d.modpow(&(&pm - 2u32), &pm)
                    * BigInt::from(u1).modpow(&BigInt::from(e[0].rem_euclid(p as i64 - 1)), &pm)
                    * BigInt::from(u2).modpow(&BigInt::from(e[1].rem_euclid(p as i64 - 1)), &pm);
                acc += t;
            }
            if acc.mod_floor(&pm).is_zero() {
                sum += (1 + legendre(u1 * ainv % p, p)) as u64;
            }
        }
    }
    Ok((upstairs, sum))
}

/// Specialize `α` and view the model as a bivariate polynomial in `(u1, u2)`
/// with nonnegative exponents, as coefficients in `u2` over `Q[u1]`.
pub fn as_bivariate(f: &LaurentPoly, alpha: &Rat) -> Result<Vec<UniPoly>> {
    let g = f.specialize(0, alpha)?;
    let mins = g.min_exponents();
    let g = g.shift(&[-mins[0], -mins[1]]);
    let deg2 = g.terms().map(|(e, _)| e[1]).max().unwrap_or(0) as usize;
    let mut out = vec![Vec::<Rat>::new(); deg2 + 1];
    for (e, c) in g.terms() {
        let slot = &mut out[e[1] as usize];
        let k = e[0] as usize;
        if slot.len() <= k {
            slot.resize(k + 1, Rat::zero());
        }
        slot[k] += c;
    }
    Ok(out.into_iter().map(UniPoly::from_coeffs).collect())
}


/// Twice the number of interior points of the cover's Newton polygon with odd
/// coordinate along the doubled axis: the rank of the part of `H¹` on which
/// the covering involution acts by `-1`.
pub fn anti_invariant_rank(cover: &PlaneCurveModel) -> Result<u64> {
    let axis = cover
        .lattice_scale
        .iter()
        .position(|s| s % 2 == 0)
        .ok_or_else(|| Error::InvalidArgument("model is not a double cover".into()))?;
    let p = hull_and_facets(&PointConfig::new(support_2d(cover))?)?;
    if p.dim < 2 {
        return Err(Error::DegeneratePolygon(p.dim));
    }
    let odd = lattice_points(&p, 1, true)?
        .into_iter()
        .filter(|m| m[axis].rem_euclid(2) == 1)
        .count();
    Ok(2 * odd as u64)
}
