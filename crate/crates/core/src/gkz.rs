//! GKZ systems attached to gamma lists and their restriction to the α-line.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, LaurentPoly, Rat, UniPoly};
use crate::hypergeom::{build_reducible_operator, raw_exponents, GammaList};
use crate::lattice::{
    hermite_normal_form, hull_and_facets, integer_kernel, invariant_factors, smith_normal_form,
    IntMatrix, PointConfig, Polytope,
};
use crate::ore::{OreOp, ALPHA};

/// The Laurent model `f = Σ (-α)^{k_i} u^{m_i}` of a gamma list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricModel {
    pub gamma: GammaList,
    /// The points `m_i`, labelled by `γ_i`.
    pub monomials: PointConfig,
    pub kexp: Vec<i64>,
    /// Variables `alpha, u1, …, un`.
    pub f: LaurentPoly,
}

fn model_vars(n: usize) -> Vec<String> {
    std::iter::once(ALPHA.to_string())
        .chain((1..=n).map(|i| format!("u{i}")))
        .collect()
}

/// `Σ (-α)^{k_i} u^{m_i}` over the given points.
pub fn assemble_model(points: &[Vec<i64>], kexp: &[i64]) -> LaurentPoly {
    let n = points.first().map_or(0, Vec::len);
    let names = model_vars(n);
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    LaurentPoly::from_terms(
        &vars,
        points.iter().zip(kexp).map(|(m, &k)| {
            let sign = if k.rem_euclid(2) == 0 { Rat::one() } else { -Rat::one() };
            let mut e = vec![k];
            e.extend_from_slice(m);
            (sign, e)
        }),
    )
}

impl ToricModel {
    /// Validate and assemble from explicit points and `k`.
    pub fn from_parts(gamma: GammaList, points: Vec<Vec<i64>>, kexp: Vec<i64>) -> Result<Self> {
        let g = gamma.entries();
        if points.len() != g.len() || kexp.len() != g.len() {
            return Err(Error::ArityMismatch {
                left: g.len(),
                right: points.len().min(kexp.len()),
            });
        }
        let cfg = PointConfig::new(points)?.with_labels(g.to_vec())?;
        for c in 0..cfg.dim {
            let s: i64 = cfg.points.iter().zip(g).map(|(p, gi)| p[c] * gi).sum();
            if s != 0 {
                return Err(Error::InvalidArgument(format!(
                    "points do not satisfy the gamma relation in coordinate {c}"
                )));
            }
        }
        let kg: i64 = kexp.iter().zip(g).map(|(k, gi)| k * gi).sum();
        if kg != 1 {
            return Err(Error::InvalidArgument(format!(
                "k must pair to 1 with gamma, got {kg}"
            )));
        }
        let f = assemble_model(&cfg.points, &kexp);
        Ok(Self {
            gamma,
            monomials: cfg,
            kexp,
            f,
        })
    }

    pub fn n(&self) -> usize {
        self.monomials.dim
    }

    pub fn var_names(&self) -> Vec<String> {
        model_vars(self.n())
    }

    /// The matrix with rows `(1, …, 1)` and the coordinates of the points.
    pub fn stacked_matrix(&self) -> IntMatrix {
        stacked(&self.monomials)
    }

    /// Invariant factors of the stacked matrix; all ones means primitive.
    pub fn primitivity_certificate(&self) -> Vec<BigInt> {
        let (_, d, _) = smith_normal_form(&self.stacked_matrix());
        invariant_factors(&d)
    }

    pub fn is_primitive(&self) -> bool {
        let f = self.primitivity_certificate();
        f.len() == self.n() + 1 && f.iter().all(One::is_one)
    }

    /// `Σ γ_i m_i`, which vanishes.
    pub fn relation_residual(&self) -> Vec<i64> {
        let g = self.gamma.entries();
        (0..self.n())
            .map(|c| self.monomials.points.iter().zip(g).map(|(p, gi)| p[c] * gi).sum())
            .collect()
    }

    pub fn newton_polytope(&self) -> Result<Polytope> {
        hull_and_facets(&self.monomials)
    }
}

fn stacked(cfg: &PointConfig) -> IntMatrix {
    let mut rows = vec![vec![1i64; cfg.len()]];
    for c in 0..cfg.dim {
        rows.push(cfg.points.iter().map(|p| p[c]).collect());
    }
    IntMatrix::from_rows(&rows)
}

/// Integer `k` with `Σ k_i γ_i = 1`, by iterated extended Euclid.
pub fn unit_pairing(g: &[i64]) -> Result<Vec<i64>> {
    let mut k = vec![0i64; g.len()];
    let mut acc = 0i64;
    for (i, &x) in g.iter().enumerate() {
        if acc == 0 {
            k[i] = x.signum();
            acc = x.abs();
            continue;
        }
        let e = acc.extended_gcd(&x);
        for kj in k.iter_mut().take(i) {
            *kj *= e.x;
        }
        k[i] = e.y;
        acc = e.gcd;
    }
    if acc != 1 {
        return Err(Error::InvalidGamma(format!("entries have gcd {acc}")));
    }
    Ok(k)
}

/// Monomials from a basis of `γ^⊥` containing `(1, …, 1)`, rows normalized
/// by Hermite form.
pub fn realize_monomials(gamma: &GammaList) -> Result<ToricModel> {
    let g = gamma.entries();
    let n = g.len();
    let kexp = unit_pairing(g)?;
    let kern = integer_kernel(&IntMatrix::from_rows(&[g.to_vec()]));
    let ones: Vec<Rat> = vec![Rat::one(); n];
    let coords = solve_in_basis(&kern, &ones)?;
    let row = IntMatrix::from_vec(1, coords.len(), coords);
    let (_, _, v) = smith_normal_form(&row);
    let w = v
        .integer_inverse()
        .expect("unimodular")
        .transpose();
    let mut basis = &kern * &w;
    let first = basis.col(0);
    if first[0].is_negative() {
        for i in 0..basis.rows() {
            let x = -basis.get(i, 0);
            basis.set(i, 0, x);
        }
    }
    debug_assert!(basis.col(0).iter().all(One::is_one));
    let rest: Vec<usize> = (1..basis.cols()).collect();
    let m = basis.select_cols(&rest).transpose();
    let (h, _) = hermite_normal_form(&m);
    let points = h.to_i64_cols();
    ToricModel::from_parts(gamma.clone(), points, kexp)
}

/// Integer coordinates of `target` in the column basis `b`.
fn solve_in_basis(b: &IntMatrix, target: &[Rat]) -> Result<Vec<BigInt>> {
    let cols = b.cols();
    let rows = b.rows();
    let mut a: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            let mut r: Vec<Rat> = (0..cols).map(|j| Rat::from_integer(b.get(i, j).clone())).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=cols {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[cols].is_zero()) {
        return Err(Error::InvalidArgument("vector not in the span".into()));
    }
    let mut x = vec![BigInt::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        if !a[i][cols].is_integer() {
            return Err(Error::InvalidArgument("vector not in the lattice".into()));
        }
        x[c] = a[i][cols].to_integer();
    }
    Ok(x)
}

/// `∏ ∂^{plus} - ∏ ∂^{minus}` from a relation `l = plus - minus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxOp {
    pub plus: Vec<u64>,
    pub minus: Vec<u64>,
}

impl BoxOp {
    pub fn from_relation(l: &[i64]) -> Self {
        Self {
            plus: l.iter().map(|&x| x.max(0) as u64).collect(),
            minus: l.iter().map(|&x| (-x).max(0) as u64).collect(),
        }
    }

    pub fn relation(&self) -> Vec<i64> {
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(p, m)| *p as i64 - *m as i64)
            .collect()
    }

    pub fn display(&self) -> String {
        let side = |e: &[u64]| -> String {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("d{}", i + 1) } else { format!("d{}^{x}", i + 1) })
                .collect();
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join("*")
            }
        };
        format!("{} - {}", side(&self.plus), side(&self.minus))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkzSystem {
    pub a: PointConfig,
    pub abar: PointConfig,
    pub beta: Vec<Rat>,
    /// Rows `Σ ā_j D_j`.
    pub euler_ops: Vec<Vec<i64>>,
    pub box_ops: Vec<BoxOp>,
    /// Whether the `ā_i` generate the full lattice.
    pub generates_lattice: bool,
}

/// GKZ system with `β = 0`.
pub fn build_gkz(a: &PointConfig) -> Result<GkzSystem> {
    build_gkz_with_beta(a, &vec![Rat::zero(); a.dim + 1])
}

pub fn build_gkz_with_beta(a: &PointConfig, beta: &[Rat]) -> Result<GkzSystem> {
    if beta.iter().any(|b| !b.is_zero()) {
        return Err(Error::NonzeroBeta);
    }
    if beta.len() != a.dim + 1 {
        return Err(Error::ArityMismatch {
            left: a.dim + 1,
            right: beta.len(),
        });
    }
    let m = stacked(a);
    let rank = m.rank();
    if rank != a.dim + 1 {
        return Err(Error::RankDeficient {
            rank,
            expected: a.dim + 1,
        });
    }
    let (_, d, _) = smith_normal_form(&m);
    let generates_lattice = invariant_factors(&d).iter().all(One::is_one);
    let kern = integer_kernel(&m);
    let box_ops = kern
        .to_i64_cols()
        .into_iter()
        .map(|mut l| {
            if l.iter().rev().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                l.iter_mut().for_each(|x| *x = -*x);
            }
            BoxOp::from_relation(&l)
        })
        .collect();
    let abar = PointConfig {
        dim: a.dim + 1,
        points: a
            .points
            .iter()
            .map(|p| std::iter::once(1).chain(p.iter().copied()).collect())
            .collect(),
        labels: a.labels.clone(),
    };
    Ok(GkzSystem {
        a: a.clone(),
        abar,
        beta: beta.to_vec(),
        euler_ops: m.to_i64_rows(),
        box_ops,
        generates_lattice,
    })
}

impl GkzSystem {
    /// `r·l` for every Euler row `r` and box relation `l`; all zero.
    pub fn euler_box_pairings(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for r in &self.euler_ops {
            for b in &self.box_ops {
                out.push(r.iter().zip(b.relation()).map(|(x, y)| x * y).sum());
            }
        }
        out
    }

    /// Under `D_i ↦ γ_i θ`, each Euler row becomes `(r·γ) θ`; returns `r·γ`.
    pub fn euler_on_ansatz(&self, gamma: &GammaList) -> Vec<i64> {
        self.euler_ops
            .iter()
            .map(|r| r.iter().zip(gamma.entries()).map(|(x, y)| x * y).sum())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "A": self.a.points,
            "Abar": self.abar.points,
            "beta": self.beta.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            "euler": self.euler_ops,
            "box": self.box_ops.iter().map(|b| serde_json::json!({
                "plus": b.plus,
                "minus": b.minus,
                "display": b.display(),
            })).collect::<Vec<_>>(),
            "generates_lattice": self.generates_lattice,
        })
    }
}

/// `∏_{s<|g|} (g θ - s)` as a polynomial in θ.
fn falling_block(g: i64) -> UniPoly {
    let mut p = UniPoly::one();
    for s in 0..g.abs() {
        p = &p * &UniPoly::from_coeffs(vec![int(-s), int(g)]);
    }
    p
}

/// Restrict the box operator along `Φ = G(w)`, `w = ∏ v_i^{γ_i}`, and
/// substitute `w = -α`. The coefficients `v_i = (-α)^{k_i}` give
/// `w = (-α)^{Σ k_i γ_i}`, so `Σ k_i γ_i = 1` is required.
pub fn restrict_to_line(sys: &GkzSystem, gamma: &GammaList, kexp: &[i64]) -> Result<OreOp> {
    let g = gamma.entries();
    if sys.box_ops.len() != 1 {
        return Err(Error::RelationRank(sys.box_ops.len()));
    }
    let l = sys.box_ops[0].relation();
    let flip = if l == g {
        false
    } else if l.iter().zip(g).all(|(a, b)| *a == -b) {
        true
    } else {
        return Err(Error::InvalidArgument(
            "relation lattice is not generated by gamma".into(),
        ));
    };
    let kg: i64 = kexp.iter().zip(g).map(|(k, x)| k * x).sum();
    if kg != 1 {
        return Err(Error::InvalidArgument(format!(
            "k must pair to 1 with gamma, got {kg}"
        )));
    }
    // Box: ∂^{l+} - ∂^{l-}. With v^n ∂^n = ∏(v∂ - s) and v_i∂_i ↦ γ_i θ,
    // the ansatz gives A(θ) - w·B(θ) where l+ is the positive part of γ.
    let mut a = UniPoly::one();
    let mut b = UniPoly::one();
    for &x in g {
        if x > 0 {
            a = &a * &falling_block(x);
        } else {
            b = &b * &falling_block(x);
        }
    }
    // w·B(θ) with w = -α; D = θ since θ_w = θ_α.
    let op = OreOp::from_part(0, a).add(&OreOp::from_part(1, b));
    Ok(if flip { op.neg() } else { op })
}

/// Comparison of the restricted operator with the reducible operator.
#[derive(Clone, Debug)]
pub struct RestrictionCertificate {
    pub restricted: OreOp,
    pub reducible: OreOp,
    /// Whether `restricted = c·reducible` for a nonzero rational `c`.
    pub equal_up_to_unit: bool,
    /// Number of negative entries: the power of `D` split off.
    pub z: usize,
    /// `K` with `reducible = D^z ∘ K`.
    pub common_factor: OreOp,
    /// `c` with `restricted = c·K'∘D^z`.
    pub scale: Rat,
    /// Whether `K'` is `K` with `α ↦ -α` (when `Σ_{γ>0} γ` is even).
    pub alpha_flipped: bool,
    pub left_identity: bool,
    pub right_identity: bool,
}

/// `α ↦ -α` on an operator.
pub fn flip_alpha(op: &OreOp) -> OreOp {
    op.parts().fold(OreOp::zero(), |acc, (e, p)| {
        let s = if e.rem_euclid(2) == 0 { Rat::one() } else { -Rat::one() };
        acc.add(&OreOp::from_part(*e, p.scale(&s)))
    })
}

/// Is `a = c·b` for some nonzero rational `c`?
pub fn proportional(a: &OreOp, b: &OreOp) -> Option<Rat> {
    let (e, p) = b.parts().next()?;
    let q = a.part(*e);
    let lead = p.leading()?;
    let c = q.coeff(p.degree()?) / lead;
    if c.is_zero() {
        return None;
    }
    (b.scale(&c) == *a).then_some(c)
}

pub fn restriction_certificate(gamma: &GammaList) -> Result<RestrictionCertificate> {
    let model = realize_monomials(gamma)?;
    let sys = build_gkz(&model.monomials)?;
    let restricted = restrict_to_line(&sys, gamma, &model.kexp)?;
    let reducible = build_reducible_operator(gamma);
    let equal_up_to_unit = proportional(&restricted, &reducible).is_some();
    let z = gamma.negative().count();
    let npos = gamma.positive().count();
    if npos < z {
        return Err(Error::InvalidArgument(
            "fewer positive than negative entries".into(),
        ));
    }
    // reducible = α₀ D^z U(D) - α (D+1)^z R(D); K = α₀ U - α R.
    let (s0, sinf) = raw_exponents(gamma);
    let alpha0 = crate::hypergeom::singular_value(gamma);
    let mut zeros_removed = 0;
    let u_roots: Vec<Rat> = s0
        .iter()
        .filter(|b| {
            if b.is_zero() && zeros_removed < z {
                zeros_removed += 1;
                false
            } else {
                true
            }
        })
        .cloned()
        .collect();
    let r_neg: Vec<Rat> = sinf.iter().filter(|c| !c.is_zero()).map(|c| -c).collect();
    let k = OreOp::from_roots(0, &alpha0, &u_roots).sub(&OreOp::from_roots(1, &Rat::one(), &r_neg));
    let dz = OreOp::from_part(0, UniPoly::monomial(Rat::one(), z));
    let left_identity = dz.compose(&k) == reducible;
    let n = gamma.degree();
    let alpha_flipped = n % 2 == 0;
    let kprime = if alpha_flipped { flip_alpha(&k) } else { k.clone() };
    let right = kprime.compose(&dz);
    let scale = proportional(&restricted, &right).unwrap_or_else(Rat::zero);
    Ok(RestrictionCertificate {
        restricted,
        reducible,
        equal_up_to_unit,
        z,
        common_factor: k,
        right_identity: !scale.is_zero(),
        scale,
        alpha_flipped,
        left_identity,
    })
}

/// Points of `(f = 0)` on `(F_p^×)^n` with `α = alphaval`; the variable
/// named `alpha`, if present, is specialized.
pub fn count_torus_points(f: &LaurentPoly, p: u64, alphaval: u64) -> Result<u64> {
    if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if p > 64 {
        return Err(Error::InvalidArgument("prime must be at most 64".into()));
    }
    let a = alphaval % p;
    let ai = f.var_index(ALPHA);
    if ai.is_some() && a == 0 {
        return Err(Error::InvalidArgument("alpha must be nonzero mod p".into()));
    }
    let pm = BigInt::from(p);
    let modp = |c: &Rat| -> Result<u64> {
        let d = c.denom().mod_floor(&pm);
        if d.is_zero() {
            return Err(Error::DenominatorVanishes(p));
        }
        let dinv = d.modpow(&BigInt::from(p - 2), &pm);
        Ok((c.numer().mod_floor(&pm) * dinv).mod_floor(&pm).to_u64().unwrap())
    };
    let powmod = |b: u64, e: i64| -> u64 {
        let e = e.rem_euclid(p as i64 - 1) as u64;
        BigInt::from(b).modpow(&BigInt::from(e), &pm).to_u64().unwrap()
    };
    let vars: Vec<usize> = (0..f.arity()).filter(|&i| Some(i) != ai).collect();
    let mut terms: Vec<(u64, Vec<i64>)> = Vec::new();
    for (e, c) in f.terms() {
        let mut cm = modp(c)?;
        if let Some(i) = ai {
            cm = cm * powmod(a, e[i]) % p;
        }
        terms.push((cm, vars.iter().map(|&i| e[i].rem_euclid(p as i64 - 1)).collect()));
    }
    let n = vars.len();
    let q = p - 1;
    // table[x-1][k] = x^k
    let table: Vec<Vec<u64>> = (1..p)
        .map(|x| {
            let mut row = vec![1u64; q as usize];
            for k in 1..q as usize {
                row[k] = row[k - 1] * x % p;
            }
            row
        })
        .collect();
    let total = q.pow(n as u32);
    let mut count = 0u64;
    let mut idx = vec![0usize; n];
    for _ in 0..total {
        let mut s = 0u64;
        for (c, e) in &terms {
            let mut t = *c;
            for (k, &xi) in idx.iter().enumerate() {
                t = t * table[xi][e[k] as usize] % p;
            }
            s += t;
        }
        if s % p == 0 {
            count += 1;
        }
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot < q as usize {
                break;
            }
            *slot = 0;
        }
    }
    Ok(count)
}

/// The monomial matrix with columns `(1,1,1,0), (0,0,0,2), (0,0,0,1),
/// (3,1,0,0), (0,3,0,0), (1,0,2,0)` and `k = (0,-1,0,0,0,0)`.
pub fn reference_model() -> ToricModel {
    ToricModel::from_parts(
        GammaList::standard(),
        vec![
            vec![1, 1, 1, 0],
            vec![0, 0, 0, 2],
            vec![0, 0, 0, 1],
            vec![3, 1, 0, 0],
            vec![0, 3, 0, 0],
            vec![1, 0, 2, 0],
        ],
        vec![0, -1, 0, 0, 0, 0],
    )
    .expect("valid reference model")
}

/// The model `1 + u1 + u2 + u3 + u4 - (1/α) u1^2 u2^3 u3^5 u4^9`.
pub fn simplex_model() -> ToricModel {
    ToricModel::from_parts(
        GammaList::standard(),
        vec![
            vec![0, 0, 0, 0],
            vec![2, 3, 5, 9],
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
        ],
        vec![0, -1, 0, 0, 0, 0],
    )
    .expect("valid simplex model")
}

/// Monomial images `u1 ↦ u4/(u1u2u3)`, `u2 ↦ u1²/u3`, `u3 ↦ u2²/(u1u3)`,
/// `u4 ↦ u3/u2` on the variables `alpha, u1..u4` (α fixed).
pub fn simplex_to_reference_images() -> Vec<LaurentPoly> {
    let names = model_vars(4);
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    let mono = |e: [i64; 5]| LaurentPoly::monomial(&vars, &e, Rat::one());
    vec![
        mono([1, 0, 0, 0, 0]),
        mono([0, -1, -1, -1, 1]),
        mono([0, 2, 0, -1, 0]),
        mono([0, -1, 2, -1, 0]),
        mono([0, 0, -1, 1, 0]),
    ]
}

/// The simplex model transported by the monomial change of coordinates
/// and multiplied by `u1 u2 u3`.
pub fn transported_simplex_model() -> Result<LaurentPoly> {
    let f = simplex_model().f;
    let g = f.substitute_monomials(&simplex_to_reference_images())?;
    Ok(g.shift(&[0, 1, 1, 1, 0]))
}
