//! Symmetric 3×3 forms over the Laurent ring in `(α, u1, u2)`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::curve::PlaneCurveModel;
use crate::error::{Error, Result};
use crate::exact::{rat, LaurentPoly, Rat};
use crate::gkz::ToricModel;

pub const BASE_VARS: [&str; 3] = ["alpha", "u1", "u2"];

pub type Mat3 = Vec<Vec<LaurentPoly>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm3 {
    entries: Mat3,
}

fn zero() -> LaurentPoly {
    LaurentPoly::zero(&BASE_VARS)
}

fn constant(c: Rat) -> LaurentPoly {
    LaurentPoly::constant(&BASE_VARS, c)
}

pub fn identity3() -> Mat3 {
    (0..3)
        .map(|i| (0..3).map(|j| if i == j { constant(Rat::one()) } else { zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| (0..3).fold(zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Mat3) -> Mat3 {
    (0..3).map(|i| (0..3).map(|j| a[j][i].clone()).collect()).collect()
}

pub fn det3(a: &Mat3) -> LaurentPoly {
    let m = |i: usize, j: usize, k: usize, l: usize| &(&a[i][k] * &a[j][l]) - &(&a[i][l] * &a[j][k]);
    let t0 = &a[0][0] * &m(1, 2, 1, 2);
    let t1 = &a[0][1] * &m(1, 2, 0, 2);
    let t2 = &a[0][2] * &m(1, 2, 0, 1);
    &(&t0 - &t1) + &t2
}

impl QuadForm3 {
    pub fn new(entries: Mat3) -> Result<Self> {
        if entries.len() != 3 || entries.iter().any(|r| r.len() != 3) {
            return Err(Error::InvalidArgument("form must be 3x3".into()));
        }
        for i in 0..3 {
            for j in 0..3 {
                if entries[i][j].arity() != BASE_VARS.len() {
                    return Err(Error::ArityMismatch {
                        left: BASE_VARS.len(),
                        right: entries[i][j].arity(),
                    });
                }
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidArgument(format!("entry ({i},{j}) is not symmetric")));
                }
            }
        }
        Ok(Self { entries })
    }

    /// Diagonal form with the given entries.
    pub fn diagonal(d: [LaurentPoly; 3]) -> Result<Self> {
        let mut m: Mat3 = (0..3).map(|_| (0..3).map(|_| zero()).collect()).collect();
        for (i, x) in d.into_iter().enumerate() {
            m[i][i] = x;
        }
        Self::new(m)
    }

    pub fn entries(&self) -> &Mat3 {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| i == j || self.entries[i][j].is_zero()))
    }

    pub fn det(&self) -> LaurentPoly {
        det3(&self.entries)
    }

    /// `Sᵀ·Q·S`.
    pub fn congruence(&self, s: &Mat3) -> Self {
        Self {
            entries: mat_mul(&mat_mul(&transpose(s), &self.entries), s),
        }
    }

    /// Entries evaluated at `(α, u1, u2)`.
    pub fn eval(&self, point: &[Rat]) -> Result<Vec<Vec<Rat>>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|x| x.eval(point)).collect())
            .collect()
    }

    pub fn rank_at(&self, point: &[Rat]) -> Result<usize> {
        Ok(rational_rank(self.eval(point)?))
    }

    /// `Σ a_ij x_i x_j` in variables `(α, u1, u2, x0, x1, x2)`.
    pub fn quadratic_polynomial(&self) -> LaurentPoly {
        let vars = ["alpha", "u1", "u2", "x0", "x1", "x2"];
        let mut out = LaurentPoly::zero(&vars);
        for i in 0..3 {
            for j in 0..3 {
                let mut e = vec![0i64; 6];
                e[3 + i] += 1;
                e[3 + j] += 1;
                let lifted = self.entries[i][j].embed(&vars, &[0, 1, 2]).shift(&e);
                out = &out + &lifted;
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|r| serde_json::Value::Array(r.iter().map(|x| x.to_string().into()).collect()))
                .collect(),
        )
    }
}

pub fn rational_rank(mut a: Vec<Vec<Rat>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..rows {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rank][c];
                for j in c..cols {
                    let v = &f * &a[rank][j];
                    a[i][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Read `f` as `Σ a_ij x_i x_j` with `x0 = 1`, `x1 = u3`, `x2 = u4`, or with
/// another pair of torus variables if that one fails.
pub fn conic_chart(model: &ToricModel) -> Result<QuadForm3> {
    chart_with_fiber(model).map(|(q, _)| q)
}

/// As `conic_chart`, also returning the 1-based fiber variable indices.
pub fn chart_with_fiber(model: &ToricModel) -> Result<(QuadForm3, (usize, usize))> {
    let f = &model.f;
    if model.n() != 4 {
        return Err(Error::NotQuadratic(format!(
            "expected four torus variables, found {}",
            model.n()
        )));
    }
    let mut pairs = vec![(3usize, 4usize)];
    for i in 1..=4 {
        for j in i + 1..=4 {
            if (i, j) != (3, 4) {
                pairs.push((i, j));
            }
        }
    }
    for (i, j) in pairs {
        if let Some(q) = try_chart(f, i, j)? {
            return Ok((q, (i, j)));
        }
    }
    Err(Error::NotQuadratic(
        "no pair of torus variables enters with degree at most two".into(),
    ))
}

fn try_chart(f: &LaurentPoly, i: usize, j: usize) -> Result<Option<QuadForm3>> {
    let base: Vec<usize> = (1..=4).filter(|&k| k != i && k != j).collect();
    let mut m: Mat3 = (0..3).map(|_| (0..3).map(|_| zero()).collect()).collect();
    let half = rat(1, 2);
    for (e, c) in f.terms() {
        let (a, b) = (e[i], e[j]);
        if a < 0 || b < 0 || a + b > 2 {
            return Ok(None);
        }
        let mono = LaurentPoly::monomial(&BASE_VARS, &[e[0], e[base[0]], e[base[1]]], c.clone());
        let slot = match (a, b) {
            (0, 0) => vec![(0, 0)],
            (1, 0) => vec![(0, 1), (1, 0)],
            (0, 1) => vec![(0, 2), (2, 0)],
            (2, 0) => vec![(1, 1)],
            (0, 2) => vec![(2, 2)],
            (1, 1) => vec![(1, 2), (2, 1)],
            _ => unreachable!(),
        };
        let val = if slot.len() == 2 { mono.scale(&half) } else { mono };
        for (r, s) in slot {
            m[r][s] = &m[r][s] + &val;
        }
    }
    Ok(Some(QuadForm3::new(m)?))
}

/// Result of symmetric elimination.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub form: QuadForm3,
    /// `S` with `Sᵀ·Q·S = form`, acting by `x = S·x'`.
    pub s: Mat3,
    pub substitutions: Vec<String>,
}

/// Eliminate cross terms pivoting on `a22`, then `a11`.
pub fn diagonalize(q: &QuadForm3) -> Result<Diagonalization> {
    let mut cur = q.clone();
    let mut s = identity3();
    let mut substitutions = Vec::new();
    for k in [2usize, 1] {
        let others: Vec<usize> = (0..k).collect();
        if others.iter().all(|&j| cur.get(j, k).is_zero()) {
            continue;
        }
        let inv = cur.get(k, k).inverse().ok_or_else(|| Error::NonInvertiblePivot {
            entry: cur.get(k, k).to_string(),
        })?;
        let mut sk = identity3();
        let mut desc = format!("x{k} -> x{k}");
        for &j in &others {
            let c = -&(cur.get(j, k) * &inv);
            if !c.is_zero() {
                desc.push_str(&format!(" + ({c})*x{j}"));
            }
            sk[k][j] = c;
        }
        substitutions.push(desc);
        cur = cur.congruence(&sk);
        s = mat_mul(&s, &sk);
    }
    if !cur.is_diagonal() {
        let inv = cur.get(0, 0).inverse();
        if inv.is_none() {
            return Err(Error::NonInvertiblePivot {
                entry: cur.get(0, 0).to_string(),
            });
        }
    }
    Ok(Diagonalization {
        form: cur,
        s,
        substitutions,
    })
}

/// Rank of the chart at sampled points on and off the discriminant.
#[derive(Clone, Debug, Serialize)]
pub struct RankTable {
    pub seed: u64,
    pub on_curve: Vec<(Vec<String>, usize)>,
    pub off_curve: Vec<(Vec<String>, usize)>,
}

impl RankTable {
    pub fn ranks_on(&self) -> Vec<usize> {
        self.on_curve.iter().map(|(_, r)| *r).collect()
    }

    pub fn ranks_off(&self) -> Vec<usize> {
        self.off_curve.iter().map(|(_, r)| *r).collect()
    }
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let n: i64 = rng.gen_range(-9..=9);
        let d: i64 = rng.gen_range(1..=5);
        if n != 0 {
            return rat(n, d);
        }
    }
}

/// Sample `count` torus points on `delta` (solving its α-linear equation)
/// and `count` torus points off it; record the rank of `q` at each.
pub fn rank_stratification(
    q: &QuadForm3,
    delta: &PlaneCurveModel,
    seed: u64,
    count: usize,
) -> Result<RankTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = &delta.f;
    let c1 = f.derivative(0);
    if !c1.derivative(0).is_zero() {
        return Err(Error::InvalidArgument("discriminant is not linear in alpha".into()));
    }
    let fmt = |p: &[Rat]| p.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let mut on_curve = Vec::new();
    let mut guard = 0;
    while on_curve.len() < count {
        guard += 1;
        if guard > 100 * count + 100 {
            return Err(Error::InvalidArgument("could not sample the discriminant".into()));
        }
        let (u1, u2) = (random_nonzero(&mut rng), random_nonzero(&mut rng));
        let probe = [Rat::one(), u1.clone(), u2.clone()];
        let slope = c1.eval(&probe)?;
        if slope.is_zero() {
            continue;
        }
        // f = α·c1 + c0 with c1 free of α.
        let c0 = f.eval(&[Rat::zero(), u1.clone(), u2.clone()]).ok();
        let Some(c0) = c0 else { continue };
        let alpha = -c0 / slope;
        if alpha.is_zero() {
            continue;
        }
        let p = [alpha, u1, u2];
        debug_assert!(f.eval(&p)?.is_zero());
        on_curve.push((fmt(&p), q.rank_at(&p)?));
    }
    let mut off_curve = Vec::new();
    while off_curve.len() < count {
        let p = [random_nonzero(&mut rng), random_nonzero(&mut rng), random_nonzero(&mut rng)];
        if f.eval(&p)?.is_zero() {
            continue;
        }
        off_curve.push((fmt(&p), q.rank_at(&p)?));
    }
    Ok(RankTable {
        seed,
        on_curve,
        off_curve,
    })
}

/// Restrictions of the conic equation to `x0 = 0` and to `x1 = x2 = 0`,
/// each with its monomial content removed.
pub fn boundary_divisors(q: &QuadForm3) -> (LaurentPoly, LaurentPoly) {
    let f = q.quadratic_polynomial();
    let vars = f.var_names();
    let pick = |keep: &dyn Fn(&[i64]) -> bool| {
        LaurentPoly::from_terms(
            &vars,
            f.terms().filter(|(e, _)| keep(e)).map(|(e, c)| (c.clone(), e.clone())),
        )
        .normalize_unit()
    };
    let at_x0 = pick(&|e: &[i64]| e[3] == 0);
    let at_x12 = pick(&|e: &[i64]| e[4] == 0 && e[5] == 0);
    (at_x0, at_x12)
}
