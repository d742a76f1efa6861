//! Lattice polytopes of dimension at most four.
//!
//! Points are handled in intrinsic coordinates: a unimodular change of basis
//! sends the affine span of the input onto a coordinate subspace, so
//! lower-dimensional configurations are treated as full-dimensional ones in
//! their own lattice.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::normal_form::smith_normal_form;
use crate::error::{Error, Result};
use crate::exact::{int, Rat, UniPoly};

/// Default cap on enumerated candidate points per call.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfig {
    pub dim: usize,
    pub points: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<i64>>,
}

impl PointConfig {
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self> {
        let dim = points.first().ok_or(Error::EmptyInput)?.len();
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::ArityMismatch {
                left: dim,
                right: p.len(),
            });
        }
        Ok(Self {
            dim,
            points,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<i64>) -> Result<Self> {
        if labels.len() != self.points.len() {
            return Err(Error::ArityMismatch {
                left: self.points.len(),
                right: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Columns of an integer matrix as points.
    pub fn from_columns(m: &IntMatrix) -> Result<Self> {
        Self::new(m.to_i64_cols())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Every point translated by `t`.
    pub fn translated(&self, t: &[i64]) -> Self {
        Self {
            dim: self.dim,
            points: self
                .points
                .iter()
                .map(|p| p.iter().zip(t).map(|(a, b)| a + b).collect())
                .collect(),
            labels: self.labels.clone(),
        }
    }
}

/// Half-space `⟨n, x⟩ ≥ c`, or hyperplane `⟨n, x⟩ = c` when used as an equation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Facet {
    pub n: Vec<i64>,
    pub c: i64,
}

impl Facet {
    pub fn value(&self, x: &[i64]) -> i64 {
        dot(&self.n, x) - self.c
    }
}

/// Unimodular coordinates on the affine span.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Frame {
    origin: Vec<i64>,
    /// `dim` columns spanning the lattice of the affine span, stored as vectors.
    basis: Vec<Vec<i64>>,
    /// Rows sending `x - origin` to intrinsic coordinates.
    coords: Vec<Vec<i64>>,
    /// Normals of the affine equations of the span.
    normals: Vec<Vec<i64>>,
}

impl Frame {
    fn to_intrinsic(&self, x: &[i64]) -> Vec<i64> {
        let d: Vec<i64> = x.iter().zip(&self.origin).map(|(a, b)| a - b).collect();
        self.coords.iter().map(|r| dot(r, &d)).collect()
    }

    fn to_ambient(&self, y: &[i64], dilate: i64) -> Vec<i64> {
        let mut x: Vec<i64> = self.origin.iter().map(|o| o * dilate).collect();
        for (b, &yk) in self.basis.iter().zip(y) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += bi * yk;
            }
        }
        x
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    pub dim: usize,
    pub ambient: usize,
    pub vertices: Vec<Vec<i64>>,
    pub facets: Vec<Facet>,
    /// Affine equations cutting out the span when `dim < ambient`.
    pub equations: Vec<Facet>,
    frame: Frame,
    ivertices: Vec<Vec<i64>>,
    ifacets: Vec<Facet>,
}

#[derive(Serialize)]
struct PolytopeJson<'a> {
    dim: usize,
    vertices: &'a [Vec<i64>],
    facets: &'a [Facet],
    #[serde(skip_serializing_if = "<[Facet]>::is_empty")]
    equations: &'a [Facet],
}

impl Polytope {
    pub fn contains(&self, x: &[i64]) -> bool {
        self.equations.iter().all(|e| e.value(x) == 0) && self.facets.iter().all(|f| f.value(x) >= 0)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PolytopeJson {
            dim: self.dim,
            vertices: &self.vertices,
            facets: &self.facets,
            equations: &self.equations,
        })
        .expect("polytope serializes")
    }

    /// Vertices tight at a facet.
    pub fn facet_vertices(&self, f: &Facet) -> Vec<Vec<i64>> {
        self.vertices
            .iter()
            .filter(|v| f.value(v) == 0)
            .cloned()
            .collect()
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det_i128(&minor)
            })
            .sum(),
    }
}

/// Generalized cross product of `d - 1` vectors in `Z^d`, made primitive.
fn normal_of(rows: &[Vec<i64>], d: usize) -> Option<Vec<i64>> {
    let mut n = Vec::with_capacity(d);
    for j in 0..d {
        let minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x as i128).collect())
            .collect();
        let s = if j % 2 == 0 { 1 } else { -1 };
        n.push((s * det_i128(&minor)) as i64);
    }
    let g = gcd_vec(&n);
    if g == 0 {
        return None;
    }
    Some(n.into_iter().map(|x| x / g).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Facets of a full-dimensional point set in `Z^d`.
fn full_dim_facets(pts: &[Vec<i64>], d: usize) -> Vec<Facet> {
    let mut facets = BTreeSet::new();
    if d == 0 {
        return Vec::new();
    }
    for sub in combinations(pts.len(), d) {
        let p0 = &pts[sub[0]];
        let diffs: Vec<Vec<i64>> = sub[1..]
            .iter()
            .map(|&i| pts[i].iter().zip(p0).map(|(a, b)| a - b).collect())
            .collect();
        let Some(n) = normal_of(&diffs, d) else { continue };
        let c = dot(&n, p0);
        let vals: Vec<i64> = pts.iter().map(|p| dot(&n, p) - c).collect();
        if vals.iter().all(|&v| v >= 0) {
            facets.insert(Facet { n, c });
        } else if vals.iter().all(|&v| v <= 0) {
            facets.insert(Facet {
                n: n.iter().map(|x| -x).collect(),
                c: -c,
            });
        }
    }
    facets.into_iter().collect()
}

fn frame_of(pts: &[Vec<i64>]) -> Frame {
    let ambient = pts[0].len();
    let origin = pts[0].clone();
    let diffs: Vec<Vec<i64>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(&origin).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() || diffs.iter().all(|d| d.iter().all(|&x| x == 0)) {
        let normals = (0..ambient)
            .map(|i| {
                let mut e = vec![0; ambient];
                e[i] = 1;
                e
            })
            .collect();
        return Frame {
            origin,
            basis: Vec::new(),
            coords: Vec::new(),
            normals,
        };
    }
    let w = IntMatrix::from_rows(&diffs);
    let (_, d, v) = smith_normal_form(&w);
    let rank = (0..d.rows().min(d.cols())).filter(|&i| !d.get(i, i).is_zero()).count();
    let vinv = v.integer_inverse().expect("unimodular transform");
    let vi = vinv.to_i64_rows();
    let vc = v.to_i64_cols();
    Frame {
        origin,
        basis: vi[..rank].to_vec(),
        coords: vc[..rank].to_vec(),
        normals: vc[rank..].to_vec(),
    }
}

/// Convex hull with facet inequalities.
pub fn hull_and_facets(pts: &PointConfig) -> Result<Polytope> {
    if pts.points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut uniq: Vec<Vec<i64>> = pts.points.clone();
    uniq.sort();
    uniq.dedup();
    let frame = frame_of(&uniq);
    let dim = frame.basis.len();
    if dim > 4 {
        return Err(Error::UnsupportedDimension(dim));
    }
    let ipts: Vec<Vec<i64>> = uniq.iter().map(|p| frame.to_intrinsic(p)).collect();
    let ifacets = full_dim_facets(&ipts, dim);
    let mut ivertices = Vec::new();
    let mut vertices = Vec::new();
    for (p, y) in uniq.iter().zip(&ipts) {
        let tight: Vec<Vec<i64>> = ifacets
            .iter()
            .filter(|f| f.value(y) == 0)
            .map(|f| f.n.clone())
            .collect();
        let is_vertex = dim == 0 || (!tight.is_empty() && IntMatrix::from_rows(&tight).rank() == dim);
        if is_vertex {
            ivertices.push(y.clone());
            vertices.push(p.clone());
        }
    }
    let ambient = pts.dim;
    let lift = |n: &[i64], c: i64| -> Facet {
        let mut an = vec![0i64; ambient];
        for (row, &nk) in frame.coords.iter().zip(n) {
            for (a, r) in an.iter_mut().zip(row) {
                *a += nk * r;
            }
        }
        let ac = c + dot(&an, &frame.origin);
        Facet { n: an, c: ac }
    };
    let facets: Vec<Facet> = ifacets.iter().map(|f| lift(&f.n, f.c)).collect();
    let equations = equations_of(&frame);
    Ok(Polytope {
        dim,
        ambient,
        vertices,
        facets,
        equations,
        frame,
        ivertices,
        ifacets,
    })
}

fn equations_of(frame: &Frame) -> Vec<Facet> {
    frame
        .normals
        .iter()
        .map(|n| Facet {
            n: n.clone(),
            c: dot(n, &frame.origin),
        })
        .collect()
}

/// Integer points of `dilate·P`, sorted; relative interior only when asked.
pub fn lattice_points(p: &Polytope, dilate: u64, interior_only: bool) -> Result<Vec<Vec<i64>>> {
    lattice_points_with_budget(p, dilate, interior_only, DEFAULT_BUDGET)
}

pub fn lattice_points_with_budget(
    p: &Polytope,
    dilate: u64,
    interior_only: bool,
    budget: u64,
) -> Result<Vec<Vec<i64>>> {
    if dilate == 0 {
        return Err(Error::InvalidArgument("dilation factor must be positive".into()));
    }
    let m = dilate as i64;
    let d = p.dim;
    let mut lo = vec![i64::MAX; d];
    let mut hi = vec![i64::MIN; d];
    for v in &p.ivertices {
        for k in 0..d {
            lo[k] = lo[k].min(v[k] * m);
            hi[k] = hi[k].max(v[k] * m);
        }
    }
    let needed: u128 = (0..d).map(|k| (hi[k] - lo[k] + 1) as u128).product();
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { budget, needed });
    }
    let mut out = Vec::new();
    let mut y = lo.clone();
    loop {
        let inside = p.ifacets.iter().all(|f| {
            let v = dot(&f.n, &y) - f.c * m;
            if interior_only {
                v > 0
            } else {
                v >= 0
            }
        });
        if inside {
            out.push(p.frame.to_ambient(&y, m));
        }
        let mut k = 0;
        loop {
            if k == d {
                out.sort();
                return Ok(out);
            }
            if y[k] < hi[k] {
                y[k] += 1;
                break;
            }
            y[k] = lo[k];
            k += 1;
        }
    }
}

/// Pulling triangulation; returns index sets into `pts`.
fn triangulate(pts: &[Vec<i64>]) -> Result<Vec<Vec<usize>>> {
    let cfg = PointConfig::new(pts.to_vec())?;
    let poly = hull_and_facets(&cfg)?;
    let vi: Vec<usize> = (0..pts.len())
        .filter(|&i| poly.vertices.contains(&pts[i]))
        .fold(Vec::new(), |mut acc, i| {
            if !acc.iter().any(|&j: &usize| pts[j] == pts[i]) {
                acc.push(i);
            }
            acc
        });
    if vi.len() == poly.dim + 1 {
        return Ok(vec![vi]);
    }
    let apex = vi[0];
    let mut out = Vec::new();
    for f in &poly.facets {
        if f.value(&pts[apex]) == 0 {
            continue;
        }
        let face: Vec<usize> = vi.iter().copied().filter(|&i| f.value(&pts[i]) == 0).collect();
        let face_pts: Vec<Vec<i64>> = face.iter().map(|&i| pts[i].clone()).collect();
        for s in triangulate(&face_pts)? {
            let mut simplex = vec![apex];
            simplex.extend(s.iter().map(|&k| face[k]));
            out.push(simplex);
        }
    }
    Ok(out)
}

/// Simplices of a pulling triangulation, as vertex lists.
pub fn triangulation(p: &Polytope) -> Result<Vec<Vec<Vec<i64>>>> {
    let simplices = triangulate(&p.vertices)?;
    Ok(simplices
        .into_iter()
        .map(|s| s.into_iter().map(|i| p.vertices[i].clone()).collect())
        .collect())
}

/// `dim!` times the Euclidean volume, in the ambient lattice.
pub fn normalized_volume(p: &Polytope) -> Result<u64> {
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            dim: p.dim,
            ambient: p.ambient,
        });
    }
    relative_normalized_volume(p)
}

/// Normalized volume in the lattice of the affine span.
pub fn relative_normalized_volume(p: &Polytope) -> Result<u64> {
    if p.dim == 0 {
        return Ok(1);
    }
    let mut total = BigInt::zero();
    for s in triangulate(&p.ivertices)? {
        let v0 = &p.ivertices[s[0]];
        let rows: Vec<Vec<i64>> = s[1..]
            .iter()
            .map(|&i| p.ivertices[i].iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect();
        total += IntMatrix::from_rows(&rows).det().abs();
    }
    total.to_u64().ok_or_else(|| Error::Precision("value exceeds u64".into()))
}

/// Closed lattice-point counts `L(0), …, L(dim)`.
pub fn ehrhart_counts(p: &Polytope, budget: u64) -> Result<Vec<u64>> {
    let mut counts = vec![1u64];
    for m in 1..=p.dim as u64 {
        counts.push(lattice_points_with_budget(p, m, false, budget)?.len() as u64);
    }
    Ok(counts)
}

/// Ehrhart polynomial interpolated from `L(0), …, L(dim)`.
pub fn ehrhart_polynomial(p: &Polytope) -> Result<UniPoly> {
    let counts = ehrhart_counts(p, DEFAULT_BUDGET)?;
    Ok(interpolate(&counts))
}

/// Lagrange interpolation through `(k, values[k])`.
pub fn interpolate(values: &[u64]) -> UniPoly {
    let n = values.len();
    let mut acc = UniPoly::zero();
    for (k, &v) in values.iter().enumerate() {
        let mut basis = UniPoly::constant(Rat::from_integer(BigInt::from(v)));
        for j in 0..n {
            if j != k {
                let lin = UniPoly::from_coeffs(vec![-int(j as i64), Rat::one()]);
                basis = &(&basis * &lin).scale(&(Rat::one() / int(k as i64 - j as i64))) + &UniPoly::zero();
            }
        }
        acc = &acc + &basis;
    }
    acc
}

/// δ-vector of length `dim + 1`.
pub fn delta_vector(p: &Polytope) -> Result<Vec<u64>> {
    delta_vector_with_budget(p, DEFAULT_BUDGET)
}

pub fn delta_vector_with_budget(p: &Polytope, budget: u64) -> Result<Vec<u64>> {
    let d = p.dim;
    let counts = ehrhart_counts(p, budget)?;
    let mut out = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut s = BigInt::zero();
        for j in 0..=k {
            let term = crate::exact::rat::binomial((d + 1) as u64, j as u64) * BigInt::from(counts[k - j]);
            if j % 2 == 0 {
                s += term;
            } else {
                s -= term;
            }
        }
        out.push(s.to_u64().ok_or_else(|| Error::Precision("value exceeds u64".into()))?);
    }
    Ok(out)
}

/// A label-preserving unimodular affine map `x ↦ T·x + t` with `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub t_matrix: IntMatrix,
    pub translation: Vec<i64>,
    pub perm: Vec<usize>,
}

impl AffineMap {
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.t_matrix
            .mul_vec(&xb)
            .iter()
            .zip(&self.translation)
            .map(|(a, b)| a.to_i64().expect("fits") + b)
            .collect()
    }
}

/// Search label-preserving permutations for a unimodular affine equivalence.
/// Configurations whose affine span is not full-dimensional are not handled
/// and yield `None`.
pub fn affine_equivalent(a: &PointConfig, b: &PointConfig) -> Option<AffineMap> {
    if a.dim != b.dim || a.len() != b.len() || a.is_empty() {
        return None;
    }
    let d = a.dim;
    let n = a.len();
    let base = 0usize;
    let diffs: Vec<Vec<i64>> = (0..n)
        .map(|i| a.points[i].iter().zip(&a.points[base]).map(|(x, y)| x - y).collect())
        .collect();
    let mut chosen: Vec<usize> = Vec::new();
    for i in 1..n {
        let mut trial: Vec<Vec<i64>> = chosen.iter().map(|&k| diffs[k].clone()).collect();
        trial.push(diffs[i].clone());
        if IntMatrix::from_rows(&trial).rank() == trial.len() {
            chosen.push(i);
            if chosen.len() == d {
                break;
            }
        }
    }
    if chosen.len() < d {
        return None;
    }
    let x = IntMatrix::from_cols(&chosen.iter().map(|&k| diffs[k].clone()).collect::<Vec<_>>());
    let xinv = x.rational_inverse()?;
    let labels_ok = |i: usize, j: usize| match (&a.labels, &b.labels) {
        (Some(la), Some(lb)) => la[i] == lb[j],
        _ => true,
    };
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(0, n, &mut perm, &mut used, &labels_ok, &mut |perm| {
        try_perm(a, b, perm, base, &chosen, &xinv)
    })
}

fn search<F, G>(
    i: usize,
    n: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    ok: &F,
    visit: &mut G,
) -> Option<AffineMap>
where
    F: Fn(usize, usize) -> bool,
    G: FnMut(&[usize]) -> Option<AffineMap>,
{
    if i == n {
        return visit(perm);
    }
    for j in 0..n {
        if !used[j] && ok(i, j) {
            used[j] = true;
            perm[i] = j;
            if let Some(m) = search(i + 1, n, perm, used, ok, visit) {
                return Some(m);
            }
            used[j] = false;
        }
    }
    None
}

fn try_perm(
    a: &PointConfig,
    b: &PointConfig,
    perm: &[usize],
    base: usize,
    chosen: &[usize],
    xinv: &[Vec<Rat>],
) -> Option<AffineMap> {
    let d = a.dim;
    let b0 = &b.points[perm[base]];
    let y: Vec<Vec<i64>> = chosen
        .iter()
        .map(|&k| b.points[perm[k]].iter().zip(b0).map(|(p, q)| p - q).collect())
        .collect();
    // T[r][c] = Σ_k Y[r][k] · Xinv[k][c], with Y's columns the image differences.
    let mut t = IntMatrix::zeros(d, d);
    for r in 0..d {
        for c in 0..d {
            let mut s = Rat::zero();
            for k in 0..d {
                s += Rat::from_integer(BigInt::from(y[k][r])) * &xinv[k][c];
            }
            if !s.is_integer() {
                return None;
            }
            t.set(r, c, s.to_integer());
        }
    }
    if !t.det().abs().is_one() {
        return None;
    }
    let a0: Vec<BigInt> = a.points[base].iter().map(|&v| BigInt::from(v)).collect();
    let ta0 = t.mul_vec(&a0);
    let translation: Vec<i64> = b0
        .iter()
        .zip(&ta0)
        .map(|(p, q)| p - q.to_i64().unwrap_or(0))
        .collect();
    let map = AffineMap {
        t_matrix: t,
        translation,
        perm: perm.to_vec(),
    };
    for (i, p) in a.points.iter().enumerate() {
        if map.apply(p) != b.points[perm[i]] {
            return None;
        }
    }
    Some(map)
}
