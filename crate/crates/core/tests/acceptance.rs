//! Acceptance criteria 1-13. Each criterion recomputes its expected values
//! with small oracles defined in this file and compares them with the
//! library. One PASS/FAIL line per criterion goes to stderr (uncaptured).

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use hgmkit::conic::{analyze, cover_fiber_counts, critical_alpha_certificate, smoothness_certificate, AnalysisOptions, ConicAnalysis};
use hgmkit::exact::{int, parse_rat, rat, LaurentPoly, Rat};
use hgmkit::gkz::{build_gkz, count_torus_points, realize_monomials, reference_model, restrict_to_line, transported_simplex_model};
use hgmkit::hodge::reference_table;
use hgmkit::hypergeom::{
    bh_ratio, build_cofactor, build_irreducible_operator, build_reducible_operator, reduced_exponents, series, singular_value, GammaList,
};
use hgmkit::lattice::normalized_volume;
use hgmkit::monodromy::{run, ContinuationConfig};
use hgmkit::ore::OreOp;

const GAMMA: [i64; 6] = [-18, -1, 2, 3, 5, 9];

struct Outcome {
    k: usize,
    title: &'static str,
    lines: Vec<(String, bool, String)>,
}

impl Outcome {
    fn new(k: usize, title: &'static str) -> Self {
        Self { k, title, lines: Vec::new() }
    }

    fn check(&mut self, name: &str, pass: bool, detail: impl ToString) {
        self.lines.push((name.to_string(), pass, detail.to_string()));
    }

    fn finish(self) {
        let pass = self.lines.iter().all(|l| l.1);
        let mut out = format!("criterion {:>2} ({}): {}\n", self.k, self.title, if pass { "PASS" } else { "FAIL" });
        for (name, ok, detail) in &self.lines {
            let mut detail = detail.clone();
            if detail.len() > 300 {
                detail.truncate(300);
                detail.push_str("...");
            }
            out.push_str(&format!("    [{}] {name}: {detail}\n", if *ok { "ok" } else { "FAIL" }));
        }
        let _ = std::io::stderr().write_all(out.as_bytes());
        let failed: Vec<&str> = self.lines.iter().filter(|l| !l.1).map(|l| l.0.as_str()).collect();
        assert!(failed.is_empty(), "criterion {} failed: {failed:?}", self.k);
    }
}

// ---------- exact oracles ----------

type Terms = BTreeMap<Vec<i64>, Rat>;
type RPoly = Vec<Rat>;
type IPoly = Vec<i64>;

fn terms(list: &[(Rat, &[i64])]) -> Terms {
    let mut out = Terms::new();
    for (c, e) in list {
        *out.entry(e.to_vec()).or_insert_with(Rat::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Terms of `p` with exponents listed in the variable order `order`.
fn terms_in(p: &LaurentPoly, order: &[&str]) -> Terms {
    let idx: Vec<Option<usize>> = order.iter().map(|n| p.var_index(n)).collect();
    let mut out = Terms::new();
    for (e, c) in p.terms() {
        let covered: i64 = idx.iter().flatten().map(|&i| e[i].abs()).sum();
        assert_eq!(covered, e.iter().map(|x| x.abs()).sum::<i64>(), "variable outside {order:?} in {p}");
        let key: Vec<i64> = idx.iter().map(|i| i.map_or(0, |i| e[i])).collect();
        out.insert(key, c.clone());
    }
    out
}

fn show(v: &[Rat]) -> String {
    format!("[{}]", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn show_terms(t: &Terms) -> String {
    t.iter().map(|(e, c)| format!("{c}{e:?}")).collect::<Vec<_>>().join(" + ")
}

fn rpow(x: &Rat, e: i64) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

fn eval_terms(t: &Terms, x: &[Rat]) -> Rat {
    t.iter()
        .map(|(e, c)| e.iter().zip(x).fold(c.clone(), |acc, (&k, v)| acc * rpow(v, k)))
        .fold(Rat::zero(), |a, b| a + b)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `A_j = ∏_{γ<0} (|γ| j)! / ∏_{γ>0} (γ j)!`.
fn series_oracle(g: &[i64], j: u64) -> Rat {
    let num = g.iter().filter(|&&x| x < 0).fold(BigInt::one(), |acc, &x| acc * factorial(x.unsigned_abs() * j));
    let den = g.iter().filter(|&&x| x > 0).fold(BigInt::one(), |acc, &x| acc * factorial(x as u64 * j));
    Rat::new(num, den)
}

fn rtrim(mut p: RPoly) -> RPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn rmul(a: &[Rat], b: &[Rat]) -> RPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rtrim(out)
}

fn radd(a: &[Rat], b: &[Rat]) -> RPoly {
    let n = a.len().max(b.len());
    let z = Rat::zero();
    rtrim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

/// `p(x + s)`.
fn rshift(p: &[Rat], s: &Rat) -> RPoly {
    let mut out: RPoly = vec![];
    let lin = vec![s.clone(), Rat::one()];
    for c in p.iter().rev() {
        out = radd(&rmul(&out, &lin), &[c.clone()]);
    }
    out
}

fn reval(p: &[Rat], x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

fn from_roots(roots: &[Rat], sign: i64) -> RPoly {
    roots.iter().fold(vec![Rat::one()], |acc, r| rmul(&acc, &[-r * int(sign), Rat::one()]))
}

fn monic(p: &[Rat]) -> RPoly {
    let lead = p.last().expect("nonzero").clone();
    p.iter().map(|c| c / &lead).collect()
}

fn ore_parts(op: &OreOp) -> BTreeMap<i64, RPoly> {
    op.parts().map(|(e, p)| (*e, rtrim(p.coeffs().to_vec()))).filter(|(_, p)| !p.is_empty()).collect()
}

/// `(Σ α^a P_a(D))(Σ α^b Q_b(D)) = Σ α^{a+b} P_a(D + b) Q_b(D)` for `D = α d/dα`.
fn ore_product(p: &BTreeMap<i64, RPoly>, q: &BTreeMap<i64, RPoly>) -> BTreeMap<i64, RPoly> {
    let mut out: BTreeMap<i64, RPoly> = BTreeMap::new();
    for (a, pa) in p {
        for (b, qb) in q {
            let term = rmul(&rshift(pa, &int(*b)), qb);
            let slot = out.entry(a + b).or_default();
            *slot = radd(slot, &term);
        }
    }
    out.retain(|_, v| !v.is_empty());
    out
}

fn imul(a: &[i64], b: &[i64]) -> IPoly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials with monic divisor.
fn idiv(a: &[i64], b: &[i64]) -> IPoly {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    assert_eq!(*b.last().unwrap(), 1);
    let mut q = vec![0; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    assert!(r.iter().all(|&x| x == 0), "inexact division");
    q
}

fn t_n_minus_one(n: usize) -> IPoly {
    let mut p = vec![0; n + 1];
    p[0] = -1;
    p[n] = 1;
    p
}

fn phi(n: usize) -> IPoly {
    (1..n).filter(|d| n % d == 0).fold(t_n_minus_one(n), |acc, d| idiv(&acc, &phi(d)))
}

fn totient(n: usize) -> usize {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count()
}

/// `∏ (t - e^{2πi b})` over a multiset of rationals in `[0, 1)` or `(0, 1]`, as a product of cyclotomic factors.
fn root_product(exps: &[Rat]) -> Option<(IPoly, BTreeMap<usize, usize>)> {
    let mut by_den: BTreeMap<usize, usize> = BTreeMap::new();
    for e in exps {
        let r = e - e.floor();
        *by_den.entry(r.denom().try_into().ok()?).or_default() += 1;
    }
    let mut p = vec![1];
    let mut mult = BTreeMap::new();
    for (&n, &count) in &by_den {
        if count % totient(n) != 0 {
            return None;
        }
        let m = count / totient(n);
        mult.insert(n, m);
        for _ in 0..m {
            p = imul(&p, &phi(n));
        }
    }
    Some((p, mult))
}

/// Multisets `{k/γ}` for positive and `{k/|γ|}` for negative entries with the common part removed.
fn exponent_oracle(g: &[i64]) -> (Vec<Rat>, Vec<Rat>) {
    let fr = |sign: i64| -> Vec<Rat> {
        let mut v: Vec<Rat> = g.iter().filter(|&&x| x * sign > 0).flat_map(|&x| (0..x.abs()).map(move |k| rat(k, x.abs()))).collect();
        v.sort();
        v
    };
    let (mut s0, mut si) = (fr(1), fr(-1));
    let mut i = 0;
    while i < s0.len() {
        if let Some(j) = si.iter().position(|x| *x == s0[i]) {
            si.remove(j);
            s0.remove(i);
        } else {
            i += 1;
        }
    }
    let si: Vec<Rat> = si.into_iter().map(|x| if x.is_zero() { Rat::one() } else { x }).collect();
    (s0, si)
}

fn rank(mut m: Vec<Vec<Rat>>) -> usize {
    let (rows, cols) = (m.len(), m.first().map_or(0, Vec::len));
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

fn det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Rat::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let x = &f * &a[c][j];
                a[i][j] -= x;
            }
        }
    }
    d
}

fn inverse(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(p, c);
        let piv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &piv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let x = &f * &a[c][j];
                    a[i][j] -= x;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn to_rat(m: &[Vec<i64>]) -> Vec<Vec<Rat>> {
    m.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
}

/// Whether `U·a = b` for some unimodular integer `U` (`a`, `b` of full row rank).
fn unimodularly_related(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    let (r, c) = (a.len(), a[0].len());
    let (ar, br) = (to_rat(a), to_rat(b));
    let mut chosen = Vec::new();
    for j in 0..c {
        let mut trial = chosen.clone();
        trial.push(j);
        let sub: Vec<Vec<Rat>> = (0..r).map(|i| trial.iter().map(|&k| ar[i][k].clone()).collect()).collect();
        if rank(sub) == trial.len() {
            chosen = trial;
        }
    }
    if chosen.len() != r {
        return false;
    }
    let sub = |m: &Vec<Vec<Rat>>| -> Vec<Vec<Rat>> { (0..r).map(|i| chosen.iter().map(|&k| m[i][k].clone()).collect()).collect() };
    let Some(inv) = inverse(&sub(&ar)) else { return false };
    let bs = sub(&br);
    let u: Vec<Vec<Rat>> = (0..r).map(|i| (0..r).map(|j| (0..r).map(|k| &bs[i][k] * &inv[k][j]).sum()).collect()).collect();
    if u.iter().flatten().any(|x| !x.is_integer()) || det(&u).abs() != Rat::one() {
        return false;
    }
    (0..r).all(|i| (0..c).all(|j| (0..r).map(|k| &u[i][k] * &ar[k][j]).sum::<Rat>() == br[i][j]))
}

/// Interior lattice points of the convex hull of plane points.
fn interior_points_2d(pts: &[(i64, i64)]) -> usize {
    let mut p = pts.to_vec();
    p.sort();
    p.dedup();
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> = if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
        for &q in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0 {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
    }
    let (x0, x1) = (p.iter().map(|q| q.0).min().unwrap(), p.iter().map(|q| q.0).max().unwrap());
    let (y0, y1) = (p.iter().map(|q| q.1).min().unwrap(), p.iter().map(|q| q.1).max().unwrap());
    let mut count = 0;
    for x in x0..=x1 {
        for y in y0..=y1 {
            if (0..hull.len()).all(|i| cross(hull[i], hull[(i + 1) % hull.len()], (x, y)) > 0) {
                count += 1;
            }
        }
    }
    count
}

/// Facet inequalities `n·x <= c` of a full-dimensional polytope in Z^4, by brute force over 4-subsets.
fn facets_4d(pts: &[Vec<i64>]) -> Vec<(Vec<i64>, i64)> {
    let minor3 = |rows: &[[i64; 4]; 3], skip: usize| -> i64 {
        let cols: Vec<usize> = (0..4).filter(|&j| j != skip).collect();
        let m: Vec<Vec<Rat>> = rows.iter().map(|r| cols.iter().map(|&j| int(r[j])).collect()).collect();
        det(&m).to_integer().try_into().unwrap()
    };
    let mut out: Vec<(Vec<i64>, i64)> = Vec::new();
    let n = pts.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let diff = |q: usize| -> [i64; 4] { std::array::from_fn(|j| pts[q][j] - pts[a][j]) };
                    let rows = [diff(b), diff(c), diff(d)];
                    let mut normal: Vec<i64> = (0..4).map(|j| if j % 2 == 0 { minor3(&rows, j) } else { -minor3(&rows, j) }).collect();
                    if normal.iter().all(|&x| x == 0) {
                        continue;
                    }
                    let g = normal.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
                    normal.iter_mut().for_each(|x| *x /= g);
                    let dot = |q: &[i64]| normal.iter().zip(q).map(|(x, y)| x * y).sum::<i64>();
                    let off = dot(&pts[a]);
                    let vals: Vec<i64> = pts.iter().map(|q| dot(q)).collect();
                    let facet = if vals.iter().all(|&v| v <= off) {
                        (normal.clone(), off)
                    } else if vals.iter().all(|&v| v >= off) {
                        (normal.iter().map(|x| -x).collect(), -off)
                    } else {
                        continue;
                    };
                    if !out.contains(&facet) {
                        out.push(facet);
                    }
                }
            }
        }
    }
    out
}

fn modpow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn rat_mod(c: &Rat, p: u64) -> u64 {
    let pm = BigInt::from(p);
    let n: u64 = (c.numer() % &pm + &pm).try_into().unwrap();
    let d: u64 = (c.denom() % &pm + &pm).try_into().unwrap();
    n % p * modpow(d, p - 2, p) % p
}

/// Zeros of `Σ c·α^a·u^e` on the torus `(F_p^×)^n` for every `α ∈ F_p^×`; terms are `(c, a, e)`.
fn torus_counts(t: &[(Rat, i64, Vec<i64>)], n: usize, p: u64) -> Vec<u64> {
    let q = p - 1;
    let e_mod = |e: i64| e.rem_euclid(q as i64) as u64;
    let coef: Vec<Vec<u64>> = (1..p).map(|al| t.iter().map(|(c, a, _)| rat_mod(c, p) * modpow(al, e_mod(*a), p) % p).collect()).collect();
    let mut counts = vec![0u64; (p - 1) as usize];
    let mut u = vec![1u64; n];
    loop {
        let mono: Vec<u64> = t.iter().map(|(_, _, e)| e.iter().zip(&u).fold(1, |acc, (&k, &x)| acc * modpow(x, e_mod(k), p) % p)).collect();
        for (ai, cs) in coef.iter().enumerate() {
            if cs.iter().zip(&mono).fold(0, |acc, (c, m)| (acc + c * m) % p) == 0 {
                counts[ai] += 1;
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return counts;
            }
            u[i] += 1;
            if u[i] < p {
                break;
            }
            u[i] = 1;
            i += 1;
        }
    }
}

fn legendre(x: u64, p: u64) -> i64 {
    match modpow(x, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

fn analysis() -> ConicAnalysis {
    analyze(&reference_model(), &AnalysisOptions::default()).expect("conic analysis")
}

fn reference_terms() -> Vec<(Rat, i64, Vec<i64>)> {
    vec![
        (int(1), 0, vec![1, 1, 1, 0]),
        (int(-1), -1, vec![0, 0, 0, 2]),
        (int(1), 0, vec![0, 0, 0, 1]),
        (int(1), 0, vec![3, 1, 0, 0]),
        (int(1), 0, vec![0, 3, 0, 0]),
        (int(1), 0, vec![1, 0, 2, 0]),
    ]
}

fn simplex_terms() -> Vec<(Rat, i64, Vec<i64>)> {
    vec![
        (int(1), 0, vec![0, 0, 0, 0]),
        (int(1), 0, vec![1, 0, 0, 0]),
        (int(1), 0, vec![0, 1, 0, 0]),
        (int(1), 0, vec![0, 0, 1, 0]),
        (int(1), 0, vec![0, 0, 0, 1]),
        (int(-1), -1, vec![2, 3, 5, 9]),
    ]
}

fn as_terms(t: &[(Rat, i64, Vec<i64>)]) -> Terms {
    let mut out = Terms::new();
    for (c, a, e) in t {
        let mut k = vec![*a];
        k.extend(e);
        *out.entry(k).or_insert_with(Rat::zero) += c;
    }
    out
}

/// `Δ = 4u1³u2 + 4u2³ + α - u1u2²` in the order `(α, u1, u2)`.
fn delta_terms() -> Terms {
    terms(&[(int(4), &[0, 3, 1]), (int(4), &[0, 0, 3]), (int(1), &[1, 0, 0]), (int(-1), &[0, 1, 2])])
}

/// The critical point of `Δ` on the torus: `∂_{u1}Δ = u2(12u1² - u2)` forces `u2 = 12u1²`,
/// then `∂_{u2}Δ = u1³(1728u1 - 20)` forces `u1 = 5/432`. Returns `(u1, u2, α)` with `Δ = 0`.
fn delta_critical_point() -> (Rat, Rat, Rat) {
    let u1 = rat(5, 432);
    let u2 = int(12) * &u1 * &u1;
    let alpha = &u1 * &u2 * &u2 - int(4) * &u1 * &u1 * &u1 * &u2 - int(4) * &u2 * &u2 * &u2;
    (u1, u2, alpha)
}

fn gamma() -> GammaList {
    GammaList::new(GAMMA.to_vec()).unwrap()
}

// ---------- criteria ----------

#[test]
fn criterion_01_series_and_operator() {
    let mut o = Outcome::new(1, "series and operator");
    let g = gamma();
    let a: Vec<Rat> = (0..=60).map(|j| series_oracle(&GAMMA, j)).collect();
    o.check("A_1 = 12252240", a[1] == int(12252240), &a[1]);
    let lib = series(&g, 61);
    o.check("library series matches the factorial formula", lib == a, format!("{} coefficients", lib.len()));
    let h = ore_parts(&build_irreducible_operator(&g));
    let first_bad = (0..60i64).find(|&n| {
        let c: Rat = h.iter().filter(|(e, _)| (0..=60).contains(&(n - **e))).map(|(e, p)| reval(p, &int(n - e)) * &a[(n - e) as usize]).sum();
        !c.is_zero()
    });
    o.check("H annihilates the series through degree 59", first_bad.is_none(), format!("first nonzero degree {first_bad:?}"));
    o.finish();
}

#[test]
fn criterion_02_singular_value() {
    let mut o = Outcome::new(2, "singular value");
    let closed = rat(3125, 1) / (rpow(&int(3), 15) * rpow(&int(2), 16));
    let product = GAMMA.iter().fold(Rat::one(), |acc, &x| acc * rpow(&int(x.abs()), x));
    o.check("3^15 * 2^16 = 940369969152", rpow(&int(3), 15) * rpow(&int(2), 16) == int(940369969152), "");
    o.check("prod |γ|^γ = 5^5/(3^15 2^16)", product == closed, &product);
    let lib = singular_value(&gamma());
    o.check("library singular value", lib == closed, &lib);
    o.finish();
}

#[test]
fn criterion_03_exponent_reduction() {
    let mut o = Outcome::new(3, "exponent reduction");
    let g = gamma();
    let (e0, ei) = exponent_oracle(&GAMMA);
    let mut expected0 = vec![rat(0, 1), rat(0, 1), rat(1, 3), rat(2, 3), rat(1, 5), rat(2, 5), rat(3, 5), rat(4, 5)];
    expected0.sort();
    let mut expected_inf = vec![rat(1, 6), rat(5, 6), rat(1, 18), rat(5, 18), rat(7, 18), rat(11, 18), rat(13, 18), rat(17, 18)];
    expected_inf.sort();
    o.check("cancelled multiset at 0", e0 == expected0, show(&e0));
    o.check("cancelled multiset at infinity", ei == expected_inf, show(&ei));

    let lib = reduced_exponents(&g);
    let mut l0 = lib.exps0.clone();
    l0.sort();
    let mut li = lib.exps_inf.clone();
    li.sort();
    o.check("library order 8", lib.order == 8 && e0.len() == 8, lib.order);
    o.check("library exponents agree", l0 == e0 && li == ei, format!("{} / {}", show(&l0), show(&li)));

    let h = ore_parts(&build_irreducible_operator(&g));
    let p0_ok = h.get(&0).is_some_and(|p| monic(p) == from_roots(&e0, 1));
    let p1_ok = h.get(&1).is_some_and(|p| monic(p) == from_roots(&ei, -1));
    o.check("H = c0·∏(D - b) + α·c1·∏(D + a)", p0_ok && p1_ok && h.len() == 2, format!("parts at {:?}", h.keys().collect::<Vec<_>>()));
    let red = build_reducible_operator(&g).order();
    let sum_pos: i64 = GAMMA.iter().filter(|&&x| x > 0).sum();
    o.check("order of the reducible operator = 19", red == 19 && red as i64 == sum_pos, red);

    let (q0, m0) = root_product(&e0).expect("cyclotomic at 0");
    let (qi, mi) = root_product(&ei).expect("cyclotomic at infinity");
    o.check("q0 = phi1^2 phi3 phi5", m0 == BTreeMap::from([(1, 2), (3, 1), (5, 1)]), format!("{m0:?}"));
    o.check("q_inf = phi6 phi18", mi == BTreeMap::from([(6, 1), (18, 1)]), format!("{mi:?}"));
    let lhs = GAMMA.iter().filter(|&&x| x > 0).fold(qi.clone(), |acc, &x| imul(&acc, &t_n_minus_one(x as usize)));
    let rhs = GAMMA.iter().filter(|&&x| x < 0).fold(q0.clone(), |acc, &x| imul(&acc, &t_n_minus_one(x.unsigned_abs() as usize)));
    o.check("q_inf ∏(t^γ - 1) = q0 ∏(t^|γ| - 1)", lhs == rhs, format!("degree {}", lhs.len() - 1));
    let bh = bh_ratio(&g).unwrap();
    o.check("library ratio identity", bh.holds, bh.holds);
    o.finish();
}

#[test]
fn criterion_04_ore_factorization() {
    let mut o = Outcome::new(4, "operator factorization");
    let g = gamma();
    let gh = ore_product(&ore_parts(&build_cofactor(&g)), &ore_parts(&build_irreducible_operator(&g)));
    let red = ore_parts(&build_reducible_operator(&g));
    o.check("G·H = H~ coefficient by coefficient", gh == red, format!("{} parts", red.len()));
    let lib = ore_parts(&build_cofactor(&g).compose(&build_irreducible_operator(&g)));
    o.check("library composition agrees", lib == gh, "");
    let a: Vec<Rat> = (0..=40).map(|j| series_oracle(&GAMMA, j)).collect();
    let killed = (0..40i64).all(|n| {
        red.iter().filter(|(e, _)| (0..=40).contains(&(n - **e))).map(|(e, p)| reval(p, &int(n - e)) * &a[(n - e) as usize]).sum::<Rat>().is_zero()
    });
    o.check("H~ annihilates the series through degree 39", killed, killed);
    o.finish();
}

#[test]
fn criterion_05_gkz() {
    let mut o = Outcome::new(5, "GKZ realization and restriction");
    let g = gamma();
    let realized = realize_monomials(&g).unwrap();
    let reference: Vec<Vec<i64>> = vec![vec![1, 1, 1, 0], vec![0, 0, 0, 2], vec![0, 0, 0, 1], vec![3, 1, 0, 0], vec![0, 3, 0, 0], vec![1, 0, 2, 0]];
    let relation: Vec<i64> = (0..4).map(|j| GAMMA.iter().zip(&reference).map(|(gi, m)| gi * m[j]).sum()).collect();
    o.check("reference columns satisfy Σ γ_i m_i = 0", relation == vec![0; 4], format!("{relation:?}"));
    let diffs = |pts: &[Vec<i64>]| -> Vec<Vec<i64>> { (0..4).map(|j| (1..6).map(|i| pts[i][j] - pts[0][j]).collect()).collect() };
    let eq = unimodularly_related(&diffs(&realized.monomials.points), &diffs(&reference));
    o.check("realized monomials affinely equivalent to the reference columns", eq, format!("{:?}", realized.monomials.points));

    let expected_rows: Vec<Vec<i64>> =
        vec![vec![1, 1, 1, 1, 1, 1], vec![1, 0, 0, 3, 0, 1], vec![1, 0, 0, 1, 3, 0], vec![1, 0, 0, 0, 0, 2], vec![0, 2, 1, 0, 0, 0]];
    let sys = build_gkz(&reference_model().monomials).unwrap();
    o.check("Euler rows row-equivalent to the expected rows", unimodularly_related(&sys.euler_ops, &expected_rows), format!("{:?}", sys.euler_ops));
    let sys_r = build_gkz(&realized.monomials).unwrap();
    o.check("realized Euler rows row-equivalent", unimodularly_related(&sys_r.euler_ops, &expected_rows), format!("{:?}", sys_r.euler_ops));

    let restricted = ore_parts(&restrict_to_line(&sys_r, &g, &realized.kexp).unwrap());
    let red = ore_parts(&build_reducible_operator(&g));
    let ratio = red.iter().find_map(|(e, p)| {
        let (k, c) = p.iter().enumerate().find(|(_, c)| !c.is_zero())?;
        restricted.get(e).and_then(|q| q.get(k)).map(|r| r / c)
    });
    let unit = ratio.as_ref().is_some_and(|c| {
        !c.is_zero()
            && restricted.keys().chain(red.keys()).all(|e| {
                let z: RPoly = vec![];
                let a = restricted.get(e).unwrap_or(&z);
                let b: RPoly = rtrim(red.get(e).unwrap_or(&z).iter().map(|x| x * c).collect());
                *a == b
            })
    });
    let orders = |m: &BTreeMap<i64, RPoly>| m.iter().map(|(e, p)| (*e, p.iter().position(|c| !c.is_zero()).unwrap_or(0), p.len() - 1)).collect::<Vec<_>>();
    o.check(
        "restriction equals H~ up to a nonzero rational unit",
        unit,
        format!("(alpha power, lowest D power, highest D power): restricted {:?}, H~ {:?}", orders(&restricted), orders(&red)),
    );
    o.finish();
}

#[test]
fn criterion_06_coordinate_change() {
    let mut o = Outcome::new(6, "coordinate change");
    let images: [[i64; 4]; 4] = [[-1, -1, -1, 1], [2, 0, -1, 0], [-1, 2, -1, 0], [0, -1, 1, 0]];
    let mut out = Terms::new();
    for (k, c) in as_terms(&simplex_terms()) {
        let mut e = vec![k[0]];
        e.extend((0..4).map(|j| (0..4).map(|i| k[i + 1] * images[i][j]).sum::<i64>() + i64::from(j < 3)));
        *out.entry(e).or_insert_with(Rat::zero) += c;
    }
    let expected = as_terms(&reference_terms());
    o.check("oracle substitution times u1u2u3 = reference polynomial", out == expected, show_terms(&out));
    let lib = terms_in(&transported_simplex_model().unwrap(), &["alpha", "u1", "u2", "u3", "u4"]);
    o.check("library transport agrees term for term", lib == expected, show_terms(&lib));
    o.finish();
}

#[test]
fn criterion_07_conic_pipeline() {
    let mut o = Outcome::new(7, "conic pipeline");
    let a = analysis();
    let v = ["alpha", "u1", "u2"];
    let q = rat(1, 4);
    let d0 = terms(&[(int(1), &[0, 3, 1]), (int(1), &[0, 0, 3]), (q.clone(), &[1, 0, 0]), (-q.clone(), &[0, 1, 2])]);
    let diag = [d0, terms(&[(int(1), &[0, 1, 0])]), terms(&[(int(-1), &[-1, 0, 0])])];
    let f = &a.diagonal.form;
    let diag_ok = (0..3).all(|i| (0..3).all(|j| if i == j { terms_in(f.get(i, i), &v) == diag[i] } else { f.get(i, j).is_zero() }));
    o.check("diagonal form diag(Δ/4, u1, -1/α)", diag_ok, format!("{:?}", f.to_json()));

    let delta = delta_terms();
    o.check("discriminant", terms_in(&a.delta.f, &v) == delta, &a.delta.f);

    let mut pulled = Terms::new();
    for (e, c) in &delta {
        *pulled.entry(vec![e[0] + e[1], 2 * e[1], e[2]]).or_insert_with(Rat::zero) += c;
    }
    let cover = terms(&[(int(4), &[3, 6, 1]), (int(4), &[0, 0, 3]), (int(1), &[1, 0, 0]), (int(-1), &[1, 2, 2])]);
    o.check("f_Δ(αu1², u2) = expected cover", pulled == cover, show_terms(&pulled));
    o.check("library cover", terms_in(&a.cover.model.f, &v) == cover, &a.cover.model.f);

    let n = terms(&[(int(4), &[0, 0, 3, 1]), (int(4), &[0, 1, 0, 3]), (int(1), &[1, 4, 0, 0]), (int(-1), &[0, 1, 1, 2])]);
    o.check("plane quartic N", terms_in(&a.n.f, &["alpha", "u0", "u1", "u2"]) == n, &a.n.f);
    let homogeneous = n.keys().all(|e| e[1] + e[2] + e[3] == 4);
    let mut dehom = Terms::new();
    for (e, c) in &n {
        dehom.insert(vec![e[0], e[2], e[3]], c.clone());
    }
    o.check("N is a quartic with N(1, u1, u2) = Δ", homogeneous && dehom == delta, "");

    let nt = terms(&[(int(4), &[0, 0, 0, 3]), (int(-1), &[1, 1, 2, 2]), (int(4), &[3, 0, 6, 1]), (int(1), &[1, 9, 0, 0])]);
    o.check("weighted closure N~", terms_in(&a.ntilde.f, &["alpha", "x0", "x1", "y"]) == nt, &a.ntilde.f);
    let wdeg: Vec<i64> = nt.keys().map(|e| e[1] + e[2] + 3 * e[3]).collect();
    o.check("every term of N~ has weighted degree 9 for weights (1,1,3)", wdeg.iter().all(|&d| d == 9) && a.ntilde.degree == 9, format!("{wdeg:?}"));
    let mut dehom_t = Terms::new();
    for (e, c) in &nt {
        dehom_t.insert(vec![e[0], e[2], e[3]], c.clone());
    }
    o.check("N~(1, u1, u2) = cover", dehom_t == cover, "");
    o.finish();
}

#[test]
fn criterion_08_genera_and_rank() {
    let mut o = Outcome::new(8, "genera and anti-invariant rank");
    let a = analysis();
    let plane = |t: &Terms| -> Vec<(i64, i64)> { t.keys().map(|e| (e[1], e[2])).collect() };
    let cover = terms(&[(int(4), &[3, 6, 1]), (int(4), &[0, 0, 3]), (int(1), &[1, 0, 0]), (int(-1), &[1, 2, 2])]);
    let g = interior_points_2d(&plane(&delta_terms())) as i64;
    let gt = interior_points_2d(&plane(&cover)) as i64;
    o.check("interior points of the discriminant polygon = 3", g == 3 && a.genus as i64 == g, format!("oracle {g}, library {}", a.genus));
    o.check("interior points of the cover polygon = 7", gt == 7 && a.cover_genus as i64 == gt, format!("oracle {gt}, library {}", a.cover_genus));

    // Fixed points of x1 -> -x1 on N~ in P(1,1,3): the line x1 = 0 and the point (0:1:0).
    let nt = terms(&[(int(4), &[0, 0, 0, 3]), (int(-1), &[1, 1, 2, 2]), (int(4), &[3, 0, 6, 1]), (int(1), &[1, 9, 0, 0])]);
    let on_line: BTreeMap<i64, Rat> = nt.iter().filter(|(e, _)| e[2] == 0).map(|(e, c)| (e[3], c.clone())).collect();
    let pure_cubic = on_line.keys().copied().collect::<Vec<_>>() == vec![0, 3];
    let line_points = if pure_cubic { 3 } else { 0 };
    let at_infinity = eval_terms(&nt, &[int(1), int(0), int(1), int(0)]).is_zero();
    let fixed = line_points + usize::from(at_infinity);
    o.check("fixed points = 4", fixed == 4 && a.fixed.total == 4, format!("oracle {fixed} (line {line_points}, (0:1:0) {at_infinity}), library {}", a.fixed.total));
    o.check("2g~ - 2g = 8", 2 * gt - 2 * g == 8 && a.genus_rank() == 8, 2 * gt - 2 * g);
    o.check("anti-invariant rank = 8", a.anti_invariant_rank == 8, a.anti_invariant_rank);
    let lhs = 2 * gt - 2;
    let rhs = 2 * (2 * g - 2) + fixed as i64;
    o.check("Riemann-Hurwitz 12 = 8 + 4", lhs == 12 && rhs == 12, format!("{lhs} = {rhs}"));
    o.finish();
}

/// Matrix of `u1 u3² + u1u2 u3 - u4²/α + u4 + u1³u2 + u2³` in `(u3, u4, 1)`.
fn conic_matrix(alpha: &Rat, u1: &Rat, u2: &Rat) -> Vec<Vec<Rat>> {
    let half = rat(1, 2);
    vec![
        vec![u1.clone(), int(0), u1 * u2 * &half],
        vec![int(0), -alpha.recip(), half.clone()],
        vec![u1 * u2 * &half, half, u1 * u1 * u1 * u2 + u2 * u2 * u2],
    ]
}

#[test]
fn criterion_09_rank_stratification() {
    let mut o = Outcome::new(9, "rank stratification");
    let a = analysis();
    let delta = delta_terms();
    let check_points = |pts: &[(Vec<String>, usize)], want: usize, on: bool| -> (bool, Vec<usize>) {
        let mut ranks = Vec::new();
        let mut ok = pts.len() == 10;
        for (p, lib_rank) in pts {
            let x: Vec<Rat> = p.iter().map(|s| parse_rat(s).unwrap()).collect();
            let r = rank(conic_matrix(&x[0], &x[1], &x[2]));
            ok &= r == want && *lib_rank == want && eval_terms(&delta, &x).is_zero() == on;
            ranks.push(r);
        }
        (ok, ranks)
    };
    let (off_ok, off) = check_points(&a.ranks.off_curve, 3, false);
    let (on_ok, on) = check_points(&a.ranks.on_curve, 2, true);
    o.check("rank 3 at 10 sampled points off Δ", off_ok, format!("{off:?}"));
    o.check("rank 2 at 10 sampled points on Δ", on_ok, format!("{on:?}"));

    let (u1, u2, ac) = delta_critical_point();
    let d1 = terms(&[(int(12), &[0, 2, 1]), (int(-1), &[0, 0, 2])]);
    let d2 = terms(&[(int(4), &[0, 3, 0]), (int(12), &[0, 0, 2]), (int(-2), &[0, 1, 1])]);
    let pt = [ac.clone(), u1, u2];
    let critical = eval_terms(&d1, &pt).is_zero() && eval_terms(&d2, &pt).is_zero() && eval_terms(&delta, &pt).is_zero();
    o.check("the only torus critical point of Δ sits over α_c ≠ 1", critical && ac != int(1), format!("α_c = {ac}"));
    let cert = smoothness_certificate(&a.delta, &int(1)).unwrap();
    o.check("smoothness certificate at α = 1", cert.torus_smooth && cert.witness.is_none(), format!("torus {}, affine {}", cert.torus_smooth, cert.affine_smooth));
    o.finish();
}

#[test]
fn criterion_10_dimensions() {
    let mut o = Outcome::new(10, "dimensions");
    let g = gamma();
    let pts: Vec<Vec<i64>> = vec![vec![1, 1, 1, 0], vec![0, 0, 0, 2], vec![0, 0, 0, 1], vec![3, 1, 0, 0], vec![0, 3, 0, 0], vec![1, 0, 2, 0]];
    let lifted_minor = |skip: usize| -> Rat {
        let m: Vec<Vec<Rat>> = (0..5)
            .map(|r| (0..6).filter(|&c| c != skip).map(|c| if r == 0 { int(1) } else { int(pts[c][r - 1]) }).collect())
            .collect();
        det(&m).abs()
    };
    let vol_pos: Rat = (0..6).filter(|&i| GAMMA[i] > 0).map(lifted_minor).sum();
    let vol_neg: Rat = (0..6).filter(|&i| GAMMA[i] < 0).map(lifted_minor).sum();
    let lib_vol = normalized_volume(&reference_model().newton_polytope().unwrap()).unwrap();
    o.check("circuit volume = 19 from both triangulations", vol_pos == int(19) && vol_neg == int(19), format!("{vol_pos} / {vol_neg}"));
    o.check("library volume agrees", lib_vol == 19, lib_vol);
    o.check("volume = order of H~", build_reducible_operator(&g).order() == 19, build_reducible_operator(&g).order());

    let facets = facets_4d(&pts);
    let mut interior = 0;
    for x in 0..=3 {
        for y in 0..=3 {
            for z in 0..=2 {
                for w in 0..=2 {
                    let p = [x, y, z, w];
                    if facets.iter().all(|(n, c)| n.iter().zip(&p).map(|(a, b)| a * b).sum::<i64>() < *c) {
                        interior += 1;
                    }
                }
            }
        }
    }
    let hodge: BTreeMap<(u8, u8), u64> = BTreeMap::from([((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 7), ((2, 1), 4), ((1, 2), 4)]);
    let h = |p: u8, q: u8| hodge.get(&(p, q)).copied().unwrap_or(0);
    let total: u64 = hodge.values().sum();
    let weight3: u64 = (0..=3).map(|p| h(p, 3 - p)).sum();
    o.check("table total = volume - 1 = 18", total == 18, total);
    o.check("weight-3 slice = 8 = order of H", weight3 == 8 && build_irreducible_operator(&g).order() == 8, weight3);
    o.check("interior points = h(3,0) = 0", interior == 0 && h(3, 0) == 0, format!("{interior} interior points, {} facets", facets.len()));
    o.check("table symmetric", (0..=3).all(|p| (0..=3).all(|q| h(p, q) == h(q, p))), "");
    let lib = reference_table();
    o.check("library table agrees", (0..=3).all(|p| (0..=3).all(|q| lib.get(p, q) == h(p, q))), format!("{:?}", lib.grid()));
    o.finish();
}

#[test]
fn criterion_11_monodromy() {
    let mut o = Outcome::new(11, "monodromy");
    let report = run(&gamma(), &ContinuationConfig::default()).unwrap();
    let tol = 1e-8;
    let to_f = |p: &[i64]| -> Vec<(f64, f64)> { p.iter().map(|&c| (c as f64, 0.0)).collect() };
    let q0 = to_f(&imul(&imul(&imul(&phi(1), &phi(1)), &phi(3)), &phi(5)));
    let qi = to_f(&imul(&phi(6), &phi(18)));
    let residual = |name: &str, want: &[(f64, f64)]| -> f64 {
        let Some(c) = report.charpolys.iter().find(|c| c.matrix == name) else { return f64::INFINITY };
        if c.computed.len() != want.len() {
            return f64::INFINITY;
        }
        c.computed.iter().zip(want).map(|(a, b)| (a.0 - b.0).hypot(a.1 - b.1)).fold(0.0, f64::max)
    };
    let r0 = residual("M0^-1", &q0);
    let rs = residual("(Msing*M0)^-1", &qi);
    o.check("char(M0^-1) = phi1^2 phi3 phi5", r0 < tol, format!("{r0:e}"));
    o.check("char((Msing M0)^-1) = phi6 phi18", rs < tol, format!("{rs:e}"));
    let rk = report.singular_values.iter().filter(|&&s| s > 1e-6).count();
    o.check("rank(Msing - I) = 1 at threshold 1e-6", rk == 1, format!("{:?}", report.singular_values));
    o.check("product relation", report.product_residual < tol, format!("{:e}", report.product_residual));
    o.finish();
}

#[test]
fn criterion_12_finite_fields() {
    let mut o = Outcome::new(12, "finite fields");
    let reference = reference_model();
    let simplex = hgmkit::gkz::simplex_model();
    let a = analysis();
    let cover = vec![(int(4), 3, vec![6, 1]), (int(4), 0, vec![0, 3]), (int(1), 1, vec![0, 0]), (int(-1), 1, vec![2, 2])];
    for p in [7u64, 11, 13, 31] {
        let x = torus_counts(&reference_terms(), 4, p);
        let y = torus_counts(&simplex_terms(), 4, p);
        let lib_ok = (1..p).all(|al| {
            count_torus_points(&reference.f, p, al).unwrap() == x[(al - 1) as usize] && count_torus_points(&simplex.f, p, al).unwrap() == y[(al - 1) as usize]
        });
        o.check(&format!("p = {p}: torus counts agree for every α"), x == y && lib_ok, format!("{x:?}"));

        let up = torus_counts(&cover, 2, p);
        let mut fiber_ok = true;
        let mut sums = Vec::new();
        for al in 1..p {
            let mut s: i64 = 0;
            for v in 1..p {
                for u2 in 1..p {
                    let d = (4 * modpow(v, 3, p) * u2 + 4 * modpow(u2, 3, p) + al + p * p - v * u2 % p * u2 % p) % p;
                    if d == 0 {
                        s += 1 + legendre(v * modpow(al, p - 2, p) % p, p);
                    }
                }
            }
            let (lu, ld) = cover_fiber_counts(&a.delta, &a.cover.model, p, al).unwrap();
            fiber_ok &= s == up[(al - 1) as usize] as i64 && lu as i64 == s && ld as i64 == s;
            sums.push(s);
        }
        o.check(&format!("p = {p}: cover count = quadratic-character fiber sum"), fiber_ok, format!("{sums:?}"));
    }
    o.finish();
}

#[test]
fn criterion_13_critical_fiber() {
    let mut o = Outcome::new(13, "critical fiber");
    let alpha0 = rat(3125, 1) / (rpow(&int(3), 15) * rpow(&int(2), 16));
    let (_, _, ac) = delta_critical_point();
    o.check("critical value of the discriminant = α_0", ac == alpha0, &ac);
    let cert = critical_alpha_certificate(&reference_model(), 2024).unwrap();
    o.check("certificate α = α_0", cert.alpha == alpha0, &cert.alpha);

    let al: f64 = 3125.0 / 940369969152.0;
    let t = reference_terms();
    let u = &cert.point;
    let cmul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let values: Vec<(f64, f64)> = t
        .iter()
        .map(|(c, a, e)| {
            let coef = hgmkit::exact::rat::to_f64(c) * al.powi(*a as i32);
            e.iter().zip(u).fold((coef, 0.0), |acc, (&k, &z)| (0..k).fold(acc, |acc, _| cmul(acc, z)))
        })
        .collect();
    let scale: f64 = values.iter().map(|v| v.0.hypot(v.1)).sum();
    let mut res = vec![values.iter().fold((0.0, 0.0), |s, v| (s.0 + v.0, s.1 + v.1))];
    for j in 0..4 {
        res.push(t.iter().zip(&values).fold((0.0, 0.0), |s, ((_, _, e), v)| (s.0 + e[j] as f64 * v.0, s.1 + e[j] as f64 * v.1)));
    }
    let rel = res.iter().map(|v| v.0 * v.0 + v.1 * v.1).sum::<f64>().sqrt() / scale;
    o.check("Newton residual < 1e-10", cert.residual < 1e-10 && cert.relative_residual < 1e-10, format!("{:e} (relative {:e})", cert.residual, cert.relative_residual));
    o.check("f and u·∇f vanish at the witness (relative, recomputed)", rel < 1e-10, format!("{rel:e}"));
    o.finish();
}
