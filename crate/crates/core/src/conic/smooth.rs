//! Singularity detection for plane curves by resultant elimination.

use nalgebra::Complex;
use num_traits::Zero;
use serde::Serialize;

use super::curve::{as_bivariate, PlaneCurveModel};
use crate::error::{Error, Result};
use crate::exact::rat::to_f64;
use crate::exact::{Rat, UniPoly};

/// Polynomial in `y` with coefficients in `Q[x]`, index = degree in `y`.
pub type BiPoly = Vec<UniPoly>;

fn trim(mut p: BiPoly) -> BiPoly {
    while p.last().is_some_and(UniPoly::is_zero) {
        p.pop();
    }
    p
}

fn d_dx(p: &BiPoly) -> BiPoly {
    trim(p.iter().map(UniPoly::derivative).collect())
}

fn d_dy(p: &BiPoly) -> BiPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Rat::from_integer((k as i64).into())))
            .collect(),
    )
}

/// Swap the roles of `x` and `y`.
pub fn swap_vars(p: &BiPoly) -> BiPoly {
    let dx = p.iter().filter_map(UniPoly::degree).max().unwrap_or(0);
    let mut out = vec![Vec::<Rat>::new(); dx + 1];
    for (k, c) in p.iter().enumerate() {
        for (j, v) in c.coeffs().iter().enumerate() {
            if out[j].len() <= k {
                out[j].resize(k + 1, Rat::zero());
            }
            out[j][k] = v.clone();
        }
    }
    trim(out.into_iter().map(UniPoly::from_coeffs).collect())
}

/// Determinant over `Q[x]` by fraction-free elimination.
fn poly_det(mut a: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = a.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut sign = false;
    let mut prev = UniPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// `Res_y(f, g)` via the Sylvester matrix.
pub fn resultant(f: &BiPoly, g: &BiPoly) -> UniPoly {
    let (f, g) = (trim(f.clone()), trim(g.clone()));
    if f.is_empty() || g.is_empty() {
        return UniPoly::zero();
    }
    let (m, n) = (f.len() - 1, g.len() - 1);
    if m == 0 {
        return f[0].pow(n as u32);
    }
    if n == 0 {
        return g[0].pow(m as u32);
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![UniPoly::zero(); size];
        for (k, c) in f.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![UniPoly::zero(); size];
        for (k, c) in g.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    poly_det(rows)
}

fn eval_x(p: &BiPoly, x: &Rat) -> UniPoly {
    UniPoly::from_coeffs(p.iter().map(|c| c.eval(x)).collect())
}

fn eval_c(p: &UniPoly, z: Complex<f64>) -> Complex<f64> {
    p.coeffs()
        .iter()
        .rev()
        .fold(Complex::new(0.0, 0.0), |acc, c| acc * z + Complex::new(to_f64(c), 0.0))
}

fn eval_bi_c(p: &BiPoly, x: Complex<f64>, y: Complex<f64>) -> Complex<f64> {
    p.iter().rev().fold(Complex::new(0.0, 0.0), |acc, c| acc * y + eval_c(c, x))
}

/// Complex roots by Durand–Kerner iteration in double precision.
pub fn complex_roots(p: &UniPoly) -> Vec<Complex<f64>> {
    let Some(n) = p.degree() else { return Vec::new() };
    if n == 0 {
        return Vec::new();
    }
    let lead = to_f64(p.leading().unwrap());
    let c: Vec<Complex<f64>> = p.coeffs().iter().map(|x| Complex::new(to_f64(x) / lead, 0.0)).collect();
    let eval = |z: Complex<f64>| c.iter().rev().fold(Complex::new(0.0, 0.0), |acc, a| acc * z + a);
    let radius = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex<f64>> = (0..n)
        .map(|k| Complex::from_polar(radius.min(1e3) * 0.9, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex::new(1e-12, 0.0);
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm() / (1.0 + z[i].norm()));
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

#[derive(Clone, Debug, Serialize)]
pub struct SmoothnessCertificate {
    pub alpha: String,
    /// Variable eliminated by the resultants.
    pub eliminated: String,
    pub resultant_with_dx: String,
    pub resultant_with_dy: String,
    pub gcd: String,
    /// Multiplicity of the root `0` of the gcd (points off the torus).
    pub boundary_multiplicity: usize,
    /// Nonzero candidate values checked by back-substitution.
    pub candidates_checked: usize,
    pub torus_smooth: bool,
    pub affine_smooth: bool,
    /// A singular point `(u1, u2)`, when one was found.
    pub witness: Option<(String, String)>,
}

/// Jacobian elimination at a fixed `α`: eliminate one variable from
/// `{f, ∂f/∂u1, ∂f/∂u2}`, then back-substitute every candidate root.
pub fn smoothness_certificate(c: &PlaneCurveModel, alpha: &Rat) -> Result<SmoothnessCertificate> {
    if alpha.is_zero() {
        return Err(Error::InvalidArgument("alpha must be nonzero".into()));
    }
    let f = trim(as_bivariate(&c.f, alpha)?);
    for swapped in [false, true] {
        // x is the surviving variable, y the eliminated one.
        let fx = if swapped { swap_vars(&f) } else { f.clone() };
        let (dx, dy) = (d_dx(&fx), d_dy(&fx));
        let r1 = resultant(&fx, &dx);
        let r2 = resultant(&fx, &dy);
        if r1.is_zero() && r2.is_zero() {
            continue;
        }
        let g = if r1.is_zero() {
            r2.monic()
        } else if r2.is_zero() {
            r1.monic()
        } else {
            r1.gcd(&r2)
        };
        let (zmult, rest) = g.strip_zero_root();
        let names = if swapped { ("u2", "u1") } else { ("u1", "u2") };
        let mut witness = None;
        let mut affine_smooth = true;
        if zmult > 0 {
            let at0 = [eval_x(&fx, &Rat::zero()), eval_x(&dx, &Rat::zero()), eval_x(&dy, &Rat::zero())];
            let common = at0.iter().fold(UniPoly::zero(), |acc, p| acc.gcd(p));
            if common.degree().unwrap_or(0) > 0 || at0.iter().all(UniPoly::is_zero) {
                affine_smooth = false;
                let y = if common.degree() == Some(1) { (-common.coeff(0)).to_string() } else { format!("root of {common}") };
                witness = Some(if swapped { (y, "0".into()) } else { ("0".into(), y) });
            }
        }
        let mut torus_smooth = true;
        let candidates = complex_roots(&rest);
        for x in &candidates {
            let fy: Vec<Complex<f64>> = fx.iter().map(|cf| eval_c(cf, *x)).collect();
            for y in complex_roots_c(&fy) {
                if y.norm() < 1e-9 {
                    continue;
                }
                let scale = 1.0 + x.norm().powi(8) + y.norm().powi(8);
                let r = eval_bi_c(&fx, *x, y).norm() + eval_bi_c(&dx, *x, y).norm() + eval_bi_c(&dy, *x, y).norm();
                if r / scale < 1e-8 {
                    torus_smooth = false;
                    affine_smooth = false;
                    let (a, b) = (format!("{x}"), format!("{y}"));
                    witness = Some(if swapped { (b, a) } else { (a, b) });
                }
            }
        }
        return Ok(SmoothnessCertificate {
            alpha: alpha.to_string(),
            eliminated: names.1.into(),
            resultant_with_dx: r1.fmt_var(names.0),
            resultant_with_dy: r2.fmt_var(names.0),
            gcd: g.fmt_var(names.0),
            boundary_multiplicity: zmult,
            candidates_checked: candidates.len(),
            torus_smooth,
            affine_smooth,
            witness,
        });
    }
    Err(Error::DegenerateElimination)
}

/// Durand–Kerner on complex coefficients (index = degree).
fn complex_roots_c(c: &[Complex<f64>]) -> Vec<Complex<f64>> {
    let mut c = c.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    if c.len() < 2 {
        return Vec::new();
    }
    let n = c.len() - 1;
    let lead = c[n];
    let c: Vec<Complex<f64>> = c.iter().map(|z| z / lead).collect();
    let eval = |z: Complex<f64>| c.iter().rev().fold(Complex::new(0.0, 0.0), |acc, a| acc * z + a);
    let radius = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex<f64>> = (0..n)
        .map(|k| Complex::from_polar(radius.min(1e3) * 0.9, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex::new(1e-12, 0.0);
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm() / (1.0 + z[i].norm()));
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}
