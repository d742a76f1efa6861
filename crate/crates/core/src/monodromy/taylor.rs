//! Taylor transport of a fundamental matrix in the coordinate `s = log t`.
//!
//! The equation is `(P0(D) - e^s·P1(D)) y = 0` with `D = d/ds`, `P0` monic of
//! degree `n`. When `P1` also has degree `n` it is normalized to be monic, so
//! the finite singular points are `s ∈ 2πiZ`.

use astro_float::{BigFloat, Consts};

use super::cx::{CMatrix, Cx, RM};
use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::ore::OreOp;

#[derive(Clone, Debug)]
pub struct OdeData {
    pub n: usize,
    pub p0: Vec<Cx>,
    pub p1: Vec<Cx>,
    /// `t = α / scale`.
    pub scale: Rat,
    /// Whether `s ∈ 2πiZ` are singular.
    pub singular: bool,
    pub precision: usize,
}

impl OdeData {
    /// From `A(D) + α·B(D)` with `deg A = order`.
    pub fn from_operator(op: &OreOp, p: usize, cc: &mut Consts) -> Result<Self> {
        if op.parts().any(|(e, _)| *e != 0 && *e != 1) {
            return Err(Error::InvalidArgument("operator must be A(D) + alpha*B(D)".into()));
        }
        let a = op.part(0);
        let b = op.part(1);
        let n = a.degree().unwrap_or(0);
        if n == 0 || b.degree().is_some_and(|d| d > n) {
            return Err(Error::InvalidArgument("leading coefficient must be a nonzero constant at 0".into()));
        }
        let an = a.leading().unwrap().clone();
        let singular = b.degree() == Some(n);
        // α·B/an = -t·P1 with t = α/scale.
        let scale = if singular { -&an / b.leading().unwrap() } else { Rat::from_integer(1.into()) };
        let f1 = -&scale / &an;
        let conv = |c: Rat, cc: &mut Consts| Cx::from_rat(&c, p, cc);
        let p0 = (0..=n).map(|k| conv(a.coeff(k) / &an, cc)).collect();
        let p1 = (0..=n).map(|k| conv(b.coeff(k) * &f1, cc)).collect();
        Ok(Self {
            n,
            p0,
            p1,
            scale,
            singular,
            precision: p,
        })
    }

    /// Distance from `s` to the nearest singular point.
    pub fn clearance(&self, s: (f64, f64)) -> f64 {
        self.segment_clearance(s, s)
    }

    /// Smallest clearance along the segment `[a, b]`.
    pub fn segment_clearance(&self, a: (f64, f64), b: (f64, f64)) -> f64 {
        if !self.singular {
            return f64::INFINITY;
        }
        let two_pi = 2.0 * std::f64::consts::PI;
        let lo = (a.1.min(b.1) / two_pi).floor() - 1.0;
        let hi = (a.1.max(b.1) / two_pi).ceil() + 1.0;
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let len2 = dx * dx + dy * dy;
        let mut best = f64::INFINITY;
        let mut k = lo;
        while k <= hi {
            let (px, py) = (0.0, k * two_pi);
            let u = if len2 == 0.0 { 0.0 } else { (((px - a.0) * dx + (py - a.1) * dy) / len2).clamp(0.0, 1.0) };
            let (qx, qy) = (a.0 + u * dx, a.1 + u * dy);
            best = best.min(((px - qx).powi(2) + (py - qy).powi(2)).sqrt());
            k += 1.0;
        }
        best
    }
}

/// Transport `phi` (rows = jets `D^k y`, columns = solutions) from `center`
/// to `center + h` by a truncated Taylor series.
pub fn taylor_step(ode: &OdeData, center: &Cx, h: &Cx, phi: &CMatrix, safety: f64, cc: &mut Consts) -> Result<CMatrix> {
    let p = ode.precision;
    let n = ode.n;
    let c64 = center.to_c64();
    let hmag = h.abs_f64();
    let clearance = ode.clearance((c64.re, c64.im));
    if hmag > safety * clearance {
        return Err(Error::StepFailure {
            segment: 0,
            reason: format!("step {hmag:e} exceeds {safety} of clearance {clearance:e}"),
        });
    }
    let tc = center.exp(p, cc);
    let tau0 = tc.clone();
    let w: Vec<Cx> = (0..n).map(|k| ode.p0[k].sub(&tau0.mul(&ode.p1[k], p), p)).collect();
    let lead = ode.p0[n].sub(&tau0.mul(&ode.p1[n], p), p);
    if lead.abs_f64() == 0.0 {
        return Err(Error::StepFailure {
            segment: 0,
            reason: "center is singular".into(),
        });
    }
    let one = BigFloat::from_f64(1.0, p);
    let int = |k: usize| BigFloat::from_u64(k as u64, p);
    let max_terms = 10 * p + 200;
    let log2h = if hmag == 0.0 { -1e9 } else { hmag.log2() };
    let scale = phi
        .iter()
        .flatten()
        .map(Cx::log2_bound)
        .max()
        .unwrap_or(0)
        .max(0);
    let cutoff = scale as f64 - p as f64 - 16.0;

    // τ_j = t_c / j! and falling products ff(i, k) = (i+1)…(i+k), grown lazily.
    let mut tau: Vec<Cx> = vec![tau0];
    let mut ff: Vec<Vec<BigFloat>> = Vec::new();
    let ff_row = |i: usize| {
        let mut row = vec![one.clone()];
        for k in 1..=n {
            let next = row[k - 1].mul(&int(i + k), p, RM);
            row.push(next);
        }
        row
    };
    let mut coeffs: Vec<Vec<Cx>> = Vec::with_capacity(n);
    let mut fact = one.clone();
    let mut init: Vec<Vec<Cx>> = vec![Vec::new(); n];
    for k in 0..n {
        if k > 0 {
            fact = fact.mul(&int(k), p, RM);
        }
        for col in 0..n {
            init[col].push(phi[k][col].div_real(&fact, p));
        }
    }
    for col in 0..n {
        coeffs.push(init[col].clone());
    }
    let mut q: Vec<Vec<Cx>> = vec![Vec::new(); n];
    let mut quiet = 0usize;
    let mut m = 0usize;
    loop {
        if m >= max_terms {
            return Err(Error::StepFailure {
                segment: 0,
                reason: format!("Taylor series did not settle within {max_terms} terms"),
            });
        }
        while ff.len() <= m {
            let i = ff.len();
            ff.push(ff_row(i));
        }
        if m > 0 {
            let j = tau.len();
            let next = tau[j - 1].div_real(&int(j), p);
            tau.push(next);
        }
        let mut biggest = i64::MIN;
        for col in 0..n {
            let c = &coeffs[col];
            let mut rhs = Cx::zero(p);
            for k in 0..n {
                rhs = rhs.add(&w[k].mul(&c[m + k].mul_real(&ff[m][k], p), p), p);
            }
            for j in 1..=m {
                rhs = rhs.sub(&tau[j].mul(&q[col][m - j], p), p);
            }
            let denom = lead.mul_real(&ff[m][n], p);
            let next = rhs.neg().div(&denom, p)?;
            biggest = biggest.max(next.log2_bound());
            coeffs[col].push(next);
            let c = &coeffs[col];
            let mut qm = Cx::zero(p);
            for k in 0..=n {
                qm = qm.add(&ode.p1[k].mul(&c[m + k].mul_real(&ff[m][k], p), p), p);
            }
            q[col].push(qm);
        }
        let idx = m + n;
        let est = biggest as f64 + idx as f64 * log2h + (n as f64) * ((idx + 1) as f64).log2();
        if !coeffs[0].last().is_some_and(Cx::is_finite) {
            return Err(Error::StepFailure {
                segment: 0,
                reason: "non-finite Taylor coefficient".into(),
            });
        }
        if est < cutoff && m >= n {
            quiet += 1;
            if quiet >= n + 2 {
                break;
            }
        } else {
            quiet = 0;
        }
        m += 1;
    }
    // Evaluate D^k y at h.
    let total = coeffs[0].len();
    while ff.len() < total {
        let i = ff.len();
        ff.push(ff_row(i));
    }
    let mut hp = vec![Cx::one(p)];
    for j in 1..total {
        let next = hp[j - 1].mul(h, p);
        hp.push(next);
    }
    let mut out = vec![vec![Cx::zero(p); n]; n];
    for col in 0..n {
        for k in 0..n {
            let mut acc = Cx::zero(p);
            for mm in k..total {
                // c_mm · mm!/(mm-k)! · h^(mm-k) = c_mm · ff(mm-k, k) · h^(mm-k).
                acc = acc.add(&coeffs[col][mm].mul_real(&ff[mm - k][k], p).mul(&hp[mm - k], p), p);
            }
            out[k][col] = acc;
        }
    }
    Ok(out)
}

/// Transport along a polygon, subdividing every edge so each step stays
/// within `safety` of the clearance.
pub fn transport(ode: &OdeData, path: &[Cx], phi: &CMatrix, safety: f64, cc: &mut Consts) -> Result<CMatrix> {
    let p = ode.precision;
    let mut cur = phi.clone();
    for (seg, w) in path.windows(2).enumerate() {
        let (a, b) = (&w[0], &w[1]);
        let (ac, bc) = (a.to_c64(), b.to_c64());
        let d = ode.segment_clearance((ac.re, ac.im), (bc.re, bc.im));
        if d <= 0.0 || d.is_nan() {
            return Err(Error::StepFailure {
                segment: seg,
                reason: "segment meets a singular point".into(),
            });
        }
        let len = (bc - ac).norm();
        let pieces = ((len / (0.99 * safety * d)).ceil() as usize).max(1);
        let h = b.sub(a, p).div_real(&BigFloat::from_u64(pieces as u64, p), p);
        let mut s = a.clone();
        for _ in 0..pieces {
            cur = taylor_step(ode, &s, &h, &cur, safety, cc).map_err(|e| match e {
                Error::StepFailure { reason, .. } => Error::StepFailure { segment: seg, reason },
                other => other,
            })?;
            s = s.add(&h, p);
        }
    }
    Ok(cur)
}
