//! Monodromy of the hypergeometric equation by multiprecision continuation in
//! `s = log(α/α_sing)`.
//!
//! Conventions: the base point is `α_b = t_b·α_sing` with `0 < t_b < 1`.
//! Loops are counterclockwise. A loop traversed first along `a`, then `b`,
//! has matrix `M_b·M_a`. The loop around infinity is the inverse of a
//! counterclockwise circle enclosing both finite singular points, reached
//! from the base point below `α_sing`; with these choices
//! `M_∞·M_0·M_sing = I`.

pub mod charpoly;
pub mod cx;
pub mod taylor;

use astro_float::{BigFloat, Consts};
use nalgebra::Complex;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rat::{serde_rat, to_f64};
use crate::exact::{rat, Rat, UniPoly};
use crate::hypergeom::{bh_ratio, build_irreducible_operator, cyclotomic_product, reduced_exponents, BhRatio, GammaList};
use crate::ore::OreOp;

pub use charpoly::{charpoly, inverse_charpoly};
pub use cx::{CMatrix, Cx};
pub use taylor::{taylor_step, transport, OdeData};

use cx::{identity, mat_inverse, mat_mul, max_diff, RM};

pub const RANK_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct ContinuationConfig {
    /// Mantissa bits.
    pub precision: usize,
    #[serde(with = "serde_rat")]
    pub step_safety: Rat,
    /// `α_b / α_sing` as `(re, im)`; must be real in `(0, 1)`.
    #[serde(serialize_with = "ser_pair")]
    pub base_point: (Rat, Rat),
    /// Radius of the loop around `α_sing` in units of `|log t_b|`.
    #[serde(with = "serde_rat")]
    pub loop_radius_factor: Rat,
    #[serde(with = "serde_rat")]
    pub tolerance: Rat,
    /// Polygon edges for a full circle.
    pub segments: usize,
}

fn ser_pair<S: serde::Serializer>(v: &(Rat, Rat), s: S) -> std::result::Result<S::Ok, S::Error> {
    (v.0.to_string(), v.1.to_string()).serialize(s)
}

impl Default for ContinuationConfig {
    fn default() -> Self {
        Self {
            precision: 192,
            step_safety: rat(1, 2),
            base_point: (rat(1, 2), Rat::zero()),
            loop_radius_factor: Rat::one(),
            tolerance: rat(1, 100_000_000),
            segments: 16,
        }
    }
}

impl ContinuationConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.into()));
        if self.precision < 64 {
            return bad("precision must be at least 64 bits");
        }
        if !(self.step_safety.is_positive() && self.step_safety < Rat::one()) {
            return bad("step safety must lie in (0, 1)");
        }
        let (re, im) = &self.base_point;
        if !im.is_zero() || !re.is_positive() || *re >= Rat::one() {
            return bad("base point must be real and strictly between 0 and the singular value");
        }
        if !self.loop_radius_factor.is_positive() || !self.tolerance.is_positive() {
            return bad("radius factor and tolerance must be positive");
        }
        let r = to_f64(&self.loop_radius_factor) * to_f64(re).ln().abs();
        if r >= std::f64::consts::PI {
            return bad("loop radius must stay below pi in log coordinates");
        }
        if self.segments < 16 || self.segments % 2 != 0 {
            return bad("need an even number of at least 16 segments");
        }
        Ok(())
    }
}

/// Which singular point a loop encircles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LoopPoint {
    Zero,
    Singular,
    /// Counterclockwise around both finite points.
    Both,
}

struct Geometry {
    p: usize,
    base: Cx,
    radius: BigFloat,
    two_pi_i: Cx,
    segments: usize,
    factor_is_one: bool,
}

impl Geometry {
    fn new(cfg: &ContinuationConfig, cc: &mut Consts) -> Self {
        let p = cfg.precision;
        let tb = cx::rat_to_bf(&cfg.base_point.0, p, cc);
        let sb = tb.ln(p, RM, cc);
        let factor = cx::rat_to_bf(&cfg.loop_radius_factor, p, cc);
        let radius = sb.abs().mul(&factor, p, RM);
        let pi = cc.pi(p, RM);
        Self {
            p,
            base: Cx::real(sb, p),
            radius,
            two_pi_i: Cx {
                re: BigFloat::from_f64(0.0, p),
                im: pi.mul(&BigFloat::from_f64(2.0, p), p, RM),
            },
            segments: cfg.segments,
            factor_is_one: cfg.loop_radius_factor.is_one(),
        }
    }

    /// `center + r·e^{iθ}` for `θ = θ0 + k·(θ1-θ0)/count`, `k = 0..=count`,
    /// angles in units of `π`.
    fn arc(&self, center: &Cx, from: i64, to: i64, count: usize, cc: &mut Consts) -> Vec<Cx> {
        let p = self.p;
        let pi = cc.pi(p, RM);
        (0..=count)
            .map(|k| {
                let num = BigFloat::from_i64(from * count as i64 + (to - from) * k as i64, p);
                let theta = pi.mul(&num, p, RM).div(&BigFloat::from_u64(count as u64, p), p, RM);
                let e = Cx {
                    re: theta.cos(p, RM, cc),
                    im: theta.sin(p, RM, cc),
                };
                center.add(&e.mul_real(&self.radius, p), p)
            })
            .collect()
    }

    fn path(&self, point: LoopPoint, cc: &mut Consts) -> Vec<Cx> {
        let p = self.p;
        let zero = Cx::zero(p);
        let left = Cx::real(self.radius.neg(), p);
        let right = Cx::real(self.radius.clone(), p);
        let mut path = vec![self.base.clone()];
        let push_left = |path: &mut Vec<Cx>, at: &Cx| {
            if !self.factor_is_one {
                path.push(at.clone());
            }
        };
        match point {
            LoopPoint::Zero => path.push(self.base.add(&self.two_pi_i, p)),
            LoopPoint::Singular => {
                push_left(&mut path, &left);
                let mut arc = self.arc(&zero, 1, 3, self.segments, cc);
                arc[0] = left.clone();
                *arc.last_mut().unwrap() = left.clone();
                path.extend(arc.into_iter().skip(1));
                push_left(&mut path, &self.base);
            }
            LoopPoint::Both => {
                push_left(&mut path, &left);
                let half = self.segments / 2;
                let mut out = self.arc(&zero, 1, 2, half, cc);
                *out.last_mut().unwrap() = right.clone();
                path.extend(out.into_iter().skip(1));
                let top = right.add(&self.two_pi_i, p);
                path.push(top.clone());
                let mut back = self.arc(&self.two_pi_i, 2, 1, half, cc);
                back[0] = top;
                let top_left = left.add(&self.two_pi_i, p);
                *back.last_mut().unwrap() = top_left.clone();
                path.extend(back.into_iter().skip(1));
                push_left(&mut path, &self.base.add(&self.two_pi_i, p));
            }
        }
        path
    }
}

/// Monodromy matrix of `op` around `point`, in the basis of solutions whose
/// jets `(y, Dy, …)` at the base point form the identity.
pub fn monodromy_around(op: &OreOp, point: LoopPoint, cfg: &ContinuationConfig) -> Result<CMatrix> {
    cfg.validate()?;
    let mut cc = Consts::new().map_err(|e| Error::Precision(format!("{e:?}")))?;
    let ode = OdeData::from_operator(op, cfg.precision, &mut cc)?;
    if point != LoopPoint::Zero && !ode.singular {
        return Err(Error::InvalidArgument("operator has no finite nonzero singular point".into()));
    }
    let geo = Geometry::new(cfg, &mut cc);
    let path = geo.path(point, &mut cc);
    let phi = identity(ode.n, cfg.precision);
    transport(&ode, &path, &phi, to_f64(&cfg.step_safety), &mut cc)
}

fn complex_strings(m: &CMatrix) -> Vec<Vec<(String, String)>> {
    m.iter().map(|row| row.iter().map(Cx::to_strings).collect()).collect()
}


#[derive(Clone, Debug, Serialize)]
pub struct CharpolyCheck {
    pub matrix: String,
    pub expected: String,
    /// Computed coefficients from the constant term up, as `(re, im)`.
    pub computed: Vec<(f64, f64)>,
    pub residual: f64,
}

fn charpoly_check(name: &str, coeffs: &[Cx], expected: &UniPoly, label: String, p: usize, cc: &mut Consts) -> CharpolyCheck {
    let n = coeffs.len() - 1;
    let mut residual = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c.sub(&Cx::from_rat(&expected.coeff(k), p, cc), p).abs_f64())
        .fold(0.0, f64::max);
    let computed: Vec<Complex<f64>> = coeffs.iter().map(Cx::to_c64).collect();
    if expected.degree() != Some(n) {
        residual = f64::INFINITY;
    }
    CharpolyCheck {
        matrix: name.into(),
        expected: label,
        computed: computed.iter().map(|z| (z.re, z.im)).collect(),
        residual,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DetCheck {
    pub matrix: String,
    pub computed: (f64, f64),
    pub expected: (f64, f64),
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyReport {
    pub gamma: String,
    pub order: usize,
    pub config: ContinuationConfig,
    #[serde(with = "serde_rat")]
    pub singular_alpha: Rat,
    pub convention: String,
    pub m0: Vec<Vec<(String, String)>>,
    pub m_singular: Vec<Vec<(String, String)>>,
    pub m_infinity: Vec<Vec<(String, String)>>,
    pub charpolys: Vec<CharpolyCheck>,
    pub determinants: Vec<DetCheck>,
    pub singular_values: Vec<f64>,
    pub reflection_rank: usize,
    /// Max-modulus entry of `M_∞·M_0·M_sing - I`.
    pub product_residual: f64,
}

/// `exp(2πi·x)` at working precision.
fn unit_root(x: &Rat, p: usize, cc: &mut Consts) -> Cx {
    let frac = x - x.floor();
    let two_pi = cc.pi(p, RM).mul(&BigFloat::from_i32(2, p), p, RM);
    let angle = two_pi.mul(&cx::rat_to_bf(&frac, p, cc), p, RM);
    Cx { re: BigFloat::from_i32(0, p), im: angle }.exp(p, cc)
}

fn det_from_charpoly(c: &[Cx]) -> Cx {
    let n = c.len() - 1;
    if n % 2 == 0 {
        c[0].clone()
    } else {
        c[0].neg()
    }
}

/// The three monodromy matrices of the irreducible operator of `gamma`
/// with all checks against the cyclotomic predictions.
pub fn run(gamma: &GammaList, cfg: &ContinuationConfig) -> Result<MonodromyReport> {
    cfg.validate()?;
    let op = build_irreducible_operator(gamma);
    let p = cfg.precision;
    let m0 = monodromy_around(&op, LoopPoint::Zero, cfg)?;
    let ms = monodromy_around(&op, LoopPoint::Singular, cfg)?;
    let mb = monodromy_around(&op, LoopPoint::Both, cfg)?;
    let minf = mat_inverse(&mb, p)?;
    let n = m0.len();

    let BhRatio { q0, q_inf, .. } = bh_ratio(gamma)?;
    let q0p = cyclotomic_product(&q0)?;
    let qip = cyclotomic_product(&q_inf)?;
    let c0 = charpoly(&m0, p);
    let prod = mat_mul(&ms, &m0, p);
    let cprod = charpoly(&prod, p);
    let cinf = charpoly(&minf, p);
    let mut cc = Consts::new().map_err(|e| Error::Precision(format!("{e:?}")))?;
    let charpolys = vec![
        charpoly_check("M0^-1", &inverse_charpoly(&c0, p)?, &q0p, BhRatio::describe(&q0), p, &mut cc),
        charpoly_check("(Msing*M0)^-1", &inverse_charpoly(&cprod, p)?, &qip, BhRatio::describe(&q_inf), p, &mut cc),
        charpoly_check("Minf", &cinf, &qip, BhRatio::describe(&q_inf), p, &mut cc),
    ];

    let e = reduced_exponents(gamma);
    let s0: Rat = e.exps0.iter().sum();
    let sinf: Rat = e.exps_inf.iter().sum();
    let det_exp = [("M0", -&s0), ("Msing", &s0 - &sinf)];
    let cs = charpoly(&ms, p);
    let determinants = det_exp
        .iter()
        .zip([det_from_charpoly(&c0), det_from_charpoly(&cs)])
        .map(|((name, x), d)| {
            let ex = unit_root(x, p, &mut cc);
            let (dc, ec) = (d.to_c64(), ex.to_c64());
            DetCheck {
                matrix: (*name).into(),
                computed: (dc.re, dc.im),
                expected: (ec.re, ec.im),
                residual: d.sub(&ex, p).abs_f64(),
            }
        })
        .collect();

    let id = identity(n, p);
    let shifted = cx::to_c64_matrix(&ms) - cx::to_c64_matrix(&id);
    let singular_values: Vec<f64> = shifted.svd(false, false).singular_values.iter().copied().collect();
    let reflection_rank = singular_values.iter().filter(|s| **s > RANK_THRESHOLD).count();

    let relation = mat_mul(&mat_mul(&minf, &m0, p), &ms, p);
    let product_residual = max_diff(&relation, &id, p);

    Ok(MonodromyReport {
        gamma: gamma.to_string(),
        order: n,
        config: cfg.clone(),
        singular_alpha: OdeData::from_operator(&op, 64, &mut cc)?.scale,
        convention: "counterclockwise loops from alpha_sing * t_b; loop a then b gives M_b*M_a; Minf = inverse of the loop around both points; Minf*M0*Msing = I".into(),
        m0: complex_strings(&m0),
        m_singular: complex_strings(&ms),
        m_infinity: complex_strings(&minf),
        charpolys,
        determinants,
        singular_values,
        reflection_rank,
        product_residual,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CertLine {
    pub check: String,
    pub value: String,
    pub pass: bool,
}

/// Pass/fail ledger at the report's own tolerance.
pub fn certify(report: &MonodromyReport) -> Vec<CertLine> {
    let tol = to_f64(&report.config.tolerance);
    let mut out = vec![CertLine {
        check: "product relation".into(),
        value: format!("{:e}", report.product_residual),
        pass: report.product_residual < tol,
    }];
    for c in &report.charpolys {
        out.push(CertLine {
            check: format!("charpoly {} = {}", c.matrix, c.expected),
            value: format!("{:e}", c.residual),
            pass: c.residual < tol,
        });
    }
    for d in &report.determinants {
        out.push(CertLine {
            check: format!("det {}", d.matrix),
            value: format!("{:e}", d.residual),
            pass: d.residual < tol,
        });
    }
    out.push(CertLine {
        check: format!("rank(Msing - I) at threshold {RANK_THRESHOLD:e}"),
        value: report.reflection_rank.to_string(),
        pass: report.reflection_rank == 1,
    });
    out
}

pub fn all_pass(lines: &[CertLine]) -> bool {
    lines.iter().all(|l| l.pass)
}
