//! The critical parameter value of a toric model and a numerical critical
//! point on the torus.

use nalgebra::{Complex, DMatrix, DVector};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rat::{rat_pow, serde_rat, to_f64};
use crate::exact::{int, Rat};
use crate::gkz::ToricModel;

type C = Complex<f64>;

pub const MAX_ITERATIONS: usize = 200;

/// `-∏ γ_i^{γ_i}`, the unique α at which `f` has a torus critical point.
pub fn critical_alpha(gamma: &[i64]) -> Rat {
    -gamma
        .iter()
        .fold(int(1), |acc, &g| acc * rat_pow(&int(g), g))
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalCertificate {
    #[serde(with = "serde_rat")]
    pub alpha: Rat,
    /// Torus coordinates `u_j` of the critical point, as `(re, im)`.
    pub point: Vec<(f64, f64)>,
    /// Common value of `t_i / γ_i`.
    pub lambda: (f64, f64),
    /// `‖(f, u·∇f)‖` at the point.
    pub residual: f64,
    /// The residual divided by `Σ |t_i|`.
    pub relative_residual: f64,
    pub iterations: usize,
    /// Largest pairwise relative spread of `t_i / γ_i`.
    pub proportionality_error: f64,
}

impl CriticalCertificate {
    pub fn proportional(&self, tol: f64) -> bool {
        self.proportionality_error < tol
    }
}

struct System {
    points: Vec<Vec<f64>>,
    coeffs: Vec<C>,
}

impl System {
    fn terms(&self, s: &DVector<C>) -> Vec<C> {
        self.points
            .iter()
            .zip(&self.coeffs)
            .map(|(m, c)| {
                let e: C = m.iter().zip(s.iter()).map(|(mi, si)| si * *mi).sum();
                c * e.exp()
            })
            .collect()
    }

    fn residual(&self, t: &[C]) -> DVector<C> {
        let n = self.points[0].len();
        let mut r = DVector::from_element(n + 1, C::zero());
        for (ti, m) in t.iter().zip(&self.points) {
            r[0] += ti;
            for j in 0..n {
                r[j + 1] += ti * m[j];
            }
        }
        r
    }

    fn jacobian(&self, t: &[C]) -> DMatrix<C> {
        let n = self.points[0].len();
        let mut jm = DMatrix::from_element(n + 1, n, C::zero());
        for (ti, m) in t.iter().zip(&self.points) {
            for k in 0..n {
                jm[(0, k)] += ti * m[k];
                for j in 0..n {
                    jm[(j + 1, k)] += ti * (m[j] * m[k]);
                }
            }
        }
        jm
    }
}

/// Log-linear start: solve `log c_i + m_i·s = log λ + log γ_i` with branches
/// chosen so the system is consistent.
fn log_linear_start(model: &ToricModel, coeffs: &[f64]) -> Result<DVector<C>> {
    let g = model.gamma.entries();
    let n = model.n();
    let rows = g.len();
    let a = DMatrix::from_fn(rows, n + 1, |i, j| {
        if j == 0 {
            1.0
        } else {
            model.monomials.points[i][j - 1] as f64
        }
    });
    let ratio: Vec<f64> = g.iter().zip(coeffs).map(|(&gi, c)| gi as f64 / c).collect();
    let re = DVector::from_iterator(rows, ratio.iter().map(|r| r.abs().ln()));
    let half_turns: i64 = g.iter().zip(&ratio).map(|(gi, r)| if *r < 0.0 { *gi } else { 0 }).sum();
    if half_turns.rem_euclid(2) != 0 {
        return Err(Error::InvalidArgument("inconsistent phases in the log-linear system".into()));
    }
    let shift = -half_turns / 2;
    let im = DVector::from_iterator(
        rows,
        ratio.iter().zip(&model.kexp).map(|(r, k)| {
            let base = if *r < 0.0 { std::f64::consts::PI } else { 0.0 };
            base + 2.0 * std::f64::consts::PI * (shift * k) as f64
        }),
    );
    let svd = a.svd(true, true);
    let xr = svd.solve(&re, 1e-12).map_err(|e| Error::InvalidArgument(e.into()))?;
    let xi = svd.solve(&im, 1e-12).map_err(|e| Error::InvalidArgument(e.into()))?;
    Ok(DVector::from_iterator(n, (1..=n).map(|j| C::new(xr[j], xi[j]))))
}

/// Exact critical α together with a Gauss–Newton critical point at that α,
/// started from a seeded perturbation of the log-linear solution.
pub fn critical_alpha_certificate(model: &ToricModel, seed: u64) -> Result<CriticalCertificate> {
    let g = model.gamma.entries();
    let alpha = critical_alpha(g);
    let coeffs: Vec<f64> = model.kexp.iter().map(|&k| to_f64(&rat_pow(&-alpha.clone(), k))).collect();
    let sys = System {
        points: model
            .monomials
            .points
            .iter()
            .map(|p| p.iter().map(|&x| x as f64).collect())
            .collect(),
        coeffs: coeffs.iter().map(|&c| C::new(c, 0.0)).collect(),
    };
    let mut s = log_linear_start(model, &coeffs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for v in s.iter_mut() {
        *v += C::new(rng.gen_range(-1e-3..1e-3), rng.gen_range(-1e-3..1e-3));
    }
    let scale = |t: &[C]| t.iter().map(|z| z.norm()).sum::<f64>();
    let mut t = sys.terms(&s);
    let mut r = sys.residual(&t);
    let mut best = r.norm() / scale(&t);
    let mut iterations = 0;
    while best >= 1e-14 {
        if iterations == MAX_ITERATIONS {
            return Err(Error::NoConvergence { best_residual: best });
        }
        iterations += 1;
        let jm = sys.jacobian(&t);
        let step = jm
            .svd(true, true)
            .solve(&r, 1e-14)
            .map_err(|e| Error::InvalidArgument(e.into()))?;
        let mut damping = 1.0;
        let mut improved = false;
        for _ in 0..30 {
            let trial = &s - &step * C::new(damping, 0.0);
            let tt = sys.terms(&trial);
            let rr = sys.residual(&tt);
            let rel = rr.norm() / scale(&tt);
            if rel < best {
                s = trial;
                t = tt;
                r = rr;
                best = rel;
                improved = true;
                break;
            }
            damping *= 0.5;
        }
        if !improved {
            break;
        }
    }
    let lambdas: Vec<C> = t.iter().zip(g).map(|(ti, &gi)| ti / gi as f64).collect();
    let mut spread = 0.0f64;
    for a in &lambdas {
        for b in &lambdas {
            spread = spread.max((a - b).norm() / a.norm().max(b.norm()));
        }
    }
    let lambda = lambdas.iter().sum::<C>() / lambdas.len() as f64;
    Ok(CriticalCertificate {
        alpha,
        point: s.iter().map(|z| z.exp()).map(|z| (z.re, z.im)).collect(),
        lambda: (lambda.re, lambda.im),
        residual: r.norm(),
        relative_residual: best,
        iterations,
        proportionality_error: spread,
    })
}
