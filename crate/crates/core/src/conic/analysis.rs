//! The full conic pipeline on one toric model.


use super::critical::{critical_alpha_certificate, CriticalCertificate};
use super::curve::*;
use super::quadform::*;
use super::smooth::{smoothness_certificate, SmoothnessCertificate};
use crate::error::Result;
use crate::exact::Rat;
use crate::gkz::ToricModel;

#[derive(Clone, Debug)]
pub struct ConicAnalysis {
    pub chart: QuadForm3,
    pub fiber_vars: (usize, usize),
    pub diagonal: Diagonalization,
    pub delta: PlaneCurveModel,
    pub cover: DoubleCover,
    pub n: WeightedCurve,
    pub ntilde: WeightedCurve,
    pub genus: u64,
    pub cover_genus: u64,
    pub anti_invariant_rank: u64,
    pub fixed: FixedPoints,
    pub branch: BranchData,
    pub ranks: RankTable,
    pub boundary: (crate::exact::LaurentPoly, crate::exact::LaurentPoly),
    pub smooth_delta: SmoothnessCertificate,
    pub smooth_cover: SmoothnessCertificate,
    pub critical: CriticalCertificate,
}

/// Options for `analyze`.
#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    /// Sample α for fixed points, branch points, and smoothness.
    pub alpha: Rat,
    pub seed: u64,
    pub samples: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            alpha: Rat::from_integer(1.into()),
            seed: 2024,
            samples: 10,
        }
    }
}

/// Chart, diagonal form, discriminant, cover via the `(1,2)` minor, closures
/// in `P²` and `P(1,1,3)`, and all certificates.
pub fn analyze(model: &ToricModel, opts: &AnalysisOptions) -> Result<ConicAnalysis> {
    let (chart, fiber_vars) = chart_with_fiber(model)?;
    let diagonal = diagonalize(&chart)?;
    let delta = discriminant(&diagonal.form)?;
    let cover = double_cover(&chart, &delta, (1, 2))?;
    let n = projective_closure(&delta, &[1, 1, 1], &["u0", "u1", "u2"])?;
    let ntilde = projective_closure(&cover.model, &[1, 1, 3], &["x0", "x1", "y"])?;
    let genus = genus_from_polytope(&delta)?;
    let cover_genus = genus_from_polytope(&cover.model)?;
    let anti = anti_invariant_rank(&cover.model)?;
    let fixed = involution_fixed_points(&ntilde, &opts.alpha)?;
    let branch = branch_data(&n, &ntilde, &opts.alpha)?;
    let ranks = rank_stratification(&chart, &delta, opts.seed, opts.samples)?;
    let boundary = boundary_divisors(&chart);
    let smooth_delta = smoothness_certificate(&delta, &opts.alpha)?;
    let smooth_cover = smoothness_certificate(&cover.model, &opts.alpha)?;
    let critical = critical_alpha_certificate(model, opts.seed)?;
    Ok(ConicAnalysis {
        chart,
        fiber_vars,
        diagonal,
        delta,
        cover,
        n,
        ntilde,
        genus,
        cover_genus,
        anti_invariant_rank: anti,
        fixed,
        branch,
        ranks,
        boundary,
        smooth_delta,
        smooth_cover,
        critical,
    })
}

impl ConicAnalysis {
    /// `2(g̃ - g)`.
    pub fn genus_rank(&self) -> i64 {
        2 * (self.cover_genus as i64 - self.genus as i64)
    }

    /// `2g̃ - 2 = 2(2g - 2) + #fixed`.
    pub fn hurwitz_holds(&self) -> bool {
        2 * self.cover_genus as i64 - 2 == 2 * (2 * self.genus as i64 - 2) + self.fixed.total as i64
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "chart": self.chart.to_json(),
            "fiberVariables": [format!("u{}", self.fiber_vars.0), format!("u{}", self.fiber_vars.1)],
            "diagonal": self.diagonal.form.to_json(),
            "substitutions": self.diagonal.substitutions,
            "discriminant": self.delta.f.to_string(),
            "cover": {
                "minor": self.cover.minor.to_string(),
                "equation": self.cover.model.f.to_string(),
                "latticeScale": self.cover.model.lattice_scale,
                "pullbackIdentity": self.cover.pullback_identity,
            },
            "closure": {"equation": self.n.f.to_string(), "weights": self.n.weights, "degree": self.n.degree},
            "coverClosure": {"equation": self.ntilde.f.to_string(), "weights": self.ntilde.weights, "degree": self.ntilde.degree},
            "genus": self.genus,
            "coverGenus": self.cover_genus,
            "rank": self.genus_rank(),
            "antiInvariantRank": self.anti_invariant_rank,
            "fixedPoints": self.fixed,
            "branch": self.branch,
            "hurwitz": self.hurwitz_holds(),
            "ranks": self.ranks,
            "boundary": [self.boundary.0.to_string(), self.boundary.1.to_string()],
            "smoothness": [self.smooth_delta, self.smooth_cover],
            "critical": self.critical,
        })
    }
}
