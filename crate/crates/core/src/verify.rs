//! The acceptance ledger: every headline identity as a reproducible check.

use num_traits::Zero;
use serde_json::json;

use crate::conic::{analyze, smoothness_certificate, AnalysisOptions, QuadForm3};
use crate::error::Result;
use crate::exact::rat::rat_pow;
use crate::exact::{int, rat, LaurentPoly, Rat};
use crate::gkz::{
    build_gkz, count_torus_points, realize_monomials, reference_model, restriction_certificate, simplex_model,
    transported_simplex_model,
};
use crate::hodge::{geometric_genus_check, reference_table};
use crate::hypergeom::{
    bh_ratio, build_cofactor, build_irreducible_operator, build_reducible_operator, coefficient, reduced_exponents,
    series, singular_value, GammaList,
};
use crate::lattice::{affine_equivalent, hermite_normal_form, normalized_volume, IntMatrix};
use crate::monodromy::{certify, run, ContinuationConfig};
use crate::report::Report;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub bits: usize,
    pub tolerance: Rat,
    pub seed: u64,
    /// Primes for the point-count comparison.
    pub primes: Vec<u64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            bits: 192,
            tolerance: rat(1, 100_000_000),
            seed: 2024,
            primes: vec![7, 11, 13, 31],
        }
    }
}

pub const CRITERIA: [&str; 13] = [
    "series and operator",
    "singular value",
    "exponent reduction",
    "operator factorization",
    "GKZ realization and restriction",
    "coordinate change",
    "conic pipeline",
    "genera and anti-invariant rank",
    "rank stratification",
    "dimensions",
    "monodromy",
    "finite fields",
    "critical fiber",
];

fn rats(v: &[(i64, i64)]) -> Vec<Rat> {
    let mut out: Vec<Rat> = v.iter().map(|&(a, b)| rat(a, b)).collect();
    out.sort();
    out
}

fn sorted(v: &[Rat]) -> Vec<Rat> {
    let mut v = v.to_vec();
    v.sort();
    v
}

fn fmt_list(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn poly(vars: &[&str], terms: &[(Rat, &[i64])]) -> LaurentPoly {
    LaurentPoly::from_terms(vars, terms.iter().map(|(c, e)| (c.clone(), e.to_vec())))
}

/// Euler rows `Σ D_i = 0; D1+3D4+D6 = 0; D1+D4+3D5 = 0; D1+2D6 = 0; 2D2+D3 = 0`.
pub fn expected_euler_rows() -> Vec<Vec<i64>> {
    vec![
        vec![1, 1, 1, 1, 1, 1],
        vec![1, 0, 0, 3, 0, 1],
        vec![1, 0, 0, 1, 3, 0],
        vec![1, 0, 0, 0, 0, 2],
        vec![0, 2, 1, 0, 0, 0],
    ]
}

fn row_hnf(rows: &[Vec<i64>]) -> IntMatrix {
    hermite_normal_form(&IntMatrix::from_rows(rows)).0
}

pub fn criterion(k: usize, opts: &VerifyOptions) -> Result<Report> {
    let g = GammaList::standard();
    let name = CRITERIA[k - 1];
    let mut r = Report::new(&format!("criterion {k}"), json!({ "criterion": k, "title": name }));
    match k {
        1 => {
            let s = series(&g, 61);
            let out = build_irreducible_operator(&g).apply_to_series(&s, 60)?;
            let first_bad = out.iter().position(|c| !c.is_zero());
            r.check("H kills the series through degree 59", "series.annihilation", first_bad.is_none(), "none", format!("{first_bad:?}"));
            r.check_eq("A_1", "series.first-coefficient", int(12252240), coefficient(&g, 1));
        }
        2 => {
            let expected = rat_pow(&int(5), 5) / (rat_pow(&int(3), 15) * rat_pow(&int(2), 16));
            r.check_eq("singular value", "operator.singular-value", expected, singular_value(&g));
        }
        3 => {
            let e = reduced_exponents(&g);
            r.check_eq("order of H", "operator.order", 8, e.order);
            let exp0 = rats(&[(0, 1), (0, 1), (1, 3), (2, 3), (1, 5), (2, 5), (3, 5), (4, 5)]);
            let expi = rats(&[(1, 6), (5, 6), (1, 18), (5, 18), (7, 18), (11, 18), (13, 18), (17, 18)]);
            r.check_eq("exponents at 0", "operator.exponents", fmt_list(&exp0), fmt_list(&sorted(&e.exps0)));
            r.check_eq("exponents at infinity", "operator.exponents", fmt_list(&expi), fmt_list(&sorted(&e.exps_inf)));
            r.check_eq("order of the reducible operator", "operator.reducible-order", 19, build_reducible_operator(&g).order());
            let bh = bh_ratio(&g)?;
            r.check("cyclotomic ratio identity", "operator.cyclotomic-ratio", bh.holds, true, bh.holds);
        }
        4 => {
            let lhs = build_cofactor(&g).compose(&build_irreducible_operator(&g));
            let rhs = build_reducible_operator(&g);
            r.check("G*H = reducible operator", "operator.factorization", lhs == rhs, &rhs, &lhs);
        }
        5 => {
            let realized = realize_monomials(&g)?;
            let reference = reference_model();
            let eq = affine_equivalent(&realized.monomials, &reference.monomials);
            r.check("realized monomials are affinely equivalent to the reference", "gkz.realization", eq.is_some(), "equivalent", eq.is_some());
            let sys = build_gkz(&reference.monomials)?;
            let same = row_hnf(&sys.euler_ops) == row_hnf(&expected_euler_rows());
            r.check("Euler rows span the expected lattice", "gkz.euler-rows", same, "equal row lattices", same);
            let sys_r = build_gkz(&realized.monomials)?;
            let same_r = row_hnf(&sys_r.euler_ops) == row_hnf(&expected_euler_rows());
            r.check("realized Euler rows span the expected lattice", "gkz.euler-rows", same_r, "equal row lattices", same_r);
            let cert = restriction_certificate(&g)?;
            r.check(
                "restriction equals the reducible operator up to a unit",
                "gkz.restriction",
                cert.equal_up_to_unit,
                &cert.reducible,
                &cert.restricted,
            );
        }
        6 => {
            let t = transported_simplex_model()?;
            let f = reference_model().f;
            r.check("transported simplex model equals the reference model", "gkz.coordinate-change", t == f, &f, &t);
        }
        7 => {
            let a = analyze(&reference_model(), &AnalysisOptions { seed: opts.seed, ..Default::default() })?;
            let v = ["alpha", "u1", "u2"];
            let one = || int(1);
            let quarter = rat(1, 4);
            let d0 = poly(&v, &[(one(), &[0, 3, 1]), (one(), &[0, 0, 3]), (quarter.clone(), &[1, 0, 0]), (-&quarter, &[0, 1, 2])]);
            let expected_diag = QuadForm3::diagonal([d0, poly(&v, &[(one(), &[0, 1, 0])]), poly(&v, &[(-one(), &[-1, 0, 0])])])?;
            r.check("diagonal form", "conic.diagonal", a.diagonal.form == expected_diag, format!("{:?}", expected_diag.to_json()), format!("{:?}", a.diagonal.form.to_json()));
            let delta = poly(&v, &[(int(4), &[0, 3, 1]), (int(4), &[0, 0, 3]), (one(), &[1, 0, 0]), (-one(), &[0, 1, 2])]);
            r.check("discriminant", "conic.discriminant", a.delta.f == delta, &delta, &a.delta.f);
            let cover = poly(&v, &[(int(4), &[3, 6, 1]), (int(4), &[0, 0, 3]), (one(), &[1, 0, 0]), (-one(), &[1, 2, 2])]);
            r.check("cover", "conic.cover", a.cover.model.f == cover, &cover, &a.cover.model.f);
            r.check("cover is the pullback along u1 -> alpha*u1^2", "conic.cover", a.cover.pullback_identity, true, a.cover.pullback_identity);
            let nv = ["alpha", "u0", "u1", "u2"];
            let n = poly(&nv, &[(int(4), &[0, 0, 3, 1]), (int(4), &[0, 1, 0, 3]), (one(), &[1, 4, 0, 0]), (-one(), &[0, 1, 1, 2])]);
            r.check("plane quartic", "conic.closure", a.n.f == n, &n, &a.n.f);
            let tv = ["alpha", "x0", "x1", "y"];
            let nt = poly(&tv, &[(int(4), &[0, 0, 0, 3]), (-one(), &[1, 1, 2, 2]), (int(4), &[3, 0, 6, 1]), (one(), &[1, 9, 0, 0])]);
            r.check("weighted closure", "conic.closure", a.ntilde.f == nt, &nt, &a.ntilde.f);
            r.check_eq("weighted degree", "conic.closure", 9, a.ntilde.degree);
        }
        8 => {
            let a = analyze(&reference_model(), &AnalysisOptions { seed: opts.seed, ..Default::default() })?;
            r.check_eq("genus of the discriminant", "conic.genus", 3, a.genus);
            r.check_eq("genus of the cover", "conic.genus", 7, a.cover_genus);
            r.check_eq("fixed points", "conic.fixed-points", 4, a.fixed.total);
            r.check_eq("2g~ - 2g", "conic.rank", 8, a.genus_rank());
            r.check_eq("anti-invariant rank", "conic.rank", 8, a.anti_invariant_rank as i64);
            let lhs = 2 * a.cover_genus as i64 - 2;
            let rhs = 2 * (2 * a.genus as i64 - 2) + a.fixed.total as i64;
            r.check("Riemann-Hurwitz 12 = 8 + 4", "conic.hurwitz", lhs == 12 && rhs == 12, "12 = 12", format!("{lhs} = {rhs}"));
        }
        9 => {
            let a = analyze(&reference_model(), &AnalysisOptions { seed: opts.seed, ..Default::default() })?;
            r.check_eq("ranks off the discriminant", "conic.rank-stratification", format!("{:?}", vec![3; 10]), format!("{:?}", a.ranks.ranks_off()));
            r.check_eq("ranks on the discriminant", "conic.rank-stratification", format!("{:?}", vec![2; 10]), format!("{:?}", a.ranks.ranks_on()));
            let cert = smoothness_certificate(&a.delta, &int(1))?;
            r.check("discriminant smooth at alpha = 1", "conic.smoothness", cert.torus_smooth, true, cert.torus_smooth);
        }
        10 => {
            let p = reference_model().newton_polytope()?;
            let vol = normalized_volume(&p)?;
            let t = reference_table();
            r.check_eq("volume", "hodge.volume", 19, vol);
            r.check_eq("volume = order of the reducible operator", "hodge.volume", vol, build_reducible_operator(&g).order() as u64);
            r.check_eq("volume - 1 = table total", "hodge.table-total", vol - 1, t.total());
            r.check_eq("weight-3 slice = order of H", "hodge.weight-three", t.weight_total(3), build_irreducible_operator(&g).order() as u64);
            let gen = geometric_genus_check(&g)?;
            r.check("interior points = h(3,0)", "hodge.interior", gen.pass && gen.interior == 0, 0, gen.interior);
            r.check("table symmetric", "hodge.symmetry", t.is_symmetric(), true, t.is_symmetric());
        }
        11 => {
            let cfg = ContinuationConfig {
                precision: opts.bits,
                tolerance: opts.tolerance.clone(),
                ..ContinuationConfig::default()
            };
            let report = run(&g, &cfg)?;
            for line in certify(&report) {
                r.check(&line.check, "monodromy", line.pass, "within tolerance", &line.value);
            }
            r.results = serde_json::to_value(&report).expect("report serializes");
        }
        12 => {
            let reference = reference_model();
            let simplex = simplex_model();
            let a = analyze(&reference, &AnalysisOptions { seed: opts.seed, ..Default::default() })?;
            for &p in &opts.primes {
                let mut mismatches = Vec::new();
                for alpha in 1..p {
                    let x = count_torus_points(&reference.f, p, alpha)?;
                    let y = count_torus_points(&simplex.f, p, alpha)?;
                    if x != y {
                        mismatches.push((alpha, x, y));
                    }
                }
                r.check(&format!("torus models agree mod {p}"), "gkz.point-counts", mismatches.is_empty(), "no mismatches", format!("{mismatches:?}"));
                let mut fiber = Vec::new();
                for alpha in 1..p {
                    let (up, down) = crate::conic::cover_fiber_counts(&a.delta, &a.cover.model, p, alpha)?;
                    if up != down {
                        fiber.push((alpha, up, down));
                    }
                }
                r.check(&format!("cover count = fiber sum mod {p}"), "conic.fiber-sum", fiber.is_empty(), "no mismatches", format!("{fiber:?}"));
            }
        }
        13 => {
            let cert = crate::conic::critical_alpha_certificate(&reference_model(), opts.seed)?;
            r.check_eq("critical alpha", "conic.critical", singular_value(&g), cert.alpha.clone());
            r.check("Newton residual below 1e-10", "conic.critical", cert.residual < 1e-10, "< 1e-10", format!("{:e}", cert.residual));
            r.check("monomial values proportional to gamma", "conic.critical", cert.proportional(1e-8), "< 1e-8", format!("{:e}", cert.proportionality_error));
            r.results = serde_json::to_value(&cert).expect("certificate serializes");
        }
        _ => return Err(crate::error::Error::InvalidArgument(format!("no criterion {k}"))),
    }
    Ok(r)
}

/// All criteria in order; each check is tagged with its criterion number.
pub fn verify_all(opts: &VerifyOptions) -> Result<Report> {
    let mut all = Report::new("verify-all", json!({ "bits": opts.bits, "tolerance": opts.tolerance.to_string(), "seed": opts.seed }));
    let mut per = Vec::new();
    for k in 1..=CRITERIA.len() {
        let mut r = criterion(k, opts)?;
        for c in &mut r.checks {
            c.name = format!("{k}. {}", c.name);
        }
        per.push(json!({ "criterion": k, "title": CRITERIA[k - 1], "pass": r.all_pass() }));
        all.extend(r);
    }
    all.results = json!({ "criteria": per });
    Ok(all)
}
