use hgmkit::conic::*;
use hgmkit::exact::{int, rat, LaurentPoly, Rat};
use hgmkit::gkz::{realize_monomials, reference_model};

fn poly(vars: &[&str], terms: &[(i64, &[i64])]) -> LaurentPoly {
    LaurentPoly::from_terms(vars, terms.iter().map(|(c, e)| (int(*c), e.to_vec())))
}

struct Pipeline {
    q: QuadForm3,
    diag: Diagonalization,
    delta: PlaneCurveModel,
    cover: DoubleCover,
    n: WeightedCurve,
    ntilde: WeightedCurve,
}

fn pipeline() -> Pipeline {
    let q = conic_chart(&reference_model()).unwrap();
    let diag = diagonalize(&q).unwrap();
    let delta = discriminant(&diag.form).unwrap();
    let cover = double_cover(&q, &delta, (1, 2)).unwrap();
    let n = projective_closure(&delta, &[1, 1, 1], &["u0", "u1", "u2"]).unwrap();
    let ntilde = projective_closure(&cover.model, &[1, 1, 3], &["x0", "x1", "y"]).unwrap();
    Pipeline { q, diag, delta, cover, n, ntilde }
}

#[test]
fn chart_entries() {
    let p = pipeline();
    let v = BASE_VARS;
    assert_eq!(*p.q.get(0, 0), poly(&v, &[(1, &[0, 3, 1]), (1, &[0, 0, 3])]));
    assert_eq!(*p.q.get(0, 1), poly(&v, &[(1, &[0, 1, 1])]).scale(&rat(1, 2)));
    assert_eq!(*p.q.get(1, 1), poly(&v, &[(1, &[0, 1, 0])]));
    assert_eq!(*p.q.get(2, 2), poly(&v, &[(-1, &[-1, 0, 0])]));
    assert!(p.q.get(1, 2).is_zero());
    assert!(p.diag.form.is_diagonal());
}

#[test]
fn congruence_preserves_determinant() {
    let p = pipeline();
    assert_eq!(p.diag.form.det(), p.q.det());
    assert_eq!(det3(&p.diag.s), LaurentPoly::constant(&BASE_VARS, Rat::from_integer(1.into())));
}

#[test]
fn discriminant_and_cover() {
    let p = pipeline();
    let v = BASE_VARS;
    let delta = poly(&v, &[(4, &[0, 3, 1]), (4, &[0, 0, 3]), (1, &[1, 0, 0]), (-1, &[0, 1, 2])]);
    assert_eq!(p.delta.f, delta);
    let cover = poly(&v, &[(4, &[3, 6, 1]), (4, &[0, 0, 3]), (1, &[1, 0, 0]), (-1, &[1, 2, 2])]);
    assert_eq!(p.cover.model.f, cover);
    assert!(p.cover.pullback_identity);
    assert_eq!(p.cover.minor, poly(&v, &[(-1, &[-1, 1, 0])]));
    assert_eq!(p.cover.model.lattice_scale, vec![2, 1]);
}

#[test]
fn closures() {
    let p = pipeline();
    let nv = ["alpha", "u0", "u1", "u2"];
    let n = poly(&nv, &[(4, &[0, 0, 3, 1]), (4, &[0, 1, 0, 3]), (1, &[1, 4, 0, 0]), (-1, &[0, 1, 1, 2])]);
    assert_eq!(p.n.f, n);
    assert_eq!(p.n.degree, 4);
    let tv = ["alpha", "x0", "x1", "y"];
    let nt = poly(&tv, &[(4, &[0, 0, 0, 3]), (-1, &[1, 1, 2, 2]), (4, &[3, 0, 6, 1]), (1, &[1, 9, 0, 0])]);
    assert_eq!(p.ntilde.f, nt);
    assert_eq!(p.ntilde.degree, 9);
    assert!(p.ntilde.is_homogeneous());
}

#[test]
fn genera_fixed_points_and_hurwitz() {
    let p = pipeline();
    let g = genus_from_polytope(&p.delta).unwrap();
    let gt = genus_from_polytope(&p.cover.model).unwrap();
    assert_eq!((g, gt), (3, 7));
    let fixed = involution_fixed_points(&p.ntilde, &int(1)).unwrap();
    assert_eq!(fixed.line_points, 3);
    assert!(fixed.extra_point);
    assert!(!fixed.line_point_at_infinity);
    assert_eq!(fixed.total, 4);
    assert_eq!(2 * gt - 2, 2 * (2 * g - 2) + fixed.total as u64);
}

#[test]
fn branch_locus() {
    let p = pipeline();
    let b = branch_data(&p.n, &p.ntilde, &int(3)).unwrap();
    assert!(b.quotient_identity);
    assert_eq!(b.branch_points_on_line, 3);
    assert!(b.p0_on_curve);
    assert_eq!(b.total, 4);
}

#[test]
fn rank_drops_exactly_on_the_discriminant() {
    let p = pipeline();
    let t = rank_stratification(&p.q, &p.delta, 2024, 10).unwrap();
    assert_eq!(t.ranks_off(), vec![3; 10]);
    assert_eq!(t.ranks_on(), vec![2; 10]);
}

#[test]
fn boundary_restrictions() {
    let p = pipeline();
    let (at_x0, at_x12) = boundary_divisors(&p.q);
    let vars = ["alpha", "u1", "u2", "x0", "x1", "x2"];
    assert_eq!(at_x0, poly(&vars, &[(1, &[1, 1, 0, 0, 2, 0]), (-1, &[0, 0, 0, 0, 0, 2])]));
    assert_eq!(at_x12, poly(&vars, &[(1, &[0, 3, 0, 0, 0, 0]), (1, &[0, 0, 2, 0, 0, 0])]));
}

#[test]
fn smooth_away_from_critical_value() {
    let p = pipeline();
    for c in [&p.delta, &p.cover.model] {
        let cert = smoothness_certificate(c, &int(1)).unwrap();
        assert!(cert.torus_smooth, "{cert:?}");
    }
}

#[test]
fn fiber_sum_matches_cover() {
    let p = pipeline();
    for (prime, a) in [(11, 2), (7, 3), (13, 5)] {
        let (up, down) = cover_fiber_counts(&p.delta, &p.cover.model, prime, a).unwrap();
        assert_eq!(up, down, "p = {prime}, alpha = {a}");
    }
}

#[test]
fn critical_witnesses() {
    let cert = critical_alpha_certificate(&reference_model(), 11).unwrap();
    assert_eq!(cert.alpha, Rat::new(3125.into(), 940369969152i64.into()));
    assert!(cert.residual < 1e-10);
    assert!(cert.proportional(1e-8));
    let small = realize_monomials(&"(-2,1,1)".parse().unwrap()).unwrap();
    let cert = critical_alpha_certificate(&small, 11).unwrap();
    assert_eq!(cert.alpha, rat(-1, 4));
    assert!(cert.proportional(1e-8));
}

#[test]
fn analysis_bundle() {
    let a = analyze(&reference_model(), &AnalysisOptions::default()).unwrap();
    assert_eq!(a.genus_rank(), 8);
    assert_eq!(a.anti_invariant_rank, 8);
    assert!(a.hurwitz_holds());
    assert_eq!(a.fiber_vars, (3, 4));
    let json = a.to_json();
    assert_eq!(json["coverGenus"], 7);
}
