use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use hgmkit::exact::{int, rat, LaurentPoly, Rat, UniPoly};
use hgmkit::gkz::{count_torus_points, reference_model};
use hgmkit::hypergeom::{bh_ratio, build_cofactor, build_irreducible_operator, build_reducible_operator, reduced_exponents, GammaList};
use hgmkit::lattice::{ehrhart_polynomial, hull_and_facets, lattice_points, normalized_volume, smith_normal_form, IntMatrix, PointConfig};
use hgmkit::ore::OreOp;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-50i64..50, 1i64..20).prop_map(|(p, q)| rat(p, q))
}

const VARS: [&str; 3] = ["a", "x", "y"];

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..5, -2i64..3, -2i64..3, -2i64..3), 0..5).prop_map(|terms| {
        LaurentPoly::from_terms(&VARS, terms.into_iter().map(|(c, i, j, k)| (int(c), vec![i, j, k])))
    })
}

/// Unimodular n x n matrix from elementary row moves.
fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0..n, 0..n, prop::bool::ANY), 0..8).prop_map(move |moves| {
        let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for (i, j, neg) in moves {
            if i == j {
                continue;
            }
            let s = if neg { -1 } else { 1 };
            for k in 0..n {
                m[i][k] += s * m[j][k];
            }
        }
        m
    })
}

fn monomial_images(vars: &[&str], fixed: usize, u: &[Vec<i64>]) -> Vec<LaurentPoly> {
    let n = u.len();
    let mut out = Vec::new();
    for i in 0..fixed {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        out.push(LaurentPoly::monomial(vars, &e, Rat::one()));
    }
    for col in 0..n {
        let mut e = vec![0; fixed];
        e.extend((0..n).map(|row| u[row][col]));
        out.push(LaurentPoly::monomial(vars, &e, Rat::one()));
    }
    out
}

fn ore_op() -> impl Strategy<Value = OreOp> {
    prop::collection::vec((-1i64..3, prop::collection::vec(-3i64..4, 0..3)), 1..3).prop_map(|parts| {
        parts
            .into_iter()
            .fold(OreOp::zero(), |acc, (e, c)| acc.add(&OreOp::from_part(e, UniPoly::from_ints(&c))))
    })
}

fn gamma_list() -> impl Strategy<Value = GammaList> {
    (prop::collection::vec(1i64..7, 1..4), 1u64..4).prop_map(|(pos, cut)| {
        let total: i64 = pos.iter().sum();
        let mut entries: Vec<i64> = pos;
        let first = 1 + (cut as i64 % total.max(1));
        if first < total {
            entries.extend([-first, -(total - first)]);
        } else {
            entries.push(-total);
        }
        GammaList::new(entries).expect("balanced")
    })
}

fn random_points() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..3, 3), 4..7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_field_laws(a in small_rat(), b in small_rat(), c in small_rat()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * a.recip(), Rat::one());
        }
    }

    #[test]
    fn laurent_ring_laws(f in laurent(), g in laurent(), h in laurent()) {
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn monomial_substitution_is_a_ring_map(f in laurent(), g in laurent(), u in unimodular(2)) {
        let images = monomial_images(&VARS, 1, &u);
        let fg = (&f * &g).substitute_monomials(&images).unwrap();
        let split = &f.substitute_monomials(&images).unwrap() * &g.substitute_monomials(&images).unwrap();
        prop_assert_eq!(fg, split);
    }

    #[test]
    fn ore_composition_is_associative(a in ore_op(), b in ore_op(), c in ore_op()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert_eq!(a.compose(&b.add(&c)), a.compose(&b).add(&a.compose(&c)));
    }

    #[test]
    fn smith_form_is_diagonal_and_equivalent(rows in prop::collection::vec(prop::collection::vec(-6i64..7, 4), 1..4)) {
        let m = IntMatrix::from_rows(&rows);
        let (u, d, v) = smith_normal_form(&m);
        prop_assert!(u.is_unimodular() && v.is_unimodular());
        prop_assert_eq!(&(&u * &m) * &v, d.clone());
        let mut prev: Option<BigInt> = None;
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j {
                    prop_assert!(d.get(i, j).is_zero());
                }
            }
            if i < d.cols() {
                let x = d.get(i, i).clone();
                if let Some(p) = &prev {
                    let divides = if p.is_zero() { x.is_zero() } else { (&x % p).is_zero() };
                    prop_assert!(divides, "{} does not divide {}", p, x);
                }
                prev = Some(x);
            }
        }
    }

    #[test]
    fn reduced_operator_data(g in gamma_list()) {
        let h = build_irreducible_operator(&g);
        let e = reduced_exponents(&g);
        prop_assert_eq!(h.order(), e.order);
        prop_assert_eq!(build_cofactor(&g).compose(&h), build_reducible_operator(&g));
        prop_assert!(bh_ratio(&g).unwrap().holds);
    }

    #[test]
    fn ehrhart_reciprocity(pts in random_points()) {
        let config = PointConfig::new(pts).unwrap();
        let poly = hull_and_facets(&config).unwrap();
        prop_assume!(poly.dim == 3);
        let l = ehrhart_polynomial(&poly).unwrap();
        for m in 1..=2u64 {
            let interior = lattice_points(&poly, m, true).unwrap().len() as i64;
            prop_assert_eq!(l.eval(&int(-(m as i64))), int(-interior));
        }
        let vol = normalized_volume(&poly).unwrap() as i64;
        prop_assert_eq!(l.leading().cloned().unwrap() * int(6), int(vol));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn torus_counts_are_invariant_under_unimodular_maps(u in unimodular(4), alpha in 1u64..7) {
        let f = reference_model().f;
        let names: Vec<&str> = f.var_names();
        let images = monomial_images(&names, 1, &u);
        let g = f.substitute_monomials(&images).unwrap();
        prop_assert_eq!(count_torus_points(&f, 7, alpha).unwrap(), count_torus_points(&g, 7, alpha).unwrap());
    }
}
