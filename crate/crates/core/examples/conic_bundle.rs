//! Discriminant curve, double cover and their invariants for the reference model.
//!
//!     cargo run --example conic_bundle -- 1/1

use hgmkit::conic::{analyze, AnalysisOptions};
use hgmkit::exact::parse_rat;
use hgmkit::gkz::reference_model;

fn main() -> hgmkit::error::Result<()> {
    let alpha = parse_rat(&std::env::args().nth(1).unwrap_or_else(|| "1".into()))?;
    let a = analyze(&reference_model(), &AnalysisOptions { alpha, ..Default::default() })?;

    println!("fiber variables: u{}, u{}", a.fiber_vars.0, a.fiber_vars.1);
    println!("diagonal form: {:?}", a.diagonal.form.to_json());
    println!("discriminant: {}", a.delta.f);
    println!("cover:        {}", a.cover.model.f);
    println!("plane closure: {}", a.n.f);
    println!("weighted closure (degree {}, weights {:?}): {}", a.ntilde.degree, a.ntilde.weights, a.ntilde.f);
    println!("genus {} -> cover genus {}", a.genus, a.cover_genus);
    println!("fixed points {}, branch points {}", a.fixed.total, a.branch.total);
    println!("anti-invariant rank {} (2g~ - 2g = {})", a.anti_invariant_rank, a.genus_rank());
    println!("Riemann-Hurwitz holds: {}", a.hurwitz_holds());
    println!("ranks on the discriminant: {:?}", a.ranks.ranks_on());
    println!("ranks off the discriminant: {:?}", a.ranks.ranks_off());
    println!("discriminant smooth on the torus: {}", a.smooth_delta.torus_smooth);
    Ok(())
}
