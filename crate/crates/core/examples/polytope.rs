//! Newton polytope of the reference model: facets, volume, Ehrhart data.
//!
//!     cargo run --example polytope

use hgmkit::gkz::reference_model;
use hgmkit::hodge::interior_point_count;
use hgmkit::lattice::{delta_vector, ehrhart_polynomial, invariant_factors, normalized_volume, smith_normal_form};

fn main() -> hgmkit::error::Result<()> {
    let model = reference_model();
    let p = model.newton_polytope()?;
    println!("dimension {}, {} vertices, {} facets", p.dim, p.vertices.len(), p.facets.len());
    for v in &p.vertices {
        println!("  vertex {v:?}");
    }
    println!("normalized volume: {}", normalized_volume(&p)?);
    println!("interior lattice points: {}", interior_point_count(&p)?);
    println!("Ehrhart polynomial: {}", ehrhart_polynomial(&p)?.fmt_var("m"));
    println!("delta vector: {:?}", delta_vector(&p)?);

    let (_, d, _) = smith_normal_form(&model.stacked_matrix());
    let f: Vec<String> = invariant_factors(&d).iter().map(ToString::to_string).collect();
    println!("invariant factors of the lifted matrix: [{}]", f.join(", "));
    Ok(())
}
