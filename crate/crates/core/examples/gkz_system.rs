//! Toric model of a gamma list, its GKZ system and the restriction to the line.
//!
//!     cargo run --example gkz_system

use hgmkit::gkz::{build_gkz, realize_monomials, reference_model, restriction_certificate};
use hgmkit::hypergeom::GammaList;
use hgmkit::lattice::affine_equivalent;

fn main() -> hgmkit::error::Result<()> {
    let g = GammaList::standard();
    let model = realize_monomials(&g)?;
    println!("realized model: {}", model.f);
    println!("coefficient exponents k = {:?}", model.kexp);
    println!("primitive: {}", model.is_primitive());

    let reference = reference_model();
    match affine_equivalent(&model.monomials, &reference.monomials) {
        Some(map) => println!("affinely equivalent to the reference model: {map:?}"),
        None => println!("not affinely equivalent to the reference model"),
    }

    let sys = build_gkz(&reference.monomials)?;
    println!("Euler rows:");
    for row in &sys.euler_ops {
        println!("  {row:?}");
    }
    for b in &sys.box_ops {
        println!("box: {}", b.display());
    }

    let cert = restriction_certificate(&g)?;
    println!("restricted == c * reducible: {}", cert.equal_up_to_unit);
    println!("common factor K with reducible = D^{} * K: {}", cert.z, cert.left_identity);
    println!("restricted = {} * K' * D^{}: {}", cert.scale, cert.z, cert.right_identity);
    Ok(())
}
