//! The singular fiber: Newton witness and smoothness certificates.
//!
//!     cargo run --release --example critical_fiber

use hgmkit::conic::{analyze, critical_alpha, critical_alpha_certificate, smoothness_certificate, AnalysisOptions};
use hgmkit::exact::int;
use hgmkit::gkz::reference_model;
use hgmkit::hypergeom::GammaList;

fn main() -> hgmkit::error::Result<()> {
    let model = reference_model();
    println!("critical alpha from gamma: {}", critical_alpha(GammaList::standard().entries()));

    let cert = critical_alpha_certificate(&model, 2024)?;
    println!("alpha = {}", cert.alpha);
    println!("witness point: {:?}", cert.point);
    println!("residual {:e} after {} iterations", cert.residual, cert.iterations);
    println!("proportionality error {:e}", cert.proportionality_error);

    let a = analyze(&model, &AnalysisOptions::default())?;
    for alpha in [int(1), cert.alpha.clone()] {
        let s = smoothness_certificate(&a.delta, &alpha)?;
        println!("discriminant at alpha = {alpha}: torus smooth {}, affine smooth {}, witness {:?}", s.torus_smooth, s.affine_smooth, s.witness);
    }
    Ok(())
}
