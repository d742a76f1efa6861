//! Monodromy of H by high-precision Taylor continuation.
//!
//!     cargo run --release --example monodromy -- 192

use hgmkit::hypergeom::GammaList;
use hgmkit::monodromy::{certify, run, ContinuationConfig};

fn main() -> hgmkit::error::Result<()> {
    let bits = std::env::args().nth(1).map_or(192, |s| s.parse().expect("bits"));
    let cfg = ContinuationConfig { precision: bits, ..ContinuationConfig::default() };
    let report = run(&GammaList::standard(), &cfg)?;

    println!("{}", report.convention);
    for c in &report.charpolys {
        println!("char({}) vs {}: residual {:e}", c.matrix, c.expected, c.residual);
    }
    for d in &report.determinants {
        println!("{d:?}");
    }
    println!("singular values of M_sing - I: {:?}", report.singular_values);
    println!("rank(M_sing - I) = {}", report.reflection_rank);
    println!("product residual {:e}", report.product_residual);
    for line in certify(&report) {
        println!("[{}] {}: {}", if line.pass { "PASS" } else { "FAIL" }, line.check, line.value);
    }
    Ok(())
}
