//! Torus point counts of both models and the fiber sum over the discriminant.
//!
//!     cargo run --release --example point_counts -- 7 11

use hgmkit::conic::{analyze, cover_fiber_counts, AnalysisOptions};
use hgmkit::gkz::{count_torus_points, reference_model, simplex_model};

fn main() -> hgmkit::error::Result<()> {
    let primes: Vec<u64> = std::env::args().skip(1).map(|s| s.parse().expect("prime")).collect();
    let primes = if primes.is_empty() { vec![7, 11] } else { primes };
    let (reference, simplex) = (reference_model(), simplex_model());
    let a = analyze(&reference, &AnalysisOptions::default())?;

    for p in primes {
        println!("p = {p}");
        println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "alpha", "reference", "simplex", "cover", "fiber sum");
        for alpha in 1..p {
            let x = count_torus_points(&reference.f, p, alpha)?;
            let y = count_torus_points(&simplex.f, p, alpha)?;
            let (up, down) = cover_fiber_counts(&a.delta, &a.cover.model, p, alpha)?;
            println!("{alpha:>6} {x:>10} {y:>10} {up:>10} {down:>10}");
        }
    }
    Ok(())
}
