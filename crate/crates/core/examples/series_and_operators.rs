//! Series coefficients, local exponents and the operators H, G, H~ of a gamma list.
//!
//!     cargo run --example series_and_operators -- -18,-1,2,3,5,9

use hgmkit::hypergeom::{
    bh_ratio, build_cofactor, build_irreducible_operator, build_reducible_operator, reduced_exponents, series,
    singular_value, BhRatio, GammaList,
};

fn main() -> hgmkit::error::Result<()> {
    let g = match std::env::args().nth(1) {
        Some(s) => GammaList::new(s.split(',').map(|t| t.trim().parse().expect("integer entry")).collect())?,
        None => GammaList::standard(),
    };
    println!("gamma = {:?}", g.entries());

    let a = series(&g, 6);
    for (j, c) in a.iter().enumerate() {
        println!("A_{j} = {c}");
    }

    let e = reduced_exponents(&g);
    let show = |v: &[hgmkit::exact::Rat]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    println!("singular value = {}", singular_value(&g));
    println!("order {}; exponents at 0: [{}]", e.order, show(&e.exps0));
    println!("exponents at infinity: [{}]", show(&e.exps_inf));

    let bh = bh_ratio(&g)?;
    println!("q0 = {}, q_inf = {}, identity holds: {}", BhRatio::describe(&bh.q0), BhRatio::describe(&bh.q_inf), bh.holds);

    let h = build_irreducible_operator(&g);
    let cof = build_cofactor(&g);
    let red = build_reducible_operator(&g);
    println!("H  (order {}) = {h}", h.order());
    println!("G  (order {})", cof.order());
    println!("H~ (order {})", red.order());
    println!("G*H == H~: {}", cof.compose(&h) == red);

    let killed = h.apply_to_series(&series(&g, 31), 30)?;
    println!("H applied to the series vanishes through degree 29: {}", killed.iter().all(|c| *c == hgmkit::exact::int(0)));
    Ok(())
}
