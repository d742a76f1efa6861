//! Run selected acceptance criteria, or all of them.
//!
//!     cargo run --release --example verify -- 1 2 3

use hgmkit::verify::{criterion, VerifyOptions, CRITERIA};

fn main() -> hgmkit::error::Result<()> {
    let picked: Vec<usize> = std::env::args().skip(1).map(|s| s.parse().expect("criterion number")).collect();
    let picked = if picked.is_empty() { (1..=CRITERIA.len()).collect() } else { picked };
    let opts = VerifyOptions::default();
    let mut failed = 0;
    for k in picked {
        let r = criterion(k, &opts)?;
        print!("{}", r.summary());
        let ok = r.all_pass();
        failed += usize::from(!ok);
        println!("criterion {k} ({}): {}\n", CRITERIA[k - 1], if ok { "PASS" } else { "FAIL" });
    }
    std::process::exit(i32::from(failed > 0));
}
