//! Hodge numbers and the dimension identities they satisfy.
//!
//!     cargo run --example hodge_table

use hgmkit::hodge::{dimension_identities, reference_table, theorem_chain_report};
use hgmkit::hypergeom::GammaList;

fn main() -> hgmkit::error::Result<()> {
    let t = reference_table();
    for row in t.grid() {
        println!("{}", row.iter().map(|h| format!("{h:3}")).collect::<String>());
    }
    println!("total {}, weight-3 slice {}, symmetric {}", t.total(), t.weight_total(3), t.is_symmetric());

    let d = dimension_identities(&GammaList::standard())?;
    for c in &d.checks {
        println!("{:<45} {} = {} [{}]", c.name, c.left, c.right, if c.pass { "ok" } else { "FAIL" });
    }

    let chain = theorem_chain_report()?;
    for e in &chain.entries {
        println!("{:<40} {:>3}  ({})", e.quantity, e.value, e.module);
    }
    println!("all equal: {}", chain.all_equal);
    Ok(())
}
