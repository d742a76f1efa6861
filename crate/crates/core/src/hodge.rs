//! Hodge–Deligne bookkeeping for the reference model and the rank ledger
//! tying the operator, the table, and the conic bundle together.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::conic::{analyze, AnalysisOptions};
use crate::error::{Error, Result};
use crate::gkz::{realize_monomials, reference_model};
use crate::hypergeom::{build_irreducible_operator, build_reducible_operator, GammaList};
use crate::lattice::{lattice_points, normalized_volume, Polytope};

/// Entries `h(p, q)` for `0 ≤ p, q ≤ 3`; absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeTable {
    entries: BTreeMap<(u8, u8), u64>,
}

/// Orientation used when rendering the table as a grid.
pub const TABLE_ORIENTATION: &str = "h(p,q) at column p, row q, with (0,0) in the bottom-left corner";

impl HodgeTable {
    pub fn new(entries: BTreeMap<(u8, u8), u64>) -> Result<Self> {
        if entries.keys().any(|&(p, q)| p > 3 || q > 3) {
            return Err(Error::InvalidArgument("indices must lie in 0..=3".into()));
        }
        Ok(Self { entries })
    }

    pub fn get(&self, p: u8, q: u8) -> u64 {
        self.entries.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// `Σ_{p+q=k} h(p, q)`.
    pub fn weight_total(&self, k: u8) -> u64 {
        self.entries.iter().filter(|((p, q), _)| p + q == k).map(|(_, v)| v).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|(&(p, q), &v)| self.get(q, p) == v)
    }

    /// Rows from `q = 3` down to `q = 0`.
    pub fn grid(&self) -> Vec<Vec<u64>> {
        (0..4u8).rev().map(|q| (0..4u8).map(|p| self.get(p, q)).collect()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|(&(p, q), &h)| serde_json::json!({"p": p, "q": q, "h": h}))
            .collect();
        serde_json::json!({
            "entries": entries,
            "grid": self.grid(),
            "orientation": TABLE_ORIENTATION,
            "total": self.total(),
            "weightTotals": (0..=6u8).map(|k| self.weight_total(k)).collect::<Vec<_>>(),
            "symmetric": self.is_symmetric(),
        })
    }
}

/// Table of the primitive middle compactly supported cohomology of the
/// reference fourfold.
pub fn reference_table() -> HodgeTable {
    let entries = [((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 7), ((2, 1), 4), ((1, 2), 4)];
    HodgeTable::new(entries.into_iter().collect()).expect("indices in range")
}

/// One compared pair of integers.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub left: i64,
    pub right: i64,
    pub source: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &str, left: i64, right: i64, source: &str) -> Self {
        Self {
            name: name.into(),
            left,
            right,
            source: source.into(),
            pass: left == right,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub gamma: String,
    pub n: usize,
    pub volume: u64,
    /// `(vol + n, vol - 1, vol)`.
    pub triple: (i64, i64, i64),
    pub checks: Vec<Check>,
}

impl DimensionReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn volume_of(gamma: &GammaList) -> Result<(usize, u64, Polytope)> {
    let model = if *gamma == GammaList::standard() {
        reference_model()
    } else {
        realize_monomials(gamma)?
    };
    let p = model.newton_polytope()?;
    Ok((model.n(), normalized_volume(&p)?, p))
}

/// Volume of the Newton polytope and the dimensions it determines, checked
/// against the operator orders and, for the standard list, the table.
pub fn dimension_identities(gamma: &GammaList) -> Result<DimensionReport> {
    let (n, vol, _) = volume_of(gamma)?;
    let v = vol as i64;
    let mut checks = vec![Check::new(
        "volume = order of reducible operator",
        v,
        build_reducible_operator(gamma).order() as i64,
        "lattice / hypergeom",
    )];
    if *gamma == GammaList::standard() {
        let t = reference_table();
        checks.push(Check::new("volume - 1 = table total", v - 1, t.total() as i64, "lattice / hodge"));
        checks.push(Check::new(
            "order of irreducible operator = weight-3 total",
            build_irreducible_operator(gamma).order() as i64,
            t.weight_total(3) as i64,
            "hypergeom / hodge",
        ));
    }
    Ok(DimensionReport {
        gamma: gamma.to_string(),
        n,
        volume: vol,
        triple: (v + n as i64, v - 1, v),
        checks,
    })
}

pub fn interior_point_count(p: &Polytope) -> Result<u64> {
    Ok(lattice_points(p, 1, true)?.len() as u64)
}

#[derive(Clone, Debug, Serialize)]
pub struct GenusCheck {
    pub gamma: String,
    pub interior: u64,
    pub expected: u64,
    /// What `expected` is.
    pub against: String,
    pub pass: bool,
}

/// Interior points of the Newton polytope against the top holomorphic
/// count: the table entry `h(3,0)` for the standard fourfold, half the
/// operator order for a curve.
pub fn geometric_genus_check(gamma: &GammaList) -> Result<GenusCheck> {
    let (n, _, p) = volume_of(gamma)?;
    let interior = interior_point_count(&p)?;
    let (expected, against) = if *gamma == GammaList::standard() {
        (reference_table().get(3, 0), "table entry h(3,0)".to_string())
    } else if n == 2 {
        let order = build_irreducible_operator(gamma).order() as u64;
        (order / 2, format!("half the operator order {order}"))
    } else {
        return Err(Error::UnsupportedDimension(n));
    };
    Ok(GenusCheck {
        gamma: gamma.to_string(),
        interior,
        expected,
        against,
        pass: interior == expected,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainEntry {
    pub quantity: String,
    pub value: i64,
    pub module: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremChain {
    pub entries: Vec<ChainEntry>,
    pub all_equal: bool,
    /// Integral metadata, not a rank.
    pub cokernel_note: String,
    pub orientation: String,
    pub curve_side: GenusCheck,
}

/// The rank of the weight-3 local system computed four ways.
pub fn theorem_chain_report() -> Result<TheoremChain> {
    let g = GammaList::standard();
    let conic = analyze(&reference_model(), &AnalysisOptions::default())?;
    let entry = |q: &str, v: i64, m: &str| ChainEntry {
        quantity: q.into(),
        value: v,
        module: m.into(),
    };
    let entries = vec![
        entry("order of the irreducible operator", build_irreducible_operator(&g).order() as i64, "hypergeom"),
        entry("weight-3 slice of the table", reference_table().weight_total(3) as i64, "hodge"),
        entry("2*genus(cover) - 2*genus(discriminant)", conic.genus_rank(), "conic"),
        entry("rank of the anti-invariant lattice", conic.anti_invariant_rank as i64, "conic"),
    ];
    let all_equal = entries.iter().all(|e| e.value == entries[0].value);
    Ok(TheoremChain {
        entries,
        all_equal,
        cokernel_note: "integrally the trace map has cokernel Z/2".into(),
        orientation: TABLE_ORIENTATION.into(),
        curve_side: geometric_genus_check(&"(-9,1,3,5)".parse()?)?,
    })
}
