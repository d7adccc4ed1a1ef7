// Scratch: joint invariant distribution over the (7,4) window census.
use std::collections::BTreeMap;

use design_forge_core::design::{covering_table, intersection_profile, Params, RectangleKind};
use design_forge_core::enumerate::{enumerate_classes, SearchConfig};

fn main() {
    let p = Params::new(7, 4).unwrap();
    let cat =
        enumerate_classes(&p, RectangleKind::ThreeLambda, &SearchConfig::default()).unwrap();
    // key: (cover set, sorted per-column patterns), value: aut histogram
    let mut table: BTreeMap<(Vec<u32>, Vec<u8>), BTreeMap<u64, u64>> = BTreeMap::new();
    for (rep, &aut) in cat.reps.iter().zip(&cat.aut_orders) {
        let cov = covering_table(rep).unwrap();
        let mut vals: Vec<u32> = cov.counts().values().copied().collect();
        vals.sort_unstable();
        vals.dedup();
        let prof = intersection_profile(rep).unwrap();
        let mut pattern: Vec<u8> = (0..7)
            .map(|c| {
                let mut seen = 0u8;
                for j in 0..7 {
                    if j != c {
                        seen |= 1 << (prof.size(c, j) - 1);
                    }
                }
                seen
            })
            .collect();
        pattern.sort_unstable();
        *table.entry((vals, pattern)).or_default().entry(aut).or_insert(0) += 1;
    }
    for ((covers, pattern), hist) in &table {
        let total: u64 = hist.values().sum();
        println!("covers {covers:?} pattern {pattern:?} -> {total} {hist:?}");
    }
}
