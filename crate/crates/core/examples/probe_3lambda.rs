// Scratch: what distinguishes the published (7,4) 3-lambda census from the
// raw intersection-window census?
use std::collections::BTreeMap;

use design_forge_core::design::{column_intersection, Params, RectangleKind};
use design_forge_core::enumerate::{enumerate_classes, SearchConfig};

fn main() {
    for (n, k, lam) in [(7usize, 3usize, 1u32), (7, 4, 2)] {
        let p = Params::new(n, k).unwrap();
        let cat =
            enumerate_classes(&p, RectangleKind::ThreeLambda, &SearchConfig::default()).unwrap();
        println!("({n},{k}) window census: {}", cat.len());
        let mut per_column_all_three = 0usize;
        let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
        for (rep, &aut) in cat.reps.iter().zip(&cat.aut_orders) {
            let mut ok = true;
            for c in 0..n {
                let mut seen = 0u8;
                for j in 0..n {
                    if j != c {
                        let m = column_intersection(rep, c, j).unwrap();
                        seen |= 1 << (m - (lam - 1));
                    }
                }
                if seen != 0b111 {
                    ok = false;
                    break;
                }
            }
            if ok {
                per_column_all_three += 1;
                *hist.entry(aut).or_insert(0) += 1;
            }
        }
        println!("  every column sees all three sizes: {per_column_all_three}");
        println!("  aut histogram: {hist:?}");
    }
}
