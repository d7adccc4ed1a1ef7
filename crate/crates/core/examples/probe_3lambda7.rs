// Scratch: row-deletion reachability hypotheses for the (7,4) census.
use std::collections::BTreeMap;

use design_forge_core::design::{classify_rectangle, Params, Rectangle, RectangleKind};
use design_forge_core::enumerate::{enumerate_classes, SearchConfig};

fn main() {
    let p4 = Params::new(7, 4).unwrap();
    let p3 = Params::new(7, 3).unwrap();
    let cat =
        enumerate_classes(&p4, RectangleKind::ThreeLambda, &SearchConfig::default()).unwrap();
    let mut some_sub_3lambda = 0usize;
    let mut hist_a: BTreeMap<u64, u64> = BTreeMap::new();
    let mut some_sub_window = 0usize;
    let mut hist_b: BTreeMap<u64, u64> = BTreeMap::new();
    for (rep, &aut) in cat.reps.iter().zip(&cat.aut_orders) {
        let mut any_strict = false;
        let mut any_window = false;
        for drop in 0..4 {
            let rows: Vec<Vec<u8>> = (0..4)
                .filter(|&r| r != drop)
                .map(|r| rep.row(r).to_vec())
                .collect();
            let cells: Vec<u8> = rows.concat();
            let sub = Rectangle::new(p3, cells).unwrap();
            match classify_rectangle(&sub) {
                RectangleKind::ThreeLambda => {
                    any_strict = true;
                    any_window = true;
                }
                RectangleKind::Youden | RectangleKind::NearYouden => {}
                _ => {
                    // Window test: all pairwise intersections within 0..=2.
                    let ok = (0..7).all(|i| {
                        (i + 1..7).all(|j| {
                            (sub.column_mask(i) & sub.column_mask(j)).count_ones() <= 2
                        })
                    });
                    if ok {
                        any_window = true;
                    }
                }
            }
        }
        if any_strict {
            some_sub_3lambda += 1;
            *hist_a.entry(aut).or_insert(0) += 1;
        }
        if any_window {
            some_sub_window += 1;
            *hist_b.entry(aut).or_insert(0) += 1;
        }
    }
    println!("some 3-row sub is strictly 3-lambda: {some_sub_3lambda} {hist_a:?}");
    println!("some 3-row sub fits the k=3 window: {some_sub_window} {hist_b:?}");
    println!("published:                          872 {{1:756, 2:101, 3:10, 4:3, 6:1, 14:1}}");
}
