// Scratch: fingerprint the (7,4) discrepancy against the published scans.
use std::collections::BTreeMap;

use design_forge_core::arrays::{scan_compatibility, ArrayLabel};
use design_forge_core::design::{intersection_profile, Params, RectangleKind};
use design_forge_core::enumerate::{enumerate_classes, SearchConfig};

fn main() {
    let p = Params::new(7, 4).unwrap();
    let cat =
        enumerate_classes(&p, RectangleKind::ThreeLambda, &SearchConfig::default()).unwrap();
    println!("census: {}", cat.len());

    // Global histogram of intersection sizes (number of lam-1 pairs).
    let mut by_low_pairs: BTreeMap<u32, u64> = BTreeMap::new();
    // Distribution of per-column size-set patterns.
    let mut col_patterns: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
    let mut dbl_rects = 0usize;
    let mut dbl_cols = 0usize;
    let mut sqt_rects = 0usize;
    let mut sqt_cols = 0usize;

    for rep in &cat.reps {
        let prof = intersection_profile(rep).unwrap();
        let low = prof.multiset_summary().get(&1).copied().unwrap_or(0);
        *by_low_pairs.entry(low).or_insert(0) += 1;

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
        *col_patterns.entry(pattern).or_insert(0) += 1;

        let marks = scan_compatibility(rep).unwrap();
        let d = marks.iter().filter(|m| m.label == ArrayLabel::ProperDouble).count();
        let s = marks
            .iter()
            .filter(|m| m.label == ArrayLabel::TransposeOfProperSesqui)
            .count();
        if d > 0 {
            dbl_rects += 1;
            dbl_cols += d;
        }
        if s > 0 {
            sqt_rects += 1;
            sqt_cols += s;
        }
    }
    println!("double scan: {dbl_rects} rects / {dbl_cols} cols (published 97/104)");
    println!("sesqui-T scan: {sqt_rects} rects / {sqt_cols} cols (published 73/78)");
    println!("classes by #(lam-1) pairs: {by_low_pairs:?}");
    println!("column patterns (bit0=lam-1,bit1=lam,bit2=lam+1):");
    for (pat, count) in &col_patterns {
        println!("  {pat:?} -> {count}");
    }
}
