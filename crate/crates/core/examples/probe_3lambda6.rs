// Scratch: per-rectangle compatible-column distributions on (7,4).
use std::collections::BTreeMap;

use design_forge_core::arrays::{scan_compatibility, ArrayLabel};
use design_forge_core::design::{Params, RectangleKind};
use design_forge_core::enumerate::{enumerate_classes, SearchConfig};

fn main() {
    let p = Params::new(7, 4).unwrap();
    let cat =
        enumerate_classes(&p, RectangleKind::ThreeLambda, &SearchConfig::default()).unwrap();
    let mut dbl: BTreeMap<usize, usize> = BTreeMap::new();
    let mut sqt: BTreeMap<usize, usize> = BTreeMap::new();
    let mut none_label: BTreeMap<usize, usize> = BTreeMap::new();
    for rep in &cat.reps {
        let marks = scan_compatibility(rep).unwrap();
        let d = marks.iter().filter(|m| m.label == ArrayLabel::ProperDouble).count();
        let s = marks
            .iter()
            .filter(|m| m.label == ArrayLabel::TransposeOfProperSesqui)
            .count();
        let no = marks
            .iter()
            .filter(|m| m.ta1 && m.ta2 && m.label == ArrayLabel::None)
            .count();
        *dbl.entry(d).or_insert(0) += 1;
        *sqt.entry(s).or_insert(0) += 1;
        *none_label.entry(no).or_insert(0) += 1;
    }
    println!("double-compatible column count distribution: {dbl:?}");
    println!("sesqui-T-compatible column count distribution: {sqt:?}");
    println!("equireplicate-but-unlabeled column count distribution: {none_label:?}");
}
