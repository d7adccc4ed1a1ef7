// Scratch: is the published 3-lambda census counted up to conjugation?
use design_forge_core::design::{Params, RectangleKind};
use design_forge_core::enumerate::{enumerate_classes, SearchConfig};
use design_forge_core::isotopy::is_self_conjugate;
use rayon::prelude::*;

fn main() {
    for (n, k) in [(7usize, 3usize), (7, 4)] {
        let p = Params::new(n, k).unwrap();
        let cat =
            enumerate_classes(&p, RectangleKind::ThreeLambda, &SearchConfig::default()).unwrap();
        let selfconj: usize = cat
            .reps
            .par_iter()
            .map(|r| usize::from(is_self_conjugate(r).unwrap()))
            .sum();
        let species = (cat.len() + selfconj) / 2;
        println!(
            "({n},{k}): census {} self-conjugate {} -> up-to-conjugation {}",
            cat.len(),
            selfconj,
            species
        );
    }
}
