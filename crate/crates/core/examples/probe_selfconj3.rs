// Scratch: self-conjugacy counts across all gated near-Youden cells.
use design_forge_core::design::{Params, RectangleKind};
use design_forge_core::enumerate::{enumerate_classes, SearchConfig};
use design_forge_core::isotopy::is_self_conjugate;
use rayon::prelude::*;

fn main() {
    for (n, k, want) in [
        (5usize, 2usize, 1u64),
        (5, 3, 2),
        (6, 2, 2),
        (6, 3, 2),
        (6, 4, 29),
        (7, 2, 2),
        (7, 5, 2_778),
        (8, 3, 3),
        (8, 4, 212),
        (8, 5, 3_608),
        (9, 3, 11),
        (9, 4, 2_955),
        (10, 3, 59),
        (11, 3, 501),
    ] {
        let p = Params::new(n, k).unwrap();
        let cat = enumerate_classes(&p, RectangleKind::NearYouden, &SearchConfig::default())
            .unwrap();
        let sc: u64 = cat
            .reps
            .par_iter()
            .map(|r| u64::from(is_self_conjugate(r).unwrap()))
            .sum();
        let tag = if sc == want { "match" } else { "DIFFERS" };
        println!("({n},{k}): {} classes, self-conjugate {sc} vs published {want}  {tag}", cat.len());
    }
}
