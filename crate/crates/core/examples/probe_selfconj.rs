// Scratch: self-conjugacy counts on the small near-Youden catalogs.
use design_forge_core::design::{classify_rectangle, Params, RectangleKind};
use design_forge_core::enumerate::{enumerate_classes, SearchConfig};
use design_forge_core::isotopy::{conjugate, is_self_conjugate};

fn main() {
    for (n, k, want) in [
        (5usize, 2usize, 1u64),
        (5, 3, 2),
        (6, 2, 2),
        (6, 3, 2),
        (6, 4, 29),
        (7, 2, 2),
        (8, 3, 3),
        (9, 3, 11),
    ] {
        let p = Params::new(n, k).unwrap();
        let cat = enumerate_classes(&p, RectangleKind::NearYouden, &SearchConfig::default())
            .unwrap();
        let mut sc = 0u64;
        for rep in &cat.reps {
            if is_self_conjugate(rep).unwrap() {
                sc += 1;
            }
        }
        println!(
            "({n},{k}): classes {} self-conjugate {} (published {want})",
            cat.len(),
            sc
        );
        if sc != want && n == 6 && k == 4 {
            for rep in &cat.reps {
                let c = conjugate(rep).unwrap();
                println!(
                    "  rep kind {:?} conj kind {:?} selfconj {}",
                    classify_rectangle(rep),
                    classify_rectangle(&c),
                    is_self_conjugate(rep).unwrap()
                );
            }
        }
    }
}
