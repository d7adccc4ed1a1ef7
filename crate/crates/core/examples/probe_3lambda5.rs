// Scratch: published-scan cross-checks on the window census.
use design_forge_core::arrays::{scan_catalog, ScanTarget};
use design_forge_core::design::{Params, RectangleKind};
use design_forge_core::enumerate::{enumerate_classes, SearchConfig};

fn main() {
    for (n, k) in [(7usize, 3usize), (7, 4)] {
        let p = Params::new(n, k).unwrap();
        let cat =
            enumerate_classes(&p, RectangleKind::ThreeLambda, &SearchConfig::default()).unwrap();
        println!("({n},{k}) census {}", cat.len());
        for target in [
            ScanTarget::Triple,
            ScanTarget::Double,
            ScanTarget::Sesqui,
            ScanTarget::SesquiTranspose,
        ] {
            let s = scan_catalog(&cat.reps, target).unwrap();
            println!(
                "  {}: {} / {} / {} (folded {})",
                target.as_str(),
                s.compatible_rectangles,
                s.compatible_columns,
                s.classes.len(),
                s.classes_folded.len()
            );
        }
    }
}
