// Scratch timing harness for catalog scans.
use std::time::Instant;

use design_forge_core::arrays::{scan_catalog, ScanTarget};
use design_forge_core::design::{Params, RectangleKind};
use design_forge_core::enumerate::{enumerate_classes, SearchConfig};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(11);
    let k: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(5);
    let p = Params::new(n, k).unwrap();
    let t0 = Instant::now();
    let cat = enumerate_classes(&p, RectangleKind::Youden, &SearchConfig::default()).unwrap();
    println!("enumerated {} classes in {:.1?}", cat.len(), t0.elapsed());
    for target in [ScanTarget::Triple, ScanTarget::Double, ScanTarget::SesquiTranspose] {
        let t1 = Instant::now();
        let s = scan_catalog(&cat.reps, target).unwrap();
        println!(
            "{}: {} / {} / {} in {:.1?}",
            target.as_str(),
            s.compatible_rectangles,
            s.compatible_columns,
            s.classes.len(),
            t1.elapsed()
        );
    }
}
