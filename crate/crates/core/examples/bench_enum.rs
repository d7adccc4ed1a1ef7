// Scratch timing harness for the enumeration engine.
use std::time::Instant;

use design_forge_core::design::{Params, RectangleKind};
use design_forge_core::enumerate::{count_by_aut, enumerate_classes, SearchConfig};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(7);
    let k: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(4);
    let kind = match args.get(3).map(|s| s.as_str()).unwrap_or("youden") {
        "nyr" => RectangleKind::NearYouden,
        "3lambda" => RectangleKind::ThreeLambda,
        _ => RectangleKind::Youden,
    };
    let split: usize = args.get(4).map(|s| s.parse().unwrap()).unwrap_or(0);
    let p = Params::new(n, k).unwrap();
    let cfg = SearchConfig { split_depth: split, ..SearchConfig::default() };
    let t0 = Instant::now();
    let cat = enumerate_classes(&p, kind, &cfg).unwrap();
    let dt = t0.elapsed();
    let report = count_by_aut(&cat);
    println!("({n},{k},{kind:?}): {} classes in {:.2?}", cat.len(), dt);
    println!("aut histogram: {:?}", report.by_aut_order);
}
