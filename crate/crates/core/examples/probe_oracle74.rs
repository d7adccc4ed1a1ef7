// Scratch: brute-force census of 4x7 rectangles under the literal
// three-size window definition.
use design_forge_core::design::{Params, RectangleKind};
use design_forge_core::oracle::brute_enumerate;

fn main() {
    let p = Params::new(7, 4).unwrap();
    let oracle = brute_enumerate(&p, RectangleKind::ThreeLambda).unwrap();
    println!("oracle census: {}", oracle.catalog.len());
}
