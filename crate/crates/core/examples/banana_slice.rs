//! The three-edge banana graph: its cone catalog and the slice of its fan,
//! written as SVG.
//!
//! ```text
//! cargo run --example banana_slice -- banana.svg
//! ```

use drfan::fan::{build_fan, slice_fan};
use drfan::graph::banana;
use drfan::svg::render_slice_svg;

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "banana.svg".to_string());
    let f = build_fan(&banana(3, 10)).expect("small instance");
    let by_dim = |d: usize| f.maximal_cones().filter(|c| c.dim == d).count();
    println!(
        "{} cones, {} maximal: {} planes, {} rays",
        f.cones().len(),
        f.maximal_cones().count(),
        by_dim(2),
        by_dim(1)
    );

    let slice = slice_fan(&f).unwrap();
    for cell in slice.maximal_cells().filter(|c| c.dim() == 1) {
        let ends: Vec<String> = cell
            .vertices
            .iter()
            .map(|v| format!("({}, {}, {})", v[0], v[1], v[2]))
            .collect();
        println!("segment {}", ends.join(" -- "));
    }
    std::fs::write(&path, render_slice_svg(&slice).unwrap()).expect("writable path");
    println!("wrote {path}");
}
