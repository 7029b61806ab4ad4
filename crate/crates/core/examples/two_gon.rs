//! Rays of the fan of the 2-gon with legs `+n` and `-n`.
//!
//! ```text
//! cargo run --example two_gon -- 6
//! ```

use drfan::fan::build_fan;
use drfan::graph::banana;

fn main() {
    let n: i64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("n must be an integer"))
        .unwrap_or(5);
    let f = build_fan(&banana(2, n)).expect("small instance");
    println!("2-gon, n = {n}: {} rays", f.rays().len());
    for c in f.ray_cones() {
        let r = &c.cone.rays()[0];
        let flows = c.witness.as_ref().unwrap();
        println!("  ray ({}, {})  flows {flows:?}", r[0], r[1]);
    }
}
