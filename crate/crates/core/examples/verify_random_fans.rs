//! Build and verify the fans of a batch of random small graphs.
//!
//! ```text
//! cargo run --release --example verify_random_fans -- 7 100
//! ```

use drfan::corpus::{corpus, CorpusParams};
use drfan::fan::{build_fan, verify_fan};
use rayon::prelude::*;

fn main() {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().map_or(7, |s| s.parse().unwrap());
    let count: usize = args.next().map_or(50, |s| s.parse().unwrap());

    let graphs = corpus(seed, count, &CorpusParams::default());
    let results: Vec<(usize, usize, bool)> = graphs
        .par_iter()
        .map(|g| {
            let f = build_fan(g).expect("small instance");
            (
                f.cones().len(),
                f.maximal_cones().count(),
                verify_fan(&f).is_ok(),
            )
        })
        .collect();

    for (g, (cones, maximal, ok)) in graphs.iter().zip(&results) {
        println!(
            "|V|={} |E|={} h1={} k={}: {cones} cones, {maximal} maximal, {}",
            g.num_vertices(),
            g.num_edges(),
            g.first_betti(),
            g.twist(),
            if *ok { "ok" } else { "FAILED" }
        );
    }
    let failed = results.iter().filter(|r| !r.2).count();
    println!("{} graphs, {failed} failures", results.len());
}
