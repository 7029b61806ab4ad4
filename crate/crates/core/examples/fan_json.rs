//! Read a graph document, build its fan, and print the fan document.
//!
//! ```text
//! cargo run --example fan_json -- graph.json
//! ```
//!
//! Without an argument a built-in 2-gon is used.

use drfan::fan::build_fan;
use drfan::io::{emit_fan_json, parse_fan_json, parse_graph_json};

const TWO_GON: &str = r#"{
  "vertices": [{"id": "u", "genus": 0}, {"id": "v", "genus": 0}],
  "edges": [{"id": "e1", "from": "u", "to": "v"}, {"id": "e2", "from": "u", "to": "v"}],
  "legs": [{"id": "x1", "vertex": "u", "weight": 3}, {"id": "x2", "vertex": "v", "weight": -3}],
  "twist": 0
}"#;

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable file"),
        None => TWO_GON.to_string(),
    };
    let g = match parse_graph_json(&text) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    let out = emit_fan_json(&build_fan(&g).expect("small instance"));
    print!("{out}");

    let doc = parse_fan_json(&out).unwrap();
    assert_eq!(emit_fan_json(&doc.to_fan().unwrap()), out);
    eprintln!(
        "{} rays, {} maximal of {} cones; round trip ok",
        doc.counts.rays, doc.counts.maximal, doc.counts.total
    );
}
