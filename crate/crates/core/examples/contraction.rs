//! Contracting edges: the contracted graph, restricted weightings, and the
//! comparison of weighting cones before and after.

use std::collections::BTreeSet;

use drfan::fan::{check_contraction_compat, check_weighting_compat};
use drfan::graph::{banana, contract};
use drfan::io::emit_graph_json;
use drfan::weighting::{restrict_weighting, Weighting};

fn main() {
    let g = banana(3, 10);
    let set = BTreeSet::from([0, 1]);
    let c = contract(&g, &set).unwrap();
    print!("{}", emit_graph_json(&c.contracted));

    let w = Weighting::from_flows(&g, &[3, 3, 4]).unwrap();
    let res = restrict_weighting(&w, &c);
    println!(
        "flows {:?} restrict to {:?}",
        w.flows(&g),
        res.flows(&c.contracted)
    );
    println!("{:?}", check_weighting_compat(&g, &w, &set).unwrap());

    // e1 carries 12 and e2 carries -2, so {e1, e2} is a positive cycle and
    // the cones must agree.
    let w = Weighting::from_flows(&g, &[12, -2, 0]).unwrap();
    println!("{:?}", check_weighting_compat(&g, &w, &set).unwrap());

    let report = check_contraction_compat(&g, &set).unwrap();
    let equal = report
        .checks
        .iter()
        .filter(|c| c.equality.is_some())
        .count();
    println!(
        "{} catalog witnesses checked, {} with a positive cycle, all ok: {}",
        report.checks.len(),
        equal,
        report.is_ok()
    );
}
