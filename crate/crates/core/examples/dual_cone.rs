//! The cone of a weighting, its dual, and generators of the dual monoid.

use drfan::cones::{cone_of_weighting, dual_cone_generators};
use drfan::graph::banana;
use drfan::oracle::oracle_monoid_check;
use drfan::weighting::Weighting;

fn show(label: &str, vs: &[Vec<num_bigint::BigInt>]) {
    let items: Vec<String> = vs
        .iter()
        .map(|v| {
            let xs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("({})", xs.join(", "))
        })
        .collect();
    println!("{label}: {}", items.join(" "));
}

fn main() {
    let g = banana(3, 6);
    for flows in [[2, 2, 2], [1, 2, 3], [0, 6, 0], [7, -2, 1]] {
        let w = Weighting::from_flows(&g, &flows).expect("flows sum to 6");
        let c = cone_of_weighting(&g, &w);
        println!("flows {flows:?}: cone of dimension {}", c.dim());
        show("  rays", c.rays());

        let gens = dual_cone_generators(&g, &w);
        let dual = c.polar_dual();
        println!("  generators span the dual: {}", gens.cone(3) == dual);
        show("  dual lineality", dual.lineality());
        let monoid = dual.monoid_generators();
        show("  monoid generators", &monoid);
        println!(
            "  covers lattice points up to 4: {}",
            oracle_monoid_check(&dual, &monoid, 4)
        );
    }
}
