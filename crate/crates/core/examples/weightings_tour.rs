//! Weightings on a small graph: the base weighting, shifts along cycles,
//! vertex defects, positive cycles and the enumeration bound.

use drfan::graph::{cycle_basis, GraphBuilder};
use drfan::weighting::{
    base_weighting, enumeration_bound, find_positive_cycle, is_weighting, shift_by_cycles,
};

fn main() {
    // A triangle with a doubled side and one genus-1 vertex, twist 1.
    let mut b = GraphBuilder::new(1);
    let u = b.vertex("u", 0);
    let v = b.vertex("v", 1);
    let w = b.vertex("w", 0);
    b.edge("a", u, v);
    b.edge("b", v, w);
    b.edge("c", w, u);
    b.edge("d", w, u);
    b.leg("x1", u, -3).leg("x2", w, -1);
    let g = b.build().expect("valid graph");
    let labels = &g.labels().edges;

    println!("genus {}, h1 = {}", g.genus(), g.first_betti());
    for v in 0..g.num_vertices() {
        println!(
            "  kappa({}) = {}",
            g.labels().vertices[v],
            g.canonical_degree(v).unwrap()
        );
    }
    for (i, c) in cycle_basis(&g).iter().enumerate() {
        println!("  basis cycle {i}: incidence {:?}", c.incidence());
    }

    let base = base_weighting(&g);
    println!("base flows {:?} over {labels:?}", base.flows(&g));
    println!("N = {}", enumeration_bound(&g, &base));

    for coeffs in [[0, 0], [1, 0], [0, -2], [4, 4]] {
        let w = shift_by_cycles(&g, &base, &coeffs).unwrap();
        let check = is_weighting(&g, w.values()).unwrap();
        let cycle = find_positive_cycle(&g, &w)
            .map(|c| {
                c.edges()
                    .iter()
                    .map(|d| labels[d.edge(&g)].as_str())
                    .collect::<Vec<_>>()
                    .join("")
            })
            .unwrap_or_else(|| "-".into());
        println!(
            "shift {coeffs:?}: flows {:?}, defects {:?}, positive cycle {cycle}",
            w.flows(&g),
            check.defects
        );
    }

    // Perturbing one edge breaks the balance at both of its ends.
    let mut values = base.values().to_vec();
    let [s, t] = g.edges()[0];
    values[s] -= 1;
    values[t] += 1;
    println!(
        "edge a bumped: defects {:?}",
        is_weighting(&g, &values).unwrap().defects
    );
}
