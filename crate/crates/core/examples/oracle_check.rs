//! Compare the cone catalog with the brute-force reference on a few graphs,
//! and the extreme rays of every cataloged cone with the reference rays.

use std::collections::BTreeSet;
use std::time::Instant;

use drfan::fan::cone_catalog;
use drfan::graph::{banana, GraphBuilder};
use drfan::oracle::{oracle_cone_catalog, oracle_extreme_rays};
use drfan::weighting::{base_weighting, enumeration_bound};
use num_traits::ToPrimitive;

fn main() {
    let mut theta = GraphBuilder::new(1);
    let u = theta.vertex("u", 0);
    let v = theta.vertex("v", 0);
    theta.edge("e1", u, v);
    theta.edge("e2", u, v);
    theta.edge("e3", v, v);
    theta.leg("x1", u, -1).leg("x2", v, -1);

    let graphs = [
        ("2-gon n=5", banana(2, 5)),
        ("banana n=6", banana(3, 6)),
        ("2-gon with a loop", theta.build().unwrap()),
    ];
    for (name, g) in graphs {
        let n = enumeration_bound(&g, &base_weighting(&g)).to_i64().unwrap();
        let start = Instant::now();
        let catalog = cone_catalog(&g).unwrap();
        let fast = start.elapsed();
        let start = Instant::now();
        let oracle = oracle_cone_catalog(&g, 2 * n).unwrap();
        let slow = start.elapsed();

        let ours: BTreeSet<_> = catalog.keys().map(|k| k.rays.clone()).collect();
        let rays_agree = catalog
            .entries()
            .all(|e| oracle_extreme_rays(&e.cone).unwrap() == e.cone.rays());
        println!(
            "{name}: N={n}, {} cones ({fast:?}) vs reference {} ({slow:?}); \
             catalogs agree: {}, rays agree: {rays_agree}",
            ours.len(),
            oracle.len(),
            ours == oracle
        );
    }
}
