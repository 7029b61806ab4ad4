//! Seeded random small graphs for testing and experiments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphBuilder};

/// Shape limits for generated graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusParams {
    pub max_vertices: usize,
    /// Edges beyond a spanning tree; loops and parallel edges are allowed.
    pub max_extra_edges: usize,
    pub max_edges: usize,
    pub max_genus: i64,
    pub max_legs: usize,
    pub max_leg_weight: i64,
    pub max_twist: i64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            max_vertices: 4,
            max_extra_edges: 2,
            max_edges: 5,
            max_genus: 1,
            max_legs: 3,
            max_leg_weight: 4,
            max_twist: 1,
        }
    }
}

/// One random connected graph with at least one edge. Leg weights are
/// drawn so that they sum to `-k (2g - 2)`; draws that cannot are retried.
pub fn random_graph<R: Rng>(rng: &mut R, p: &CorpusParams) -> Graph {
    loop {
        if let Some(g) = attempt(rng, p) {
            return g;
        }
    }
}

fn attempt<R: Rng>(rng: &mut R, p: &CorpusParams) -> Option<Graph> {
    // Single vertices only carry loops, so they are drawn less often.
    let nv = if p.max_vertices == 1 || rng.gen_bool(0.1) {
        1
    } else {
        rng.gen_range(2..=p.max_vertices)
    };
    let twist = rng.gen_range(0..=p.max_twist);
    let mut b = GraphBuilder::new(twist);
    let mut genera = 0;
    for i in 0..nv {
        let genus = rng.gen_range(0..=p.max_genus);
        genera += genus;
        b.vertex(format!("v{i}"), genus);
    }
    let mut edges = Vec::new();
    for v in 1..nv {
        let u = rng.gen_range(0..v);
        edges.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
    }
    let extra = rng.gen_range(
        0..=p
            .max_extra_edges
            .min(p.max_edges.saturating_sub(edges.len())),
    );
    for _ in 0..extra {
        let u = rng.gen_range(0..nv);
        // Mostly non-loops; a loop a quarter of the time.
        let v = if nv > 1 && rng.gen_bool(0.75) {
            (u + rng.gen_range(1..nv)) % nv
        } else {
            u
        };
        edges.push((u, v));
    }
    if edges.is_empty() {
        return None;
    }
    for (i, &(u, v)) in edges.iter().enumerate() {
        b.edge(format!("e{}", i + 1), u, v);
    }

    let betti = edges.len() as i64 - nv as i64 + 1;
    let genus = betti + genera;
    let total = -twist * (2 * genus - 2);
    let nlegs = rng.gen_range(1..=p.max_legs);
    let mut weights: Vec<i64> = (0..nlegs - 1)
        .map(|_| rng.gen_range(-p.max_leg_weight..=p.max_leg_weight))
        .collect();
    let last = total - weights.iter().sum::<i64>();
    if last.abs() > p.max_leg_weight {
        return None;
    }
    weights.push(last);
    for (i, w) in weights.into_iter().enumerate() {
        b.leg(format!("x{}", i + 1), rng.gen_range(0..nv), w);
    }
    Some(b.build().expect("generated graphs satisfy every invariant"))
}

/// `count` graphs from a fixed seed.
pub fn corpus(seed: u64, count: usize, params: &CorpusParams) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_graph(&mut rng, params)).collect()
}
