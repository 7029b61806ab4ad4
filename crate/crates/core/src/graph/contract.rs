use std::collections::BTreeSet;

use super::{EdgeId, Graph, GraphError, HalfEdgeId, Labels, RawGraph, VertexId};

/// The result of contracting a set of edges, with maps from the old graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionResult {
    pub contracted: Graph,
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<Option<EdgeId>>,
    pub half_map: Vec<Option<HalfEdgeId>>,
    pub contracted_set: BTreeSet<EdgeId>,
}

impl ContractionResult {
    /// Old edge ids of the surviving edges, indexed by new edge id.
    pub fn surviving_edges(&self) -> Vec<EdgeId> {
        let mut out = vec![0; self.contracted.num_edges()];
        for (old, new) in self.edge_map.iter().enumerate() {
            if let Some(new) = new {
                out[*new] = old;
            }
        }
        out
    }
}

/// Contract the edges in `set`.
///
/// Each group of vertices joined by contracted edges becomes one vertex whose
/// genus is the sum of the group's genera plus the first Betti number of the
/// contracted subgraph on the group. Surviving half-edges keep their relative
/// order, so edge order and orientation carry over, and new vertices are
/// ordered by their smallest old vertex.
pub fn contract(g: &Graph, set: &BTreeSet<EdgeId>) -> Result<ContractionResult, GraphError> {
    if let Some(&bad) = set.iter().find(|&&e| e >= g.num_edges()) {
        return Err(GraphError::UnknownEdge(bad));
    }
    let nv = g.num_vertices();
    let mut parent: Vec<VertexId> = (0..nv).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &e in set {
        let (a, b) = g.edge_endpoints(e);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            // Keep the smaller root so roots are group minima.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            parent[hi] = lo;
        }
    }

    let mut vertex_map = vec![usize::MAX; nv];
    let mut new_count = 0;
    for v in 0..nv {
        let root = find(&mut parent, v);
        if root == v {
            vertex_map[v] = new_count;
            new_count += 1;
        }
    }
    for v in 0..nv {
        let root = find(&mut parent, v);
        vertex_map[v] = vertex_map[root];
    }

    let mut genera = vec![0i64; new_count];
    let mut members = vec![0i64; new_count];
    let mut inner_edges = vec![0i64; new_count];
    for v in 0..nv {
        genera[vertex_map[v]] += g.vertex_genus(v) as i64;
        members[vertex_map[v]] += 1;
    }
    for &e in set {
        inner_edges[vertex_map[g.edge_endpoints(e).0]] += 1;
    }
    for i in 0..new_count {
        genera[i] += inner_edges[i] - members[i] + 1;
    }

    let mut half_map = vec![None; g.num_half_edges()];
    let mut kept = Vec::new();
    for h in 0..g.num_half_edges() {
        let dropped = g.edge_of(h).is_some_and(|e| set.contains(&e));
        if !dropped {
            half_map[h] = Some(kept.len());
            kept.push(h);
        }
    }
    let mut raw = RawGraph {
        genera,
        twist: g.twist(),
        ..Default::default()
    };
    for &h in &kept {
        raw.end.push(vertex_map[g.end(h)]);
        raw.involution
            .push(half_map[g.partner(h)].expect("partners survive together"));
        if let Some(w) = g.leg_weight(h) {
            raw.leg_weights.insert(half_map[h].unwrap(), w);
        }
    }

    let mut edge_map = vec![None; g.num_edges()];
    let mut next_edge = 0;
    for (e, slot) in edge_map.iter_mut().enumerate() {
        if !set.contains(&e) {
            *slot = Some(next_edge);
            next_edge += 1;
        }
    }

    let old = g.labels();
    let mut vertex_labels = vec![String::new(); new_count];
    for v in (0..nv).rev() {
        vertex_labels[vertex_map[v]] = old.vertices[v].clone();
    }
    let labels = Labels {
        vertices: vertex_labels,
        edges: (0..g.num_edges())
            .filter(|e| !set.contains(e))
            .map(|e| old.edges[e].clone())
            .collect(),
        legs: old.legs.clone(),
    };
    let contracted = Graph::from_raw_labeled(raw, Some(labels))?;
    Ok(ContractionResult {
        contracted,
        vertex_map,
        edge_map,
        half_map,
        contracted_set: set.clone(),
    })
}
