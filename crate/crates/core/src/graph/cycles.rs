use std::collections::{BTreeMap, BTreeSet};

use super::{EdgeId, Graph, GraphError, HalfEdgeId, VertexId};

/// A half-edge that is not a leg, read as an edge directed away from its end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedEdge {
    pub source_half: HalfEdgeId,
}

impl DirectedEdge {
    pub fn new(g: &Graph, source_half: HalfEdgeId) -> Result<Self, GraphError> {
        if source_half >= g.num_half_edges() || g.is_leg(source_half) {
            return Err(GraphError::NotAnEdge(source_half));
        }
        Ok(DirectedEdge { source_half })
    }

    pub fn target_half(&self, g: &Graph) -> HalfEdgeId {
        g.partner(self.source_half)
    }

    pub fn source(&self, g: &Graph) -> VertexId {
        g.end(self.source_half)
    }

    pub fn target(&self, g: &Graph) -> VertexId {
        g.end(g.partner(self.source_half))
    }

    pub fn edge(&self, g: &Graph) -> EdgeId {
        g.edge_of(self.source_half)
            .expect("directed edges are not legs")
    }

    /// Whether this agrees with the edge's canonical orientation.
    pub fn is_forward(&self, g: &Graph) -> bool {
        g.edges()[self.edge(g)][0] == self.source_half
    }

    pub fn reversed(&self, g: &Graph) -> DirectedEdge {
        DirectedEdge {
            source_half: g.partner(self.source_half),
        }
    }
}

/// A directed simple cycle, together with its signed edge incidence vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    edges: Vec<DirectedEdge>,
    incidence: Vec<i64>,
}

impl Cycle {
    /// Checks that consecutive edges chain up, close, and repeat neither a
    /// vertex nor an undirected edge.
    pub fn new(g: &Graph, edges: Vec<DirectedEdge>) -> Result<Self, GraphError> {
        if edges.is_empty() {
            return Err(GraphError::InvalidCycle("empty".into()));
        }
        let mut incidence = vec![0i64; g.num_edges()];
        let mut seen_vertices = BTreeSet::new();
        for (i, d) in edges.iter().enumerate() {
            if d.source_half >= g.num_half_edges() || g.is_leg(d.source_half) {
                return Err(GraphError::NotAnEdge(d.source_half));
            }
            let next = &edges[(i + 1) % edges.len()];
            if d.target(g) != next.source(g) {
                return Err(GraphError::InvalidCycle(format!(
                    "edge {} does not end where edge {} starts",
                    i,
                    (i + 1) % edges.len()
                )));
            }
            if !seen_vertices.insert(d.source(g)) {
                return Err(GraphError::InvalidCycle("repeated vertex".into()));
            }
            let e = d.edge(g);
            if incidence[e] != 0 {
                return Err(GraphError::InvalidCycle("repeated edge".into()));
            }
            incidence[e] = if d.is_forward(g) { 1 } else { -1 };
        }
        Ok(Cycle { edges, incidence })
    }

    pub fn edges(&self) -> &[DirectedEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `+1` where the cycle runs along the canonical orientation, `-1`
    /// against it, `0` off the cycle.
    pub fn incidence(&self) -> &[i64] {
        &self.incidence
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.incidence
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != 0)
            .map(|(e, _)| e)
            .collect()
    }

    pub fn reversed(&self, g: &Graph) -> Cycle {
        let edges = self.edges.iter().rev().map(|d| d.reversed(g)).collect();
        Cycle {
            edges,
            incidence: self.incidence.iter().map(|s| -s).collect(),
        }
    }

    /// The lexicographically smallest rotation (in either direction) of the
    /// sequence of source half-edges.
    pub fn canonical(&self, g: &Graph) -> Cycle {
        let rev = self.reversed(g);
        let mut best: Option<Cycle> = None;
        for candidate in [self, &rev] {
            let n = candidate.edges.len();
            for shift in 0..n {
                let mut edges = candidate.edges.clone();
                edges.rotate_left(shift);
                if best.as_ref().is_none_or(|b| edges < b.edges) {
                    best = Some(Cycle {
                        edges,
                        incidence: candidate.incidence.clone(),
                    });
                }
            }
        }
        best.expect("cycles are non-empty")
    }
}

/// Depth-first spanning tree rooted at vertex 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    /// For every non-root vertex, its half of the edge leading to its parent.
    pub parent_half: Vec<Option<HalfEdgeId>>,
    /// Vertices in DFS preorder; the root comes first.
    pub order: Vec<VertexId>,
    pub is_tree_edge: Vec<bool>,
    pub depth: Vec<usize>,
}

pub fn spanning_tree(g: &Graph) -> SpanningTree {
    let nv = g.num_vertices();
    let mut parent_half = vec![None; nv];
    let mut visited = vec![false; nv];
    let mut depth = vec![0; nv];
    let mut is_tree_edge = vec![false; g.num_edges()];
    let mut order = vec![0];
    visited[0] = true;
    // (vertex, position in its incidence list)
    let mut stack = vec![(0usize, 0usize)];
    while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
        let hs = g.half_edges_at(v);
        if *pos == hs.len() {
            stack.pop();
            continue;
        }
        let h = hs[*pos];
        *pos += 1;
        if g.is_leg(h) {
            continue;
        }
        let w = g.end(g.partner(h));
        if !visited[w] {
            visited[w] = true;
            parent_half[w] = Some(g.partner(h));
            depth[w] = depth[v] + 1;
            is_tree_edge[g.edge_of(h).expect("not a leg")] = true;
            order.push(w);
            stack.push((w, 0));
        }
    }
    SpanningTree {
        parent_half,
        order,
        is_tree_edge,
        depth,
    }
}

impl SpanningTree {
    /// Directed edges of the tree path from `from` to `to`.
    pub fn path(&self, g: &Graph, from: VertexId, to: VertexId) -> Vec<DirectedEdge> {
        let mut up = Vec::new();
        let mut down = Vec::new();
        let (mut a, mut b) = (from, to);
        while a != b {
            if self.depth[a] >= self.depth[b] {
                let h = self.parent_half[a].expect("non-root vertex");
                up.push(DirectedEdge { source_half: h });
                a = g.end(g.partner(h));
            } else {
                let h = self.parent_half[b].expect("non-root vertex");
                down.push(DirectedEdge {
                    source_half: g.partner(h),
                });
                b = g.end(g.partner(h));
            }
        }
        up.extend(down.into_iter().rev());
        up
    }
}

/// Fundamental cycles of the DFS spanning tree, one per non-tree edge in edge
/// order, each in its canonical orientation (see [`Cycle::canonical`]).
pub fn cycle_basis(g: &Graph) -> Vec<Cycle> {
    let tree = spanning_tree(g);
    (0..g.num_edges())
        .filter(|&e| !tree.is_tree_edge[e])
        .map(|e| {
            let first = DirectedEdge {
                source_half: g.edges()[e][0],
            };
            let mut edges = vec![first];
            edges.extend(tree.path(g, first.target(g), first.source(g)));
            Cycle::new(g, edges)
                .expect("fundamental cycles are simple")
                .canonical(g)
        })
        .collect()
}

/// Every undirected simple cycle exactly once, each in its canonical
/// orientation, sorted by that orientation.
pub fn enumerate_cycles(g: &Graph) -> Vec<Cycle> {
    let mut found: BTreeMap<Vec<DirectedEdge>, Cycle> = BTreeMap::new();
    let mut by_edges: BTreeSet<BTreeSet<EdgeId>> = BTreeSet::new();
    let nv = g.num_vertices();
    for start in 0..nv {
        let mut path: Vec<DirectedEdge> = Vec::new();
        let mut on_path = vec![false; nv];
        on_path[start] = true;
        extend_paths(g, start, start, &mut path, &mut on_path, &mut |path| {
            let cycle = Cycle::new(g, path.to_vec()).expect("search only builds simple cycles");
            if by_edges.insert(cycle.edge_set()) {
                let c = cycle.canonical(g);
                found.insert(c.edges.clone(), c);
            }
        });
    }
    found.into_values().collect()
}

fn extend_paths(
    g: &Graph,
    start: VertexId,
    at: VertexId,
    path: &mut Vec<DirectedEdge>,
    on_path: &mut [bool],
    emit: &mut impl FnMut(&[DirectedEdge]),
) {
    for &h in g.half_edges_at(at) {
        if g.is_leg(h) {
            continue;
        }
        let e = g.edge_of(h).expect("not a leg");
        if path.iter().any(|d| d.edge(g) == e) {
            continue;
        }
        let d = DirectedEdge { source_half: h };
        let next = d.target(g);
        if next == start {
            path.push(d);
            emit(path);
            path.pop();
        } else if next > start && !on_path[next] {
            on_path[next] = true;
            path.push(d);
            extend_paths(g, start, next, path, on_path, emit);
            path.pop();
            on_path[next] = false;
        }
    }
}
