//! Leg-weighted graphs in the half-edge formalism.
//!
//! A graph is a set of vertices carrying genera, a set of half-edges, a map
//! `end` from half-edges to vertices and an involution on half-edges. Edges
//! are the two-element orbits of the involution and legs are its fixed
//! points. Every leg carries an integer weight, and the graph carries one
//! integer twist `k`.
//!
//! Edges are numbered by the smaller of their two half-edges, and the edge is
//! canonically oriented from that smaller half-edge (its *source half*) to
//! the other one.

mod contract;
mod cycles;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use contract::{contract, ContractionResult};
pub use cycles::{cycle_basis, enumerate_cycles, spanning_tree, Cycle, DirectedEdge, SpanningTree};

pub type VertexId = usize;
pub type HalfEdgeId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph failed validation: {0}")]
    Invalid(ValidationReport),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("half-edge {0} is a leg, not a directed edge")]
    NotAnEdge(HalfEdgeId),
    #[error("not a cycle: {0}")]
    InvalidCycle(String),
}

/// One broken graph invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoVertices,
    NegativeGenus {
        vertex: VertexId,
        genus: i64,
    },
    /// `end` refers to a vertex that does not exist.
    DanglingHalfEdge {
        half_edge: HalfEdgeId,
        vertex: VertexId,
    },
    MalformedInvolution {
        half_edge: HalfEdgeId,
        image: HalfEdgeId,
    },
    MissingLegWeight {
        half_edge: HalfEdgeId,
    },
    /// A leg weight was given for a half-edge that is not a fixed point.
    WeightOnNonLeg {
        half_edge: HalfEdgeId,
    },
    Disconnected {
        components: usize,
    },
    LegSumMismatch {
        expected: i64,
        actual: i64,
    },
}

impl Violation {
    /// Short invariant name, stable across releases.
    pub fn name(&self) -> &'static str {
        match self {
            Violation::NoVertices => "NoVertices",
            Violation::NegativeGenus { .. } => "NegativeGenus",
            Violation::DanglingHalfEdge { .. } => "DanglingHalfEdge",
            Violation::MalformedInvolution { .. } => "MalformedInvolution",
            Violation::MissingLegWeight { .. } => "MissingLegWeight",
            Violation::WeightOnNonLeg { .. } => "WeightOnNonLeg",
            Violation::Disconnected { .. } => "Disconnected",
            Violation::LegSumMismatch { .. } => "LegSumMismatch",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoVertices => write!(f, "graph has no vertices"),
            Violation::NegativeGenus { vertex, genus } => {
                write!(f, "vertex {vertex} has negative genus {genus}")
            }
            Violation::DanglingHalfEdge { half_edge, vertex } => {
                write!(f, "half-edge {half_edge} ends at missing vertex {vertex}")
            }
            Violation::MalformedInvolution { half_edge, image } => {
                write!(
                    f,
                    "involution is not an involution at half-edge {half_edge} (image {image})"
                )
            }
            Violation::MissingLegWeight { half_edge } => {
                write!(f, "leg {half_edge} has no weight")
            }
            Violation::WeightOnNonLeg { half_edge } => {
                write!(
                    f,
                    "half-edge {half_edge} carries a leg weight but is not a leg"
                )
            }
            Violation::Disconnected { components } => {
                write!(f, "graph has {components} connected components")
            }
            Violation::LegSumMismatch { expected, actual } => {
                write!(f, "leg weights sum to {actual}, expected {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, name: &str) -> bool {
        self.violations.iter().any(|v| v.name() == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}: {}", v.name(), v)?;
        }
        Ok(())
    }
}

/// Unvalidated graph data, as it might come out of a file or a generator.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawGraph {
    pub genera: Vec<i64>,
    pub end: Vec<VertexId>,
    pub involution: Vec<HalfEdgeId>,
    pub leg_weights: BTreeMap<HalfEdgeId, i64>,
    pub twist: i64,
}

/// Check every graph invariant and report each one that fails.
pub fn validate_graph(raw: &RawGraph) -> ValidationReport {
    let mut violations = Vec::new();
    let nv = raw.genera.len();
    let nh = raw.end.len();

    if nv == 0 {
        violations.push(Violation::NoVertices);
    }
    for (vertex, &genus) in raw.genera.iter().enumerate() {
        if genus < 0 {
            violations.push(Violation::NegativeGenus { vertex, genus });
        }
    }
    for (half_edge, &vertex) in raw.end.iter().enumerate() {
        if vertex >= nv {
            violations.push(Violation::DanglingHalfEdge { half_edge, vertex });
        }
    }
    let mut involution_ok = raw.involution.len() == nh;
    for half_edge in 0..nh {
        let image = raw.involution.get(half_edge).copied().unwrap_or(usize::MAX);
        if image >= nh || raw.involution[image] != half_edge {
            violations.push(Violation::MalformedInvolution { half_edge, image });
            involution_ok = false;
        }
    }
    if !involution_ok {
        // Legs and connectivity are meaningless without a proper involution.
        return ValidationReport { violations };
    }

    for h in 0..nh {
        let is_leg = raw.involution[h] == h;
        match (is_leg, raw.leg_weights.contains_key(&h)) {
            (true, false) => violations.push(Violation::MissingLegWeight { half_edge: h }),
            (false, true) => violations.push(Violation::WeightOnNonLeg { half_edge: h }),
            _ => {}
        }
    }
    for &h in raw.leg_weights.keys() {
        if h >= nh {
            violations.push(Violation::WeightOnNonLeg { half_edge: h });
        }
    }

    if nv > 0 && raw.end.iter().all(|&v| v < nv) {
        let components = count_components(nv, &raw.end, &raw.involution);
        if components > 1 {
            violations.push(Violation::Disconnected { components });
        }

        let edges = (0..nh).filter(|&h| raw.involution[h] > h).count() as i64;
        let betti = edges - nv as i64 + components as i64;
        let genus = betti + raw.genera.iter().sum::<i64>();
        let expected = -raw.twist * (2 * genus - 2);
        let actual: i64 = raw.leg_weights.values().sum();
        if expected != actual {
            violations.push(Violation::LegSumMismatch { expected, actual });
        }
    }

    ValidationReport { violations }
}

fn count_components(nv: usize, end: &[VertexId], involution: &[HalfEdgeId]) -> usize {
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = nv;
    for (h, &partner) in involution.iter().enumerate() {
        if partner > h {
            let a = find(&mut parent, end[h]);
            let b = find(&mut parent, end[partner]);
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
    }
    components
}

/// Human-readable identifiers carried alongside a graph for I/O.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    pub legs: Vec<String>,
}

/// A validated, connected, leg-weighted graph with twist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    genera: Vec<u32>,
    end: Vec<VertexId>,
    involution: Vec<HalfEdgeId>,
    leg_weights: Vec<Option<i64>>,
    twist: i64,
    edges: Vec<[HalfEdgeId; 2]>,
    edge_of: Vec<Option<EdgeId>>,
    legs: Vec<HalfEdgeId>,
    incident: Vec<Vec<HalfEdgeId>>,
    labels: Labels,
}

impl Graph {
    pub fn from_raw(raw: RawGraph) -> Result<Self, GraphError> {
        Self::from_raw_labeled(raw, None)
    }

    /// Build from raw data with explicit labels. Label lists must be in
    /// vertex order, edge order and leg order respectively.
    pub fn from_raw_labeled(raw: RawGraph, labels: Option<Labels>) -> Result<Self, GraphError> {
        let report = validate_graph(&raw);
        if !report.is_ok() {
            return Err(GraphError::Invalid(report));
        }
        let nh = raw.end.len();
        let nv = raw.genera.len();
        let mut edges = Vec::new();
        let mut edge_of = vec![None; nh];
        let mut legs = Vec::new();
        let mut leg_weights = vec![None; nh];
        for h in 0..nh {
            let partner = raw.involution[h];
            if partner == h {
                legs.push(h);
                leg_weights[h] = Some(raw.leg_weights[&h]);
            } else if partner > h {
                edge_of[h] = Some(edges.len());
                edge_of[partner] = Some(edges.len());
                edges.push([h, partner]);
            }
        }
        let mut incident = vec![Vec::new(); nv];
        for (h, &v) in raw.end.iter().enumerate() {
            incident[v].push(h);
        }
        let labels = match labels {
            Some(l) => {
                assert_eq!(l.vertices.len(), nv, "one label per vertex");
                assert_eq!(l.edges.len(), edges.len(), "one label per edge");
                assert_eq!(l.legs.len(), legs.len(), "one label per leg");
                l
            }
            None => Labels {
                vertices: (0..nv).map(|i| format!("v{i}")).collect(),
                edges: (0..edges.len()).map(|i| format!("e{i}")).collect(),
                legs: (0..legs.len()).map(|i| format!("x{i}")).collect(),
            },
        };
        Ok(Graph {
            genera: raw.genera.iter().map(|&g| g as u32).collect(),
            end: raw.end,
            involution: raw.involution,
            leg_weights,
            twist: raw.twist,
            edges,
            edge_of,
            legs,
            incident,
            labels,
        })
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            genera: self.genera.iter().map(|&g| g as i64).collect(),
            end: self.end.clone(),
            involution: self.involution.clone(),
            leg_weights: self
                .legs
                .iter()
                .map(|&h| (h, self.leg_weights[h].expect("legs carry weights")))
                .collect(),
            twist: self.twist,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.genera.len()
    }

    pub fn num_half_edges(&self) -> usize {
        self.end.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `[source half, target half]` in the canonical orientation.
    pub fn edges(&self) -> &[[HalfEdgeId; 2]] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Result<[HalfEdgeId; 2], GraphError> {
        self.edges.get(e).copied().ok_or(GraphError::UnknownEdge(e))
    }

    /// Endpoints `(source, target)` of an edge in its canonical orientation.
    pub fn edge_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let [a, b] = self.edges[e];
        (self.end[a], self.end[b])
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (a, b) = self.edge_endpoints(e);
        a == b
    }

    pub fn legs(&self) -> &[HalfEdgeId] {
        &self.legs
    }

    pub fn is_leg(&self, h: HalfEdgeId) -> bool {
        self.involution[h] == h
    }

    pub fn leg_weight(&self, h: HalfEdgeId) -> Option<i64> {
        self.leg_weights[h]
    }

    pub fn end(&self, h: HalfEdgeId) -> VertexId {
        self.end[h]
    }

    pub fn partner(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.involution[h]
    }

    pub fn edge_of(&self, h: HalfEdgeId) -> Option<EdgeId> {
        self.edge_of[h]
    }

    pub fn vertex_genus(&self, v: VertexId) -> u32 {
        self.genera[v]
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    /// Half-edges (legs included) attached to `v`, in id order.
    pub fn half_edges_at(&self, v: VertexId) -> &[HalfEdgeId] {
        &self.incident[v]
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn edge_by_label(&self, label: &str) -> Option<EdgeId> {
        self.labels.edges.iter().position(|l| l == label)
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels.vertices.iter().position(|l| l == label)
    }

    /// Number of non-leg half-edges at `v`; a self-loop counts twice.
    pub fn valence(&self, v: VertexId) -> usize {
        self.incident[v]
            .iter()
            .filter(|&&h| !self.is_leg(h))
            .count()
    }

    /// First Betti number `|E| - |V| + 1`.
    pub fn first_betti(&self) -> usize {
        self.edges.len() + 1 - self.genera.len()
    }

    /// Betti number plus the sum of vertex genera.
    pub fn genus(&self) -> u64 {
        self.first_betti() as u64 + self.genera.iter().map(|&g| g as u64).sum::<u64>()
    }

    /// `kappa(v) = 2 g(v) - 2 + val(v)`.
    pub fn canonical_degree(&self, v: VertexId) -> Result<i64, GraphError> {
        if v >= self.genera.len() {
            return Err(GraphError::UnknownVertex(v));
        }
        Ok(2 * self.genera[v] as i64 - 2 + self.valence(v) as i64)
    }

    /// Sum of leg weights at `v`.
    pub fn leg_weight_at(&self, v: VertexId) -> i64 {
        self.incident[v]
            .iter()
            .filter_map(|&h| self.leg_weights[h])
            .sum()
    }

    /// Vertices whose curve component would be unstable: genus 0 with fewer
    /// than three special points, or genus 1 with none. Advisory only.
    pub fn unstable_vertices(&self) -> Vec<VertexId> {
        (0..self.num_vertices())
            .filter(|&v| {
                let special = self.incident[v].len();
                match self.genera[v] {
                    0 => special < 3,
                    1 => special < 1,
                    _ => false,
                }
            })
            .collect()
    }
}

/// Incremental construction of a graph by named vertices, edges and legs.
///
/// Half-edges are numbered edge by edge (`2i` at the `from` vertex, `2i + 1`
/// at the `to` vertex) followed by the legs, so the edge order and
/// orientation are exactly the insertion order and direction.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    twist: i64,
    vertices: Vec<(String, i64)>,
    edges: Vec<(String, VertexId, VertexId)>,
    legs: Vec<(String, VertexId, i64)>,
}

impl GraphBuilder {
    pub fn new(twist: i64) -> Self {
        GraphBuilder {
            twist,
            ..Default::default()
        }
    }

    pub fn vertex(&mut self, label: impl Into<String>, genus: i64) -> VertexId {
        self.vertices.push((label.into(), genus));
        self.vertices.len() - 1
    }

    pub fn edge(&mut self, label: impl Into<String>, from: VertexId, to: VertexId) -> EdgeId {
        self.edges.push((label.into(), from, to));
        self.edges.len() - 1
    }

    pub fn leg(&mut self, label: impl Into<String>, at: VertexId, weight: i64) -> &mut Self {
        self.legs.push((label.into(), at, weight));
        self
    }

    pub fn raw(&self) -> RawGraph {
        let mut raw = RawGraph {
            genera: self.vertices.iter().map(|(_, g)| *g).collect(),
            twist: self.twist,
            ..Default::default()
        };
        for (i, (_, from, to)) in self.edges.iter().enumerate() {
            raw.end.extend([*from, *to]);
            raw.involution.extend([2 * i + 1, 2 * i]);
        }
        for (_, at, weight) in &self.legs {
            let h = raw.end.len();
            raw.end.push(*at);
            raw.involution.push(h);
            raw.leg_weights.insert(h, *weight);
        }
        raw
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        let labels = Labels {
            vertices: self.vertices.iter().map(|(l, _)| l.clone()).collect(),
            edges: self.edges.iter().map(|(l, _, _)| l.clone()).collect(),
            legs: self.legs.iter().map(|(l, _, _)| l.clone()).collect(),
        };
        Graph::from_raw_labeled(self.raw(), Some(labels))
    }
}

/// The graph with two vertices joined by `edges` parallel edges, legs `+n`
/// and `-n`, twist 0. With two edges this is the 2-gon, with three the
/// banana.
pub fn banana(edges: usize, n: i64) -> Graph {
    let mut b = GraphBuilder::new(0);
    let u = b.vertex("u", 0);
    let v = b.vertex("v", 0);
    for i in 0..edges {
        b.edge(format!("e{}", i + 1), u, v);
    }
    b.leg("x1", u, n).leg("x2", v, -n);
    b.build().expect("banana graph is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_gon(a: i64, b: i64) -> RawGraph {
        let mut g = GraphBuilder::new(0);
        let u = g.vertex("u", 0);
        let v = g.vertex("v", 0);
        g.edge("e1", u, v);
        g.edge("e2", u, v);
        g.leg("x1", u, a).leg("x2", v, b);
        g.raw()
    }

    #[test]
    fn two_gon_validates() {
        assert!(validate_graph(&two_gon(3, -3)).is_ok());
        let report = validate_graph(&two_gon(3, -2));
        assert!(report.has("LegSumMismatch"), "{report}");
    }

    #[test]
    fn broken_involution_is_reported() {
        let raw = RawGraph {
            genera: vec![0, 0],
            end: vec![0, 1, 1],
            involution: vec![1, 2, 0],
            leg_weights: BTreeMap::new(),
            twist: 0,
        };
        assert!(validate_graph(&raw).has("MalformedInvolution"));
    }

    #[test]
    fn disconnected_and_negative_genus() {
        let raw = RawGraph {
            genera: vec![-1, 0],
            end: vec![],
            involution: vec![],
            leg_weights: BTreeMap::new(),
            twist: 0,
        };
        let report = validate_graph(&raw);
        assert!(report.has("NegativeGenus"));
        assert!(report.has("Disconnected"));
    }

    #[test]
    fn genus_and_canonical_degree() {
        let g = banana(2, 3);
        assert_eq!(g.genus(), 1);
        assert_eq!(g.canonical_degree(0).unwrap(), 0);
        let g = banana(3, 10);
        assert_eq!(g.genus(), 2);
        assert_eq!(g.canonical_degree(1).unwrap(), 1);
        assert_eq!(g.canonical_degree(2), Err(GraphError::UnknownVertex(2)));

        let mut b = GraphBuilder::new(0);
        let u = b.vertex("u", 1);
        let v = b.vertex("v", 1);
        b.edge("e", u, v);
        let g = b.build().unwrap();
        assert_eq!(g.genus(), 2);
        assert_eq!(g.canonical_degree(u).unwrap(), 1);
    }

    #[test]
    fn kappa_sums_to_twice_genus_minus_two() {
        for g in [banana(2, 1), banana(3, 4), banana(5, 0)] {
            let total: i64 = (0..g.num_vertices())
                .map(|v| g.canonical_degree(v).unwrap())
                .sum();
            assert_eq!(total, 2 * g.genus() as i64 - 2);
        }
    }

    #[test]
    fn stability_advisory() {
        let g = banana(2, 3);
        // Each vertex has two edge halves and one leg.
        assert!(g.unstable_vertices().is_empty());
        let mut b = GraphBuilder::new(0);
        let u = b.vertex("u", 0);
        let v = b.vertex("v", 0);
        b.edge("e", u, v);
        b.leg("x", u, 0).leg("y", v, 0);
        assert_eq!(b.build().unwrap().unstable_vertices(), vec![0, 1]);
    }
}
