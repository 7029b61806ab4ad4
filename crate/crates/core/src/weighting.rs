//! Integer weightings (flows) on a leg-weighted graph.
//!
//! A weighting assigns an integer to every half-edge so that the two halves
//! of an edge cancel, legs carry their prescribed weights, and at every
//! vertex `v` the values around `v` plus `k * kappa(v)` sum to zero.
//!
//! The *flow* of an edge is the value on its target half. Along a directed
//! edge `e` of a cycle the relevant coefficient is the value on the half
//! where `e` starts.

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::graph::{
    cycle_basis, spanning_tree, ContractionResult, Cycle, DirectedEdge, EdgeId, Graph, HalfEdgeId,
    VertexId,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightingError {
    #[error("no value for half-edge {0}")]
    MissingHalfEdge(HalfEdgeId),
    #[error("value given for nonexistent half-edge {0}")]
    UnknownHalfEdge(HalfEdgeId),
    #[error("values do not form a weighting: {0:?}")]
    NotAWeighting(WeightingCheck),
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("integer overflow while shifting a weighting")]
    Overflow,
}

/// Outcome of checking candidate half-edge values against the weighting
/// conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightingCheck {
    pub valid: bool,
    /// `sum of values at v + k * kappa(v)` for every vertex.
    pub defects: Vec<i64>,
    /// Edges whose two halves do not cancel.
    pub unbalanced_edges: Vec<EdgeId>,
    /// Legs whose value differs from the prescribed leg weight.
    pub leg_mismatches: Vec<HalfEdgeId>,
}

/// Check the weighting conditions for `values`, indexed by half-edge.
pub fn is_weighting(g: &Graph, values: &[i64]) -> Result<WeightingCheck, WeightingError> {
    let nh = g.num_half_edges();
    if values.len() < nh {
        return Err(WeightingError::MissingHalfEdge(values.len()));
    }
    if values.len() > nh {
        return Err(WeightingError::UnknownHalfEdge(nh));
    }
    let unbalanced_edges: Vec<EdgeId> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, [a, b])| values[*a] as i128 + values[*b] as i128 != 0)
        .map(|(e, _)| e)
        .collect();
    let leg_mismatches: Vec<HalfEdgeId> = g
        .legs()
        .iter()
        .copied()
        .filter(|&h| g.leg_weight(h) != Some(values[h]))
        .collect();
    let defects: Vec<i64> = (0..g.num_vertices())
        .map(|v| {
            let around: i64 = g.half_edges_at(v).iter().map(|&h| values[h]).sum();
            around + g.twist() * g.canonical_degree(v).expect("vertex in range")
        })
        .collect();
    let valid =
        unbalanced_edges.is_empty() && leg_mismatches.is_empty() && defects.iter().all(|&d| d == 0);
    Ok(WeightingCheck {
        valid,
        defects,
        unbalanced_edges,
        leg_mismatches,
    })
}

/// A validated weighting: one integer per half-edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weighting {
    values: Vec<i64>,
}

impl Weighting {
    pub fn new(g: &Graph, values: Vec<i64>) -> Result<Self, WeightingError> {
        let check = is_weighting(g, &values)?;
        if !check.valid {
            return Err(WeightingError::NotAWeighting(check));
        }
        Ok(Weighting { values })
    }

    /// Build from edge flows (target-half values) in edge order; legs take
    /// their prescribed weights.
    pub fn from_flows(g: &Graph, flows: &[i64]) -> Result<Self, WeightingError> {
        if flows.len() != g.num_edges() {
            return Err(WeightingError::CoefficientCount {
                expected: g.num_edges(),
                got: flows.len(),
            });
        }
        let mut values = vec![0; g.num_half_edges()];
        for (&[s, t], &f) in g.edges().iter().zip(flows) {
            values[t] = f;
            values[s] = f.checked_neg().ok_or(WeightingError::Overflow)?;
        }
        for &h in g.legs() {
            values[h] = g.leg_weight(h).expect("legs carry weights");
        }
        Weighting::new(g, values)
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, h: HalfEdgeId) -> i64 {
        self.values[h]
    }

    /// Value on the target half of each edge, in edge order.
    pub fn flows(&self, g: &Graph) -> Vec<i64> {
        g.edges().iter().map(|&[_, t]| self.values[t]).collect()
    }

    /// The coefficient of a directed edge: the value on its source half.
    pub fn along(&self, d: DirectedEdge) -> i64 {
        self.values[d.source_half]
    }

    /// Largest absolute value on a non-leg half-edge (0 without edges).
    pub fn max_edge_value(&self, g: &Graph) -> u64 {
        g.edges()
            .iter()
            .map(|&[s, _]| self.values[s].unsigned_abs())
            .max()
            .unwrap_or(0)
    }
}

/// The deterministic weighting with zero flow off the DFS spanning tree.
///
/// Tree flows are solved leaves-first: each non-root vertex takes from its
/// parent edge whatever its other half-edges and its demand leave over.
pub fn base_weighting(g: &Graph) -> Weighting {
    let tree = spanning_tree(g);
    let mut values = vec![0i64; g.num_half_edges()];
    for &h in g.legs() {
        values[h] = g.leg_weight(h).expect("legs carry weights");
    }
    let demand = |v: VertexId| -g.twist() * g.canonical_degree(v).expect("vertex in range");
    for &v in tree.order.iter().skip(1).rev() {
        let up = tree.parent_half[v].expect("non-root vertex");
        let others: i64 = g
            .half_edges_at(v)
            .iter()
            .filter(|&&h| h != up)
            .map(|&h| values[h])
            .sum();
        values[up] = demand(v) - others;
        values[g.partner(up)] = -values[up];
    }
    Weighting::new(g, values).expect("tree solution satisfies every vertex condition")
}

/// Shift `w` by an integer combination of the basis cycles: the flow of each
/// edge changes by `sum_b coeffs[b] * incidence_b(e)`.
pub fn shift_by_cycles(
    g: &Graph,
    w: &Weighting,
    coeffs: &[i64],
) -> Result<Weighting, WeightingError> {
    shift_by(g, w, &cycle_basis(g), coeffs)
}

/// [`shift_by_cycles`] against a precomputed basis.
pub fn shift_by(
    g: &Graph,
    w: &Weighting,
    basis: &[Cycle],
    coeffs: &[i64],
) -> Result<Weighting, WeightingError> {
    if coeffs.len() != basis.len() {
        return Err(WeightingError::CoefficientCount {
            expected: basis.len(),
            got: coeffs.len(),
        });
    }
    let mut values = w.values.clone();
    for (cycle, &c) in basis.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for (e, &sign) in cycle.incidence().iter().enumerate() {
            if sign == 0 {
                continue;
            }
            let [s, t] = g.edges()[e];
            let delta = c.checked_mul(sign).ok_or(WeightingError::Overflow)?;
            values[t] = values[t]
                .checked_add(delta)
                .ok_or(WeightingError::Overflow)?;
            values[s] = values[s]
                .checked_sub(delta)
                .ok_or(WeightingError::Overflow)?;
        }
    }
    Ok(Weighting { values })
}

/// Carry a weighting over to a contraction of its graph.
pub fn restrict_weighting(w: &Weighting, contraction: &ContractionResult) -> Weighting {
    let mut values = vec![0; contraction.contracted.num_half_edges()];
    for (old, new) in contraction.half_map.iter().enumerate() {
        if let Some(new) = new {
            values[*new] = w.values[old];
        }
    }
    debug_assert!(
        is_weighting(&contraction.contracted, &values)
            .unwrap()
            .valid
    );
    Weighting { values }
}

/// A directed cycle along which every source-half value is strictly
/// positive, if one exists.
///
/// Searches the digraph with one arc `end(h) -> end(partner(h))` per
/// half-edge `h` of positive value; smallest vertices and half-edges first.
pub fn find_positive_cycle(g: &Graph, w: &Weighting) -> Option<Cycle> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let nv = g.num_vertices();
    let mut mark = vec![Mark::New; nv];
    // Arc used to enter each active vertex.
    let mut entered_by: Vec<Option<HalfEdgeId>> = vec![None; nv];
    for root in 0..nv {
        if mark[root] != Mark::New {
            continue;
        }
        mark[root] = Mark::Active;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
            let hs = g.half_edges_at(v);
            if *pos == hs.len() {
                mark[v] = Mark::Done;
                stack.pop();
                continue;
            }
            let h = hs[*pos];
            *pos += 1;
            if g.is_leg(h) || w.values[h] <= 0 {
                continue;
            }
            let next = g.end(g.partner(h));
            match mark[next] {
                Mark::New => {
                    mark[next] = Mark::Active;
                    entered_by[next] = Some(h);
                    stack.push((next, 0));
                }
                Mark::Active => {
                    // Walk back along the active path from v to next.
                    let mut edges = vec![DirectedEdge { source_half: h }];
                    let mut at = v;
                    while at != next {
                        let arc = entered_by[at].expect("active path is connected");
                        edges.push(DirectedEdge { source_half: arc });
                        at = g.end(arc);
                    }
                    edges.reverse();
                    return Some(Cycle::new(g, edges).expect("DFS back edges close simple cycles"));
                }
                Mark::Done => {}
            }
        }
    }
    None
}

/// `phi(0) = 1`, `phi(n) = sum_{j < n} phi(j)`.
pub fn phi(n: usize) -> BigUint {
    let mut values: Vec<BigUint> = vec![BigUint::one()];
    let mut total = BigUint::one();
    for _ in 1..=n {
        values.push(total.clone());
        total += values.last().unwrap();
    }
    values.pop().unwrap()
}

/// `N = m * phi(h)`, with `m` the largest absolute value of `w` on an edge
/// half and `h` the first Betti number. Every shift of `w` by a coefficient
/// vector of sup-norm above `N` admits a positive cycle.
pub fn enumeration_bound(g: &Graph, w: &Weighting) -> BigUint {
    BigUint::from(w.max_edge_value(g)) * phi(g.first_betti())
}
