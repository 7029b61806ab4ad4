//! The finite set of weighting cones of a graph.
//!
//! Two sources feed the catalog. Shifts of the base weighting by cycle
//! coefficient vectors of sup-norm at most `N` are enumerated directly; any
//! larger shift has a positive cycle, and its cone is the cone of the
//! contracted graph, padded with zeros on the cycle. So every cycle is
//! contracted in turn and the contracted graph cataloged recursively.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::cones::{compatibility_rows, Cone, ConeKey};
use crate::graph::{
    contract, cycle_basis, enumerate_cycles, ContractionResult, Cycle, EdgeId, Graph, GraphError,
};
use crate::linalg::{canonical_row_basis, IntVec};
use crate::weighting::{base_weighting, enumeration_bound, shift_by, Weighting, WeightingError};

/// Coefficient boxes with more points than this are refused.
pub const MAX_BOX_POINTS: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("enumeration bound {0} does not fit in a machine integer")]
    BoundTooLarge(BigUint),
    #[error("coefficient box of radius {radius} in dimension {dim} is too large to enumerate")]
    BoxTooLarge { radius: i64, dim: usize },
    #[error(transparent)]
    Weighting(#[from] WeightingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub cone: Cone,
    /// A weighting whose cone is exactly `cone`.
    pub witness: Weighting,
}

/// Distinct weighting cones keyed by their canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    ambient: usize,
    entries: BTreeMap<ConeKey, CatalogEntry>,
}

impl Catalog {
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, key: &ConeKey) -> bool {
        self.entries.contains_key(key)
    }

    pub fn get(&self, key: &ConeKey) -> Option<&CatalogEntry> {
        self.entries.get(key)
    }

    /// Entries in key order.
    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.values()
    }

    pub fn keys(&self) -> impl Iterator<Item = &ConeKey> {
        self.entries.keys()
    }

    fn insert_if_new(
        &mut self,
        cone: Cone,
        witness: impl FnOnce() -> Result<Weighting, CatalogError>,
    ) -> Result<(), CatalogError> {
        let key = cone.key();
        if !self.entries.contains_key(&key) {
            let witness = witness()?;
            self.entries.insert(key, CatalogEntry { cone, witness });
        }
        Ok(())
    }
}

/// Every cone `c_w` for `w` a weighting on `g`, each with a witness.
///
/// Witnesses are the first weighting found in a fixed order: box shifts by
/// increasing L1 norm, then lexicographically, then cones coming from
/// contracted cycles in cycle order. Parallel evaluation does not change
/// the result.
pub fn cone_catalog(g: &Graph) -> Result<Catalog, CatalogError> {
    cone_catalog_with(g, CatalogOptions::default())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogOptions {
    /// Solve each row space of compatibility equations only once.
    pub prune: bool,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        CatalogOptions { prune: true }
    }
}

pub fn cone_catalog_with(g: &Graph, options: CatalogOptions) -> Result<Catalog, CatalogError> {
    let mut memo = BTreeMap::new();
    let ids: Vec<EdgeId> = (0..g.num_edges()).collect();
    let catalog = catalog_rec(g, &ids, BTreeSet::new(), options, &mut memo)?;
    Ok(Arc::unwrap_or_clone(catalog))
}

type Memo = BTreeMap<BTreeSet<EdgeId>, Arc<Catalog>>;

/// `root_ids` names each edge of `g` by its edge in the original graph and
/// `key` is the set of original edges contracted to reach `g`. Contracting
/// the same set in any order gives the same graph, so that set is a sound
/// memo key.
fn catalog_rec(
    g: &Graph,
    root_ids: &[EdgeId],
    key: BTreeSet<EdgeId>,
    options: CatalogOptions,
    memo: &mut Memo,
) -> Result<Arc<Catalog>, CatalogError> {
    if let Some(done) = memo.get(&key) {
        return Ok(done.clone());
    }
    let mut catalog = box_catalog(g, options)?;
    for cycle in enumerate_cycles(g) {
        let set = cycle.edge_set();
        let contraction = contract(g, &set)?;
        let coords = contraction.surviving_edges();
        let child_ids: Vec<EdgeId> = coords.iter().map(|&e| root_ids[e]).collect();
        let mut child_key = key.clone();
        child_key.extend(set.iter().map(|&e| root_ids[e]));
        let child = catalog_rec(
            &contraction.contracted,
            &child_ids,
            child_key,
            options,
            memo,
        )?;
        for entry in child.entries() {
            let cone = entry.cone.embed(g.num_edges(), &coords);
            catalog.insert_if_new(cone, || {
                lift_witness(g, &cycle, &contraction, &entry.witness)
            })?;
        }
    }
    let catalog = Arc::new(catalog);
    memo.insert(key, catalog.clone());
    Ok(catalog)
}

/// All coefficient vectors in `[-radius, radius]^dim`, by increasing L1
/// norm and then lexicographically.
pub fn box_points(radius: i64, dim: usize) -> Vec<Vec<i64>> {
    let mut points: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..dim {
        points = points
            .into_iter()
            .flat_map(|p| {
                (-radius..=radius).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    points.sort_by_cached_key(|p| (p.iter().map(|c| c.unsigned_abs()).sum::<u64>(), p.clone()));
    points
}

fn checked_box(bound: &BigUint, dim: usize) -> Result<i64, CatalogError> {
    let radius = bound
        .to_i64()
        .ok_or_else(|| CatalogError::BoundTooLarge(bound.clone()))?;
    let side = (2 * radius as u64).checked_add(1);
    let points = side.and_then(|s| s.checked_pow(dim as u32));
    match points {
        Some(p) if p <= MAX_BOX_POINTS => Ok(radius),
        _ => Err(CatalogError::BoxTooLarge { radius, dim }),
    }
}

/// Cones of all shifts of the base weighting inside the proved box.
///
/// Weightings whose compatibility rows span the same space give the same
/// cone, so each row space is solved once.
fn box_catalog(g: &Graph, options: CatalogOptions) -> Result<Catalog, CatalogError> {
    let d = g.num_edges();
    let basis = cycle_basis(g);
    let base = base_weighting(g);
    let radius = checked_box(&enumeration_bound(g, &base), basis.len())?;

    let systems: Vec<(Vec<IntVec>, Weighting)> = box_points(radius, basis.len())
        .into_par_iter()
        .map(|coeffs| {
            let w = shift_by(g, &base, &basis, &coeffs)?;
            let rows = compatibility_rows(g, &basis, &w);
            Ok((
                if options.prune {
                    canonical_row_basis(&rows, d)
                } else {
                    rows
                },
                w,
            ))
        })
        .collect::<Result<_, CatalogError>>()?;

    let mut seen = BTreeSet::new();
    let unique: Vec<(Vec<IntVec>, Weighting)> = systems
        .into_iter()
        .filter(|(rows, _)| !options.prune || seen.insert(rows.clone()))
        .collect();

    let cones: Vec<(Cone, Weighting)> = unique
        .into_par_iter()
        .map(|(rows, w)| (Cone::orthant_section(d, rows), w))
        .collect();

    let mut catalog = Catalog {
        ambient: d,
        entries: BTreeMap::new(),
    };
    for (cone, w) in cones {
        catalog.insert_if_new(cone, || Ok(w))?;
    }
    Ok(catalog)
}

/// Extend a weighting of `g / cycle` to `g`, making `cycle` positive.
///
/// Around the cycle the vertex conditions fix the source-half values up to
/// a common constant; the constant is chosen so the smallest value is 1.
pub fn lift_witness(
    g: &Graph,
    cycle: &Cycle,
    contraction: &ContractionResult,
    w: &Weighting,
) -> Result<Weighting, CatalogError> {
    let mut values = vec![0i64; g.num_half_edges()];
    let mut on_cycle = vec![false; g.num_half_edges()];
    for d in cycle.edges() {
        on_cycle[d.source_half] = true;
        on_cycle[d.target_half(g)] = true;
    }
    for (old, new) in contraction.half_map.iter().enumerate() {
        if let Some(new) = new {
            values[old] = w.value(*new);
        }
    }
    let known = |v| -> i64 {
        let around: i64 = g
            .half_edges_at(v)
            .iter()
            .filter(|&&h| !on_cycle[h])
            .map(|&h| values[h])
            .sum();
        around + g.twist() * g.canonical_degree(v).expect("cycle vertices exist")
    };
    let edges = cycle.edges();
    let mut x = vec![0i64; edges.len()];
    for i in 1..edges.len() {
        x[i] = x[i - 1]
            .checked_sub(known(edges[i].source(g)))
            .ok_or(WeightingError::Overflow)?;
    }
    let shift = 1 - x.iter().copied().min().expect("cycles are non-empty");
    for (d, xi) in edges.iter().zip(&x) {
        let value = xi.checked_add(shift).ok_or(WeightingError::Overflow)?;
        values[d.source_half] = value;
        values[d.target_half(g)] = -value;
    }
    Ok(Weighting::new(g, values)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::{cone_of_weighting, primitive_ray};
    use crate::graph::{banana, GraphBuilder};

    #[test]
    fn box_order_is_graded() {
        let pts = box_points(1, 2);
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], vec![0, 0]);
        assert_eq!(pts[1], vec![-1, 0]);
        assert!(pts[5..].iter().all(|p| p.iter().all(|c| c.abs() == 1)));
    }

    #[test]
    fn two_gon_catalog() {
        for n in 1..=6 {
            let cat = cone_catalog(&banana(2, n)).unwrap();
            // n + 1 rays and the origin.
            assert_eq!(cat.len(), n as usize + 2);
            for a in 0..=n {
                let ray = primitive_ray(&[n - a, a]);
                assert!(
                    cat.keys().any(|k| k.rays == vec![ray.clone()]),
                    "n={n} a={a}"
                );
            }
        }
    }

    #[test]
    fn tree_catalog_is_orthant() {
        let mut b = GraphBuilder::new(0);
        let u = b.vertex("u", 0);
        let v = b.vertex("v", 0);
        let w = b.vertex("w", 0);
        b.edge("a", u, v);
        b.edge("b", v, w);
        b.leg("x", u, 2).leg("y", w, -2);
        let cat = cone_catalog(&b.build().unwrap()).unwrap();
        assert_eq!(cat.len(), 1);
        assert_eq!(cat.entries().next().unwrap().cone, Cone::orthant(2));
    }

    #[test]
    fn witnesses_are_exact() {
        let g = banana(3, 4);
        let cat = cone_catalog(&g).unwrap();
        for e in cat.entries() {
            assert_eq!(cone_of_weighting(&g, &e.witness), e.cone);
        }
    }

    #[test]
    fn lifted_witness_makes_cycle_positive() {
        let g = banana(2, 3);
        let cycle = enumerate_cycles(&g).remove(0);
        let c = contract(&g, &cycle.edge_set()).unwrap();
        let base = base_weighting(&c.contracted);
        let lifted = lift_witness(&g, &cycle, &c, &base).unwrap();
        assert!(cycle.edges().iter().all(|d| lifted.along(*d) > 0));
        assert_eq!(cone_of_weighting(&g, &lifted), Cone::zero(2));
    }
}
