//! The fan of a graph: all weighting cones together with their faces.

mod catalog;
mod slice;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::cones::{cone_of_weighting, intersect_cones, is_face_of, Cone, ConeKey};
use crate::graph::{contract, enumerate_cycles, EdgeId, Graph, GraphError};
use crate::linalg::IntVec;
use crate::weighting::{restrict_weighting, Weighting};

pub use catalog::{
    box_points, cone_catalog, cone_catalog_with, lift_witness, Catalog, CatalogEntry, CatalogError,
    CatalogOptions, MAX_BOX_POINTS,
};
pub use slice::{slice_fan, Slice, SliceCell, SliceError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanCone {
    /// Indices into [`Fan::rays`], sorted.
    pub rays: Vec<usize>,
    pub dim: usize,
    /// Not a proper face of another cone of the fan.
    pub maximal: bool,
    /// Flows of a weighting whose cone contains this one; for maximal cones
    /// its cone is exactly this one.
    pub witness: Option<Vec<i64>>,
    pub cone: Cone,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    edge_labels: Vec<String>,
    rays: Vec<IntVec>,
    cones: Vec<FanCone>,
}

impl Fan {
    /// Assemble from cones, dropping duplicates (the first witness wins).
    /// Rays are sorted lexicographically and cones by dimension, then ray
    /// list.
    pub fn from_cones(edge_labels: Vec<String>, cones: Vec<(Cone, Option<Vec<i64>>)>) -> Fan {
        let mut unique: BTreeMap<ConeKey, (Cone, Option<Vec<i64>>)> = BTreeMap::new();
        for (cone, witness) in cones {
            assert_eq!(
                cone.ambient_dim(),
                edge_labels.len(),
                "one label per coordinate"
            );
            unique.entry(cone.key()).or_insert((cone, witness));
        }
        let rays: Vec<IntVec> = unique
            .values()
            .flat_map(|(c, _)| c.rays().iter().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: BTreeMap<&IntVec, usize> =
            rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut cones: Vec<FanCone> = unique
            .into_values()
            .map(|(cone, witness)| {
                let mut ids: Vec<usize> = cone.rays().iter().map(|r| index[r]).collect();
                ids.sort_unstable();
                FanCone {
                    rays: ids,
                    dim: cone.dim(),
                    maximal: false,
                    witness,
                    cone,
                }
            })
            .collect();
        cones.sort_by(|a, b| (a.dim, &a.rays).cmp(&(b.dim, &b.rays)));
        // Keys are distinct, so containment here is proper containment.
        let maximal: Vec<bool> = (0..cones.len())
            .into_par_iter()
            .map(|i| {
                !(0..cones.len()).any(|j| j != i && cones[i].cone.is_subset_of(&cones[j].cone))
            })
            .collect();
        for (c, m) in cones.iter_mut().zip(maximal) {
            c.maximal = m;
        }
        Fan {
            edge_labels,
            rays,
            cones,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.edge_labels.len()
    }

    pub fn edge_labels(&self) -> &[String] {
        &self.edge_labels
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn cones(&self) -> &[FanCone] {
        &self.cones
    }

    pub fn maximal_cones(&self) -> impl Iterator<Item = &FanCone> {
        self.cones.iter().filter(|c| c.maximal)
    }

    /// Cones of dimension one.
    pub fn ray_cones(&self) -> impl Iterator<Item = &FanCone> {
        self.cones.iter().filter(|c| c.dim == 1)
    }

    pub fn contains(&self, cone: &Cone) -> bool {
        let key = cone.key();
        self.cones.iter().any(|c| c.cone.key() == key)
    }
}

/// The catalog of weighting cones closed under taking faces.
///
/// Cataloged cones keep their own witness; every other face inherits the
/// witness of the first cataloged cone it is a face of.
pub fn build_fan(g: &Graph) -> Result<Fan, CatalogError> {
    let catalog = cone_catalog(g)?;
    Ok(fan_of_catalog(g, &catalog))
}

pub fn fan_of_catalog(g: &Graph, catalog: &Catalog) -> Fan {
    let mut cones: Vec<(Cone, Option<Vec<i64>>)> = catalog
        .entries()
        .map(|e| (e.cone.clone(), Some(e.witness.flows(g))))
        .collect();
    let faces: Vec<Vec<(Cone, Option<Vec<i64>>)>> = catalog
        .entries()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|e| {
            let flows = e.witness.flows(g);
            e.cone
                .faces()
                .into_iter()
                .map(|f| (f, Some(flows.clone())))
                .collect()
        })
        .collect();
    cones.extend(faces.into_iter().flatten());
    Fan::from_cones(g.labels().edges.clone(), cones)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FanViolation {
    /// The intersection of cones `a` and `b` is not a face of both.
    IntersectionNotFace {
        a: usize,
        b: usize,
    },
    /// A face of cone `cone`, given by its rays, is missing from the fan.
    MissingFace {
        cone: usize,
        face: Vec<IntVec>,
    },
    NotInOrthant {
        cone: usize,
    },
}

impl fmt::Display for FanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanViolation::IntersectionNotFace { a, b } => {
                write!(f, "intersection of cones {a} and {b} is not a face of both")
            }
            FanViolation::MissingFace { cone, face } => {
                write!(
                    f,
                    "cone {cone} has a face with rays {face:?} that is not in the fan"
                )
            }
            FanViolation::NotInOrthant { cone } => write!(f, "cone {cone} leaves the orthant"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FanReport {
    /// Intersection failures first, then missing faces, then cones outside
    /// the orthant.
    pub violations: Vec<FanViolation>,
}

impl FanReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<&FanViolation> {
        self.violations.first()
    }
}

/// Check the fan axioms: pairwise intersections are faces of both cones,
/// every face of a cone is in the fan, and all cones lie in the orthant.
pub fn verify_fan(f: &Fan) -> FanReport {
    let n = f.cones.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut violations: Vec<FanViolation> = pairs
        .par_iter()
        .filter(|&&(a, b)| !intersection_is_face(&f.cones[a], &f.cones[b]))
        .map(|&(a, b)| FanViolation::IntersectionNotFace { a, b })
        .collect();

    let present: BTreeSet<ConeKey> = f.cones.iter().map(|c| c.cone.key()).collect();
    for (i, c) in f.cones.iter().enumerate() {
        for face in c.cone.faces() {
            if !present.contains(&face.key()) {
                violations.push(FanViolation::MissingFace {
                    cone: i,
                    face: face.rays().to_vec(),
                });
            }
        }
    }
    for (i, c) in f.cones.iter().enumerate() {
        if !c.cone.in_orthant() {
            violations.push(FanViolation::NotInOrthant { cone: i });
        }
    }
    FanReport { violations }
}

fn intersection_is_face(a: &FanCone, b: &FanCone) -> bool {
    let pointed = a.cone.is_pointed() && b.cone.is_pointed();
    let subset = |x: &FanCone, y: &FanCone| x.rays.iter().all(|r| y.rays.binary_search(r).is_ok());
    if pointed && subset(a, b) {
        // Pointed cones are spanned by their rays, so a lies inside b.
        return is_face_of(&a.cone, &b.cone).expect("same ambient");
    }
    if pointed && subset(b, a) {
        return is_face_of(&b.cone, &a.cone).expect("same ambient");
    }
    let meet = intersect_cones(&a.cone, &b.cone).expect("same ambient");
    is_face_of(&meet, &a.cone).expect("same ambient")
        && is_face_of(&meet, &b.cone).expect("same ambient")
}

/// Outcome of comparing `c_w` with the padded cone of the restricted
/// weighting on a contraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatCheck {
    pub flows: Vec<i64>,
    /// `c_res(w) x {0}` lies in `c_w`.
    pub inclusion: bool,
    /// Whether the contracted set is a cycle positive for `w`, in which case
    /// the two cones must agree; `None` otherwise.
    pub equality: Option<bool>,
}

impl CompatCheck {
    pub fn is_ok(&self) -> bool {
        self.inclusion && self.equality != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatReport {
    pub contracted: BTreeSet<EdgeId>,
    pub checks: Vec<CompatCheck>,
}

impl CompatReport {
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(CompatCheck::is_ok)
    }
}

/// Compare weighting cones before and after contracting `set`, for the
/// witness of every cataloged cone of `g`.
pub fn check_contraction_compat(
    g: &Graph,
    set: &BTreeSet<EdgeId>,
) -> Result<CompatReport, CatalogError> {
    let catalog = cone_catalog(g)?;
    let checks = catalog
        .entries()
        .map(|e| check_weighting_compat(g, &e.witness, set))
        .collect::<Result<_, _>>()?;
    Ok(CompatReport {
        contracted: set.clone(),
        checks,
    })
}

/// [`check_contraction_compat`] for a single weighting.
pub fn check_weighting_compat(
    g: &Graph,
    w: &Weighting,
    set: &BTreeSet<EdgeId>,
) -> Result<CompatCheck, GraphError> {
    let contraction = contract(g, set)?;
    let restricted = restrict_weighting(w, &contraction);
    let padded = cone_of_weighting(&contraction.contracted, &restricted)
        .embed(g.num_edges(), &contraction.surviving_edges());
    let full = cone_of_weighting(g, w);
    let positive = enumerate_cycles(g)
        .into_iter()
        .filter(|c| &c.edge_set() == set)
        .any(|c| {
            let sign = |s: i64| c.edges().iter().all(|d| s * w.along(*d) > 0);
            sign(1) || sign(-1)
        });
    Ok(CompatCheck {
        flows: w.flows(g),
        inclusion: padded.is_subset_of(&full),
        equality: positive.then(|| padded == full),
    })
}
