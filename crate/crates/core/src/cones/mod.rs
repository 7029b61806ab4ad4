//! Exact rational polyhedral cones.
//!
//! A [`Cone`] keeps both descriptions: the constraints it was built from
//! (`a . x >= 0` and `b . x = 0`) and the generators computed from them by
//! double description (primitive extreme rays of the pointed part plus a
//! canonical basis of the lineality space). Rays are taken inside the
//! orthogonal complement of the lineality space, which makes them unique.

mod dd;
mod hilbert;

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{cycle_basis, Cycle, Graph};
use crate::linalg::{dot, identity, is_zero, primitive, rank, IntVec};
use crate::weighting::Weighting;

pub(crate) use dd::double_description;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("cones live in ambient spaces of dimension {0} and {1}")]
    AmbientMismatch(usize, usize),
}

/// Canonical identifier: equal keys exactly when the cones are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConeKey {
    pub lineality: Vec<IntVec>,
    pub rays: Vec<IntVec>,
}

#[derive(Debug, Clone)]
pub struct Cone {
    ambient: usize,
    inequalities: Vec<IntVec>,
    equalities: Vec<IntVec>,
    rays: Vec<IntVec>,
    lineality: Vec<IntVec>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.rays == other.rays
            && self.lineality == other.lineality
    }
}

impl Eq for Cone {}

impl Cone {
    /// `{x : a . x >= 0 for a in inequalities, b . x = 0 for b in equalities}`
    pub fn new(ambient: usize, inequalities: Vec<IntVec>, equalities: Vec<IntVec>) -> Self {
        let out = double_description(ambient, &inequalities, &equalities);
        let rays = if out.lineality.is_empty() {
            out.rays
        } else {
            let mut eq = equalities.clone();
            eq.extend(out.lineality.iter().cloned());
            double_description(ambient, &inequalities, &eq).rays
        };
        Cone {
            ambient,
            inequalities,
            equalities,
            rays,
            lineality: out.lineality,
        }
    }

    /// The non-negative orthant cut by the given equalities.
    pub fn orthant_section(ambient: usize, equalities: Vec<IntVec>) -> Self {
        Cone::new(ambient, identity(ambient), equalities)
    }

    pub fn orthant(ambient: usize) -> Self {
        Cone::orthant_section(ambient, Vec::new())
    }

    pub fn zero(ambient: usize) -> Self {
        Cone::new(ambient, Vec::new(), identity(ambient))
    }

    /// The cone spanned by `generators`.
    ///
    /// Its facet normals are the generators of `{y : g . y >= 0}`, computed
    /// by a second double description.
    pub fn from_generators(ambient: usize, generators: &[IntVec]) -> Self {
        let gens: Vec<IntVec> = generators.iter().filter(|g| !is_zero(g)).cloned().collect();
        let polar = double_description(ambient, &gens, &[]);
        Cone::new(ambient, polar.rays, polar.lineality)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.lineality.len() + rank(&self.rays, self.ambient)
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVec] {
        &self.lineality
    }

    pub fn inequalities(&self) -> &[IntVec] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[IntVec] {
        &self.equalities
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.inequalities.iter().all(|a| !dot(a, x).is_negative())
            && self.equalities.iter().all(|b| dot(b, x).is_zero())
    }

    /// Contained in the non-negative orthant.
    pub fn in_orthant(&self) -> bool {
        self.lineality.is_empty() && self.rays.iter().all(|r| r.iter().all(|x| !x.is_negative()))
    }

    pub fn key(&self) -> ConeKey {
        ConeKey {
            lineality: self.lineality.clone(),
            rays: self.rays.clone(),
        }
    }

    /// Every generator of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Cone) -> bool {
        self.ambient == other.ambient
            && self.rays.iter().all(|r| other.contains(r))
            && self.lineality.iter().all(|l| {
                other.contains(l) && other.contains(&l.iter().map(|x| -x).collect::<Vec<_>>())
            })
    }

    /// Image under the coordinate embedding sending coordinate `i` to
    /// `coords[i]` in a space of dimension `ambient`, all other coordinates
    /// being zero.
    pub fn embed(&self, ambient: usize, coords: &[usize]) -> Cone {
        assert_eq!(coords.len(), self.ambient);
        let lift = |v: &IntVec| {
            let mut out = vec![BigInt::zero(); ambient];
            for (i, x) in v.iter().enumerate() {
                out[coords[i]] = x.clone();
            }
            out
        };
        let mut equalities: Vec<IntVec> = self.equalities.iter().map(lift).collect();
        for j in 0..ambient {
            if !coords.contains(&j) {
                let mut unit = vec![BigInt::zero(); ambient];
                unit[j] = BigInt::one();
                equalities.push(unit);
            }
        }
        let mut rays: Vec<IntVec> = self.rays.iter().map(lift).collect();
        rays.sort();
        Cone {
            ambient,
            inequalities: self.inequalities.iter().map(lift).collect(),
            equalities,
            rays,
            lineality: crate::linalg::canonical_row_basis(
                &self.lineality.iter().map(lift).collect::<Vec<_>>(),
                ambient,
            ),
        }
    }

    fn tight_sets(&self) -> Vec<Vec<bool>> {
        self.rays
            .iter()
            .map(|r| {
                self.inequalities
                    .iter()
                    .map(|a| dot(a, r).is_zero())
                    .collect()
            })
            .collect()
    }

    /// All faces, each as the sorted list of indices of its rays, from the
    /// largest face down, ending with the minimal face (the lineality
    /// space, or `{0}` for pointed cones).
    pub fn face_lattice(&self) -> Vec<Vec<usize>> {
        let tight = self.tight_sets();
        let all: Vec<usize> = (0..self.rays.len()).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([all.clone()]);
        let mut queue = VecDeque::from([all]);
        while let Some(face) = queue.pop_front() {
            for ineq in 0..self.inequalities.len() {
                if face.iter().all(|&r| tight[r][ineq]) {
                    continue;
                }
                let sub: Vec<usize> = face.iter().copied().filter(|&r| tight[r][ineq]).collect();
                if seen.insert(sub.clone()) {
                    queue.push_back(sub);
                }
            }
        }
        let mut faces: Vec<Vec<usize>> = seen.into_iter().collect();
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces
    }

    /// The face with the given rays (a member of [`Cone::face_lattice`]).
    pub fn face(&self, ray_indices: &[usize]) -> Cone {
        let tight = self.tight_sets();
        let mut inequalities = Vec::new();
        let mut equalities = self.equalities.clone();
        for (i, a) in self.inequalities.iter().enumerate() {
            if ray_indices.iter().all(|&r| tight[r][i]) {
                equalities.push(a.clone());
            } else {
                inequalities.push(a.clone());
            }
        }
        Cone {
            ambient: self.ambient,
            inequalities,
            equalities,
            rays: ray_indices.iter().map(|&r| self.rays[r].clone()).collect(),
            lineality: self.lineality.clone(),
        }
    }

    pub fn faces(&self) -> Vec<Cone> {
        self.face_lattice().iter().map(|f| self.face(f)).collect()
    }

    /// `{u : u . x >= 0 for all x in self}`, which need not be pointed.
    pub fn polar_dual(&self) -> Cone {
        Cone::new(self.ambient, self.rays.clone(), self.lineality.clone())
    }

    /// A finite generating set of the monoid of lattice points of the cone.
    pub fn monoid_generators(&self) -> Vec<IntVec> {
        hilbert::monoid_generators(self)
    }
}

pub fn intersect_cones(a: &Cone, b: &Cone) -> Result<Cone, ConeError> {
    if a.ambient != b.ambient {
        return Err(ConeError::AmbientMismatch(a.ambient, b.ambient));
    }
    let mut ineq = a.inequalities.clone();
    ineq.extend(b.inequalities.iter().cloned());
    let mut eq = a.equalities.clone();
    eq.extend(b.equalities.iter().cloned());
    Ok(Cone::new(a.ambient, ineq, eq))
}

/// Whether `face` is a face of `cone`: its rays are rays of `cone`, the
/// lineality spaces agree, and the rays are closed under the inequalities of
/// `cone` they make tight.
pub fn is_face_of(face: &Cone, cone: &Cone) -> Result<bool, ConeError> {
    if face.ambient != cone.ambient {
        return Err(ConeError::AmbientMismatch(face.ambient, cone.ambient));
    }
    if face.lineality != cone.lineality {
        return Ok(false);
    }
    let mut indices = Vec::with_capacity(face.rays.len());
    for r in &face.rays {
        match cone.rays.iter().position(|c| c == r) {
            Some(i) => indices.push(i),
            None => return Ok(false),
        }
    }
    indices.sort_unstable();
    let tight = cone.tight_sets();
    let closure: Vec<usize> = (0..cone.rays.len())
        .filter(|&r| {
            (0..cone.inequalities.len())
                .filter(|&i| indices.iter().all(|&f| tight[f][i]))
                .all(|i| tight[r][i])
        })
        .collect();
    Ok(closure == indices)
}

/// The cone of thicknesses compatible with `w`: the non-negative orthant in
/// edge space cut by one equality per basis cycle, whose entry on each edge
/// of the cycle is the value of `w` on the half where the cycle enters that
/// edge.
pub fn cone_of_weighting(g: &Graph, w: &Weighting) -> Cone {
    Cone::orthant_section(g.num_edges(), cycle_rows(g, w))
}

fn cycle_rows(g: &Graph, w: &Weighting) -> Vec<IntVec> {
    compatibility_rows(g, &cycle_basis(g), w)
}

/// One row per cycle: the value of `w` on the source half of each directed
/// edge of the cycle, zero off the cycle.
pub fn compatibility_rows(g: &Graph, cycles: &[Cycle], w: &Weighting) -> Vec<IntVec> {
    cycles
        .iter()
        .map(|cycle| {
            let mut row = vec![BigInt::zero(); g.num_edges()];
            for d in cycle.edges() {
                row[d.edge(g)] = BigInt::from(w.along(*d));
            }
            row
        })
        .collect()
}

/// Generators of the dual cone of a weighting's cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGenerators {
    pub vectors: Vec<IntVec>,
}

impl DualGenerators {
    pub fn cone(&self, ambient: usize) -> Cone {
        Cone::from_generators(ambient, &self.vectors)
    }
}

/// The unit vectors of the orthant followed by `+cycle_row` and `-cycle_row`
/// for every basis cycle.
pub fn dual_cone_generators(g: &Graph, w: &Weighting) -> DualGenerators {
    let mut vectors = identity(g.num_edges());
    for row in cycle_rows(g, w) {
        let negated = row.iter().map(|x| -x).collect();
        vectors.push(row);
        vectors.push(negated);
    }
    DualGenerators { vectors }
}

/// Normalize `v` to a primitive vector, for callers building rays by hand.
pub fn primitive_ray(v: &[i64]) -> IntVec {
    primitive(v.iter().map(|&x| BigInt::from(x)).collect())
}
