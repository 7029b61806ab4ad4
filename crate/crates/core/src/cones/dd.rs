//! Double description for cones `{x : A x >= 0, B x = 0}`.
//!
//! Starts from the whole space (all of it lineality) and inserts the
//! equalities, then the inequalities, in the order given. A constraint that
//! cuts the current lineality space is handled by pivoting on the first
//! lineality vector it does not vanish on; otherwise rays are split by sign
//! and adjacent positive/negative pairs are combined. Adjacency is decided
//! combinatorially from the sets of tight inequalities.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{canonical_row_basis, combine, dot, identity, primitive, IntVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct DdOutput {
    /// Extreme rays of the cone modulo lineality, primitive and sorted.
    pub rays: Vec<IntVec>,
    /// Canonical basis of the lineality space.
    pub lineality: Vec<IntVec>,
}

#[derive(Clone)]
struct Ray {
    v: IntVec,
    tight: Bits,
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn contains_all(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

pub(crate) fn double_description(
    dim: usize,
    inequalities: &[IntVec],
    equalities: &[IntVec],
) -> DdOutput {
    let m = inequalities.len();
    let mut lineality: Vec<IntVec> = identity(dim);
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed = Bits::new(m);

    let constraints = equalities
        .iter()
        .map(|a| (a, None))
        .chain(inequalities.iter().enumerate().map(|(i, a)| (a, Some(i))));

    for (a, slot) in constraints {
        debug_assert_eq!(a.len(), dim);
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut pivot = lineality.remove(pos);
            let mut s = dot(a, &pivot);
            if s.is_negative() {
                pivot.iter_mut().for_each(|x| *x = -&*x);
                s = -s;
            }
            for l in &mut lineality {
                let t = dot(a, l);
                if !t.is_zero() {
                    *l = primitive(combine(&s, l, &-t, &pivot));
                }
            }
            for r in &mut rays {
                let t = dot(a, &r.v);
                if !t.is_zero() {
                    r.v = primitive(combine(&s, &r.v, &-t, &pivot));
                }
                if let Some(i) = slot {
                    r.tight.insert(i);
                }
            }
            if slot.is_some() {
                rays.push(Ray {
                    v: primitive(pivot),
                    tight: processed.clone(),
                });
            }
        } else {
            let values: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
            let mut next: Vec<Ray> = Vec::new();
            for (r, val) in rays.iter().zip(&values) {
                if val.is_zero() {
                    let mut r = r.clone();
                    if let Some(i) = slot {
                        r.tight.insert(i);
                    }
                    next.push(r);
                } else if val.is_positive() && slot.is_some() {
                    next.push(r.clone());
                }
            }
            for (p, vp) in rays.iter().zip(&values) {
                if !vp.is_positive() {
                    continue;
                }
                for (q, vq) in rays.iter().zip(&values) {
                    if !vq.is_negative() {
                        continue;
                    }
                    let common = p.tight.and(&q.tight);
                    let blocked = rays.iter().any(|r| {
                        !std::ptr::eq(r, p) && !std::ptr::eq(r, q) && r.tight.contains_all(&common)
                    });
                    if blocked {
                        continue;
                    }
                    let mut tight = common;
                    if let Some(i) = slot {
                        tight.insert(i);
                    }
                    let v = primitive(combine(vp, &q.v, &-vq, &p.v));
                    next.push(Ray { v, tight });
                }
            }
            rays = next;
        }
        if let Some(i) = slot {
            processed.insert(i);
        }
    }

    let mut rays: Vec<IntVec> = rays.into_iter().map(|r| r.v).collect();
    rays.sort();
    rays.dedup();
    DdOutput {
        rays,
        lineality: canonical_row_basis(&lineality, dim),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;

    #[test]
    fn orthant() {
        let ineq = identity(3);
        let out = double_description(3, &ineq, &[]);
        assert!(out.lineality.is_empty());
        assert_eq!(
            out.rays,
            vec![
                int_vec(&[0, 0, 1]),
                int_vec(&[0, 1, 0]),
                int_vec(&[1, 0, 0])
            ]
        );
    }

    #[test]
    fn diagonal_ray() {
        let out = double_description(2, &identity(2), &[int_vec(&[1, -1])]);
        assert_eq!(out.rays, vec![int_vec(&[1, 1])]);
    }

    #[test]
    fn half_plane_has_lineality() {
        let out = double_description(2, &[int_vec(&[1, 1])], &[]);
        assert_eq!(out.lineality.len(), 1);
        assert_eq!(out.rays.len(), 1);
    }

    #[test]
    fn square_pyramid() {
        // Cone over the square with corners (+-1, +-1, 1).
        let ineq = vec![
            int_vec(&[1, 0, 1]),
            int_vec(&[-1, 0, 1]),
            int_vec(&[0, 1, 1]),
            int_vec(&[0, -1, 1]),
        ];
        let out = double_description(3, &ineq, &[]);
        assert_eq!(
            out.rays,
            vec![
                int_vec(&[-1, -1, 1]),
                int_vec(&[-1, 1, 1]),
                int_vec(&[1, -1, 1]),
                int_vec(&[1, 1, 1]),
            ]
        );
    }

    #[test]
    fn infeasible_directions_collapse_to_zero() {
        let out = double_description(2, &identity(2), &[int_vec(&[1, 1])]);
        assert!(out.rays.is_empty());
        assert!(out.lineality.is_empty());
    }
}
