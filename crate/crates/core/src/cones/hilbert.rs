//! Generators of the monoid of lattice points of a rational cone.
//!
//! The cone is first moved into lattice coordinates adapted to it: a
//! unimodular change of basis puts the integer points of its linear span on
//! the first coordinates, and a second one splits the lattice of the
//! lineality space off. What remains is a full-dimensional pointed cone in
//! the quotient lattice, whose Hilbert basis is computed exactly and lifted
//! back. A signed lattice basis of the lineality space completes the set.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::Cone;
use crate::linalg::{
    column_echelon, columns, identity, invert_columns, is_zero, mat_vec, nullspace, primitive,
    IntVec,
};

pub(super) fn monoid_generators(cone: &Cone) -> Vec<IntVec> {
    let d = cone.ambient_dim();
    let mut spanning: Vec<IntVec> = cone.rays().to_vec();
    spanning.extend(cone.lineality().iter().cloned());
    if spanning.is_empty() {
        return Vec::new();
    }

    // Lattice of the linear span: the last `s` columns of `span_basis`.
    let perp = nullspace(&spanning, d);
    let (span_basis, span_inv, r) = if perp.is_empty() {
        (identity(d), identity(d), 0)
    } else {
        column_echelon(&perp, d)
    };
    let s = d - r;
    let to_span = |x: &IntVec| mat_vec(&span_inv, x)[r..].to_vec();
    let from_span = |y: &IntVec| {
        let mut full = vec![BigInt::zero(); r];
        full.extend(y.iter().cloned());
        mat_vec(&span_basis, &full)
    };

    // Inside the span, the lattice of the lineality space: the last
    // `s - q` columns of `split`.
    let lineality: Vec<IntVec> = cone.lineality().iter().map(to_span).collect();
    let (split, split_inv, q) = if lineality.is_empty() {
        (identity(s), identity(s), s)
    } else {
        column_echelon(&nullspace(&lineality, s), s)
    };
    let to_quotient = |y: &IntVec| mat_vec(&split_inv, y)[..q].to_vec();
    let lift = |z: &IntVec| {
        let mut full = z.clone();
        full.resize(s, BigInt::zero());
        from_span(&mat_vec(&split, &full))
    };

    let quotient_rays: Vec<IntVec> = cone
        .rays()
        .iter()
        .map(|x| primitive(to_quotient(&to_span(x))))
        .collect();
    let mut out: Vec<IntVec> = hilbert_basis(q, &quotient_rays).iter().map(lift).collect();
    for col in columns(&split, q..s) {
        let l = from_span(&col);
        out.push(l.iter().map(|x| -x).collect());
        out.push(l);
    }
    out
}

/// Hilbert basis of the full-dimensional pointed cone spanned by `rays`.
///
/// Every irreducible lattice point is a ray or lies in the half-open
/// parallelepiped of some basis made of rays; the candidates are collected
/// from all such parallelepipeds and the reducible ones discarded.
fn hilbert_basis(dim: usize, rays: &[IntVec]) -> Vec<IntVec> {
    if dim == 0 || rays.is_empty() {
        return Vec::new();
    }
    let cone = Cone::from_generators(dim, rays);
    let mut candidates: BTreeSet<IntVec> = rays.iter().cloned().collect();
    for subset in combinations(rays.len(), dim) {
        let basis: Vec<IntVec> = subset.iter().map(|&i| rays[i].clone()).collect();
        let Some(inverse) = invert_columns(&basis) else {
            continue;
        };
        candidates.extend(parallelepiped_points(&basis, &inverse));
    }
    candidates.retain(|x| !is_zero(x));
    let list: Vec<IntVec> = candidates.into_iter().collect();
    list.iter()
        .filter(|x| {
            !list.iter().any(|y| {
                y != *x && cone.contains(&x.iter().zip(y).map(|(a, b)| a - b).collect::<Vec<_>>())
            })
        })
        .cloned()
        .collect()
}

/// Lattice points `sum lambda_i b_i` with every `lambda_i` in `[0, 1)`.
///
/// These are the cosets of the lattice spanned by the basis, reached by
/// adding unit vectors and reducing modulo the basis.
fn parallelepiped_points(basis: &[IntVec], inverse: &[Vec<BigRational>]) -> Vec<IntVec> {
    let dim = basis.len();
    let reduce = |x: &IntVec| -> IntVec {
        let mut out = vec![BigRational::zero(); dim];
        for (i, row) in inverse.iter().enumerate() {
            let lambda: BigRational = row
                .iter()
                .zip(x)
                .map(|(a, b)| a * BigRational::from_integer(b.clone()))
                .sum();
            let frac = &lambda - lambda.floor();
            for (o, b) in out.iter_mut().zip(&basis[i]) {
                *o += &frac * BigRational::from_integer(b.clone());
            }
        }
        out.into_iter().map(|v| v.to_integer()).collect()
    };
    let zero = vec![BigInt::zero(); dim];
    let mut seen: BTreeSet<IntVec> = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(p) = queue.pop_front() {
        for j in 0..dim {
            let mut next = p.clone();
            next[j] += 1;
            let next = reduce(&next);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.into_iter().collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < k - current.len() {
                break;
            }
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;

    fn sorted(mut v: Vec<IntVec>) -> Vec<IntVec> {
        v.sort();
        v
    }

    #[test]
    fn orthant_generators() {
        assert_eq!(
            sorted(Cone::orthant(2).monoid_generators()),
            vec![int_vec(&[0, 1]), int_vec(&[1, 0])]
        );
    }

    #[test]
    fn whole_line() {
        let line = Cone::new(1, vec![], vec![]);
        assert_eq!(
            sorted(line.monoid_generators()),
            vec![int_vec(&[-1]), int_vec(&[1])]
        );
    }

    #[test]
    fn classic_two_dimensional_cone() {
        // Determinant 3: the parallelepiped contributes (1, 1) and (1, 2).
        let c = Cone::from_generators(2, &[int_vec(&[1, 0]), int_vec(&[1, 3])]);
        assert_eq!(
            sorted(c.monoid_generators()),
            vec![
                int_vec(&[1, 0]),
                int_vec(&[1, 1]),
                int_vec(&[1, 2]),
                int_vec(&[1, 3])
            ]
        );
    }

    #[test]
    fn lower_dimensional_ray() {
        let c = Cone::from_generators(3, &[int_vec(&[2, 4, 6])]);
        assert_eq!(c.monoid_generators(), vec![int_vec(&[1, 2, 3])]);
    }

    #[test]
    fn zero_cone_has_no_generators() {
        assert!(Cone::zero(3).monoid_generators().is_empty());
    }

    #[test]
    fn counts() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
