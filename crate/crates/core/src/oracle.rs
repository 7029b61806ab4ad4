//! Slow reference implementations for cross-checking.
//!
//! Nothing here calls into the cone engine or the fan builder: rays come
//! from brute force over tight constraint subsets, catalogs from a plain
//! coefficient box with one equation per simple cycle, and monoid
//! membership from a breadth-first search. Only the graph and weighting
//! types are shared.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cones::Cone;
use crate::graph::{contract, cycle_basis, enumerate_cycles, Graph};
use crate::weighting::{base_weighting, Weighting};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("box radius {radius} is below the enumeration bound {bound}")]
    BoxTooSmall { radius: i64, bound: i64 },
    #[error("ambient dimension {0} is above the oracle limit of 5")]
    DimensionTooLarge(usize),
    #[error("enumeration bound does not fit in a machine integer")]
    BoundTooLarge,
}

/// A cone as its sorted list of primitive rays.
pub type RaySet = Vec<Vec<BigInt>>;

pub const MAX_ORACLE_DIM: usize = 5;

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Basis of `{x : row . x = 0}` by Gauss-Jordan elimination.
fn kernel(rows: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(rat).collect()).collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..dim {
        let Some(p) = (top..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(top, p);
        let lead = m[top][col].clone();
        m[top].iter_mut().for_each(|x| *x /= &lead);
        for r in 0..m.len() {
            if r != top && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..dim {
                    let t = &f * &m[top][c];
                    m[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    (0..dim)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![BigRational::zero(); dim];
            x[free] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -m[r][free].clone();
            }
            x
        })
        .collect()
}

fn to_primitive(x: &[BigRational]) -> Vec<BigInt> {
    let l = x.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let ints: Vec<BigInt> = x.iter().map(|v| (v * rat(&l)).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|v| v / &g).collect()
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Extreme rays of `{x : a . x >= 0, b . x = 0}`, taken orthogonal to the
/// lineality space.
///
/// A ray is extreme exactly when the constraints tight on it cut out a
/// line; every subset of inequalities is tried.
fn rays_of(dim: usize, inequalities: &[Vec<BigInt>], equalities: &[Vec<BigInt>]) -> RaySet {
    let mut all: Vec<Vec<BigInt>> = inequalities.to_vec();
    all.extend(equalities.iter().cloned());
    let mut base: Vec<Vec<BigInt>> = equalities.to_vec();
    base.extend(kernel(&all, dim).iter().map(|l| to_primitive(l)));

    let m = inequalities.len();
    let mut found = BTreeSet::new();
    for mask in 0u64..(1 << m) {
        let mut rows = base.clone();
        rows.extend(
            (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| inequalities[i].clone()),
        );
        let k = kernel(&rows, dim);
        if k.len() != 1 {
            continue;
        }
        let v = to_primitive(&k[0]);
        for cand in [v.clone(), v.iter().map(|x| -x).collect()] {
            if inequalities.iter().all(|a| !dot(a, &cand).is_negative()) {
                found.insert(cand);
            }
        }
    }
    found.into_iter().collect()
}

/// Extreme rays of a cone from its constraints alone.
pub fn oracle_extreme_rays(c: &Cone) -> Result<RaySet, OracleError> {
    let d = c.ambient_dim();
    if d > MAX_ORACLE_DIM {
        return Err(OracleError::DimensionTooLarge(d));
    }
    Ok(rays_of(d, c.inequalities(), c.equalities()))
}

fn unit_rows(d: usize) -> Vec<Vec<BigInt>> {
    (0..d)
        .map(|i| (0..d).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect()
}

fn phi(n: usize) -> Option<i64> {
    let mut values = vec![1i64];
    for _ in 0..n {
        values.push(values.iter().try_fold(0i64, |s, v| s.checked_add(*v))?);
    }
    Some(values[n])
}

fn bound_of(g: &Graph, w: &Weighting) -> Result<i64, OracleError> {
    let m = g
        .edges()
        .iter()
        .map(|&[s, _]| w.value(s).abs())
        .max()
        .unwrap_or(0);
    phi(g.first_betti())
        .and_then(|p| p.checked_mul(m))
        .ok_or(OracleError::BoundTooLarge)
}

/// The weighting cones of `g`, found from every shift of the base weighting
/// with coefficients in `[-radius, radius]` and, recursively, from the
/// graphs obtained by contracting each simple cycle (sub-radius twice the
/// sub-bound).
pub fn oracle_cone_catalog(g: &Graph, radius: i64) -> Result<BTreeSet<RaySet>, OracleError> {
    if g.num_edges() > MAX_ORACLE_DIM {
        return Err(OracleError::DimensionTooLarge(g.num_edges()));
    }
    let base = base_weighting(g);
    let bound = bound_of(g, &base)?;
    if radius < bound {
        return Err(OracleError::BoxTooSmall { radius, bound });
    }
    let d = g.num_edges();
    let cycles = enumerate_cycles(g);
    let basis = cycle_basis(g);
    let mut out = BTreeSet::new();

    let mut coeffs = vec![-radius; basis.len()];
    loop {
        let mut flows = base.flows(g);
        for (b, &c) in basis.iter().zip(&coeffs) {
            for (f, &s) in flows.iter_mut().zip(b.incidence()) {
                *f += c * s;
            }
        }
        // Equation for every simple cycle, entries from the source halves.
        let eqs: Vec<Vec<BigInt>> = cycles
            .iter()
            .map(|cy| {
                let mut row = vec![BigInt::zero(); d];
                for de in cy.edges() {
                    let e = de.edge(g);
                    let forward = g.edges()[e][0] == de.source_half;
                    row[e] = BigInt::from(if forward { -flows[e] } else { flows[e] });
                }
                row
            })
            .collect();
        out.insert(rays_of(d, &unit_rows(d), &eqs));

        let mut i = 0;
        while i < coeffs.len() && coeffs[i] == radius {
            coeffs[i] = -radius;
            i += 1;
        }
        if i == coeffs.len() {
            break;
        }
        coeffs[i] += 1;
    }

    for cy in &cycles {
        let contraction = contract(g, &cy.edge_set()).expect("cycle edges exist");
        let sub = &contraction.contracted;
        let sub_radius = 2 * bound_of(sub, &base_weighting(sub))?;
        let coords: Vec<usize> = contraction.surviving_edges();
        for rays in oracle_cone_catalog(sub, sub_radius)? {
            let mut lifted: RaySet = rays
                .iter()
                .map(|r| {
                    let mut v = vec![BigInt::zero(); d];
                    for (i, x) in r.iter().enumerate() {
                        v[coords[i]] = x.clone();
                    }
                    v
                })
                .collect();
            lifted.sort();
            out.insert(lifted);
        }
    }
    Ok(out)
}

/// Whether every lattice point of `c` with coordinates in `[-bound, bound]`
/// is a non-negative integer combination of `gens`.
///
/// Sums are grown breadth-first from the origin inside a bounded region.
/// When all generators are non-negative, any representation of a point in
/// the box only passes through the box, so the search is exhaustive.
/// Otherwise partial sums are allowed a margin of twice the largest
/// generator entry beyond the box.
pub fn oracle_monoid_check(c: &Cone, gens: &[Vec<BigInt>], bound: i64) -> bool {
    assert!((0..=6).contains(&bound), "bound must lie in 0..=6");
    let d = c.ambient_dim();
    let small: Vec<Vec<i64>> = match gens
        .iter()
        .map(|g| g.iter().map(|x| x.to_i64()).collect())
        .collect()
    {
        Some(v) => v,
        None => return false,
    };
    let nonneg = small.iter().all(|g| g.iter().all(|&x| x >= 0));
    let max_entry = small.iter().flatten().map(|x| x.abs()).max().unwrap_or(0);
    let (lo, hi) = if nonneg {
        (0, bound)
    } else {
        (-bound - 2 * max_entry, bound + 2 * max_entry)
    };
    let in_region = |p: &[i64]| p.iter().all(|&x| lo <= x && x <= hi);

    let mut seen: HashSet<Vec<i64>> = HashSet::from([vec![0; d]]);
    let mut queue = VecDeque::from([vec![0i64; d]]);
    while let Some(p) = queue.pop_front() {
        for g in &small {
            let q: Vec<i64> = p.iter().zip(g).map(|(a, b)| a + b).collect();
            if !in_region(&q) || seen.contains(&q) {
                continue;
            }
            seen.insert(q.clone());
            queue.push_back(q);
        }
    }

    let mut target = vec![-bound; d];
    loop {
        let t: Vec<BigInt> = target.iter().map(|&x| BigInt::from(x)).collect();
        if member(c, &t) && !seen.contains(&target) {
            return false;
        }
        let mut i = 0;
        while i < d && target[i] == bound {
            target[i] = -bound;
            i += 1;
        }
        if i == d {
            return true;
        }
        target[i] += 1;
    }
}

fn member(c: &Cone, x: &[BigInt]) -> bool {
    c.inequalities().iter().all(|a| !dot(a, x).is_negative())
        && c.equalities().iter().all(|b| dot(b, x).is_zero())
}
