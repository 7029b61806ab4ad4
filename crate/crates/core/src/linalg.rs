//! Exact integer and rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntVec = Vec<BigInt>;

pub fn int_vec(entries: &[i64]) -> IntVec {
    entries.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divide out the gcd of the entries; the direction is unchanged.
pub fn primitive(mut v: IntVec) -> IntVec {
    let g = content(&v);
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

/// `a * u + b * v`
pub fn combine(a: &BigInt, u: &[BigInt], b: &BigInt, v: &[BigInt]) -> IntVec {
    u.iter().zip(v).map(|(x, y)| a * x + b * y).collect()
}

/// Reduced row echelon form of the row space, each row scaled to a primitive
/// integer vector with positive pivot. This is a canonical basis.
pub fn canonical_row_basis(rows: &[IntVec], dim: usize) -> Vec<IntVec> {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..dim {
        let Some(p) = (pivot_row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let lead = m[pivot_row][col].clone();
        for x in &mut m[pivot_row] {
            *x /= &lead;
        }
        for r in 0..m.len() {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..dim {
                    let delta = &f * &m[pivot_row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    m.into_iter()
        .map(|row| rational_to_primitive(&row))
        .collect()
}

/// Clear denominators and divide out the content.
pub fn rational_to_primitive(row: &[BigRational]) -> IntVec {
    let lcm = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    primitive(
        row.iter()
            .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
            .collect(),
    )
}

pub fn rank(rows: &[IntVec], dim: usize) -> usize {
    canonical_row_basis(rows, dim).len()
}

/// An integer basis of `{x : r . x = 0 for every row r}`.
pub fn nullspace(rows: &[IntVec], dim: usize) -> Vec<IntVec> {
    let rref = canonical_row_basis(rows, dim);
    let pivots: Vec<usize> = rref
        .iter()
        .map(|r| {
            r.iter()
                .position(|x| !x.is_zero())
                .expect("rref rows are nonzero")
        })
        .collect();
    (0..dim)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            // x_free = 1, pivots solved from their rows.
            let mut x = vec![BigRational::zero(); dim];
            x[free] = BigRational::one();
            for (row, &p) in rref.iter().zip(&pivots) {
                x[p] = -BigRational::new(row[free].clone(), row[p].clone());
            }
            rational_to_primitive(&x)
        })
        .collect()
}

/// Square integer matrix, row-major.
pub type IntMatrix = Vec<IntVec>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(m: &IntMatrix, v: &[BigInt]) -> IntVec {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Column echelon form by unimodular column operations.
///
/// Returns `(v, v_inv, r)` with `v` unimodular, `v_inv` its inverse and
/// `r = rank(a)`, such that the columns `r..` of `a * v` vanish. Those
/// columns of `v` are then a lattice basis of the integer kernel of `a`.
pub fn column_echelon(a: &[IntVec], dim: usize) -> (IntMatrix, IntMatrix, usize) {
    let mut a: Vec<IntVec> = a.to_vec();
    let mut v = identity(dim);
    let mut v_inv = identity(dim);
    let mut p = 0;
    for i in 0..a.len() {
        if p == dim {
            break;
        }
        for j in p + 1..dim {
            if a[i][j].is_zero() {
                continue;
            }
            let (x_a, x_b) = (a[i][p].clone(), a[i][j].clone());
            let e = x_a.extended_gcd(&x_b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let (ag, bg) = (&x_a / &g, &x_b / &g);
            // columns p, j  <-  [[x, -bg], [y, ag]]
            let col_op = |m: &mut Vec<IntVec>| {
                for row in m.iter_mut() {
                    let (cp, cj) = (row[p].clone(), row[j].clone());
                    row[p] = &x * &cp + &y * &cj;
                    row[j] = -&bg * &cp + &ag * &cj;
                }
            };
            col_op(&mut a);
            col_op(&mut v);
            // rows p, j of the inverse  <-  [[ag, bg], [-y, x]]
            let (rp, rj) = (v_inv[p].clone(), v_inv[j].clone());
            v_inv[p] = combine(&ag, &rp, &bg, &rj);
            v_inv[j] = combine(&-&y, &rp, &x, &rj);
        }
        if !a[i][p].is_zero() {
            p += 1;
        }
    }
    (v, v_inv, p)
}

/// Transpose of a list of column vectors.
pub fn columns(m: &IntMatrix, range: std::ops::Range<usize>) -> Vec<IntVec> {
    range
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}

/// Inverse of a square integer matrix over the rationals, or `None` if it is
/// singular. `basis` holds the columns.
pub fn invert_columns(basis: &[IntVec]) -> Option<Vec<Vec<BigRational>>> {
    let n = basis.len();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = (0..n)
                .map(|c| BigRational::from_integer(basis[c][r].clone()))
                .collect();
            row.extend((0..n).map(|c| {
                if c == r {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let lead = m[col][col].clone();
        for x in &mut m[col] {
            *x /= &lead;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn abs_max(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_default()
}
