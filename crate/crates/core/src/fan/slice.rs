//! The fan cut by the hyperplane where the coordinates sum to one.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::Fan;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error("slices are drawn for 2 or 3 edges, not {0}")]
    UnsupportedDimension(usize),
}

/// The slice of one cone of dimension at least one: a point, a segment or
/// a convex polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceCell {
    /// Index into [`Fan::cones`].
    pub cone: usize,
    /// Barycentric coordinates of the vertices, in boundary order for
    /// polygons.
    pub vertices: Vec<Vec<BigRational>>,
    pub maximal: bool,
    pub flows: Option<Vec<i64>>,
}

impl SliceCell {
    /// 0 for points, 1 for segments, 2 for polygons.
    pub fn dim(&self) -> usize {
        self.vertices.len().min(3) - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slice {
    pub edge_labels: Vec<String>,
    pub cells: Vec<SliceCell>,
}

impl Slice {
    pub fn ambient_dim(&self) -> usize {
        self.edge_labels.len()
    }

    pub fn maximal_cells(&self) -> impl Iterator<Item = &SliceCell> {
        self.cells.iter().filter(|c| c.maximal)
    }
}

pub fn slice_fan(f: &Fan) -> Result<Slice, SliceError> {
    let d = f.ambient_dim();
    if d != 2 && d != 3 {
        return Err(SliceError::UnsupportedDimension(d));
    }
    let cells = f
        .cones()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.dim >= 1)
        .map(|(i, c)| {
            let order = boundary_order(c);
            let vertices = order
                .iter()
                .map(|&r| normalize(&c.cone.rays()[r]))
                .collect();
            SliceCell {
                cone: i,
                vertices,
                maximal: c.maximal,
                flows: c.witness.clone(),
            }
        })
        .collect();
    Ok(Slice {
        edge_labels: f.edge_labels().to_vec(),
        cells,
    })
}

fn normalize(ray: &[BigInt]) -> Vec<BigRational> {
    let total: BigInt = ray.iter().sum();
    ray.iter()
        .map(|x| BigRational::new(x.clone(), total.clone()))
        .collect()
}

/// Ray indices of the cone in the order they appear around its slice: two
/// rays are neighbours when they span a two-dimensional face.
fn boundary_order(c: &super::FanCone) -> Vec<usize> {
    let n = c.cone.rays().len();
    if c.dim < 3 {
        return (0..n).collect();
    }
    let edges: Vec<Vec<usize>> = c
        .cone
        .face_lattice()
        .into_iter()
        .filter(|f| f.len() == 2)
        .collect();
    let mut order = vec![0];
    while order.len() < n {
        let last = *order.last().unwrap();
        let prev = order.len().checked_sub(2).map(|i| order[i]);
        let next = edges
            .iter()
            .filter(|e| e.contains(&last))
            .map(|e| if e[0] == last { e[1] } else { e[0] })
            .find(|&r| Some(r) != prev && !order.contains(&r))
            .expect("the boundary of a polygon is a cycle");
        order.push(next);
    }
    order
}
