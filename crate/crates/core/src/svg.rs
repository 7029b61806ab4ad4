//! SVG pictures of fan slices.
//!
//! Three edges give a triangle whose corners are the coordinate rays, two
//! edges an interval. Maximal cells are drawn: points as circles, segments
//! as lines, polygons filled. Every shape carries a `<title>` listing the
//! witness flows.

use std::fmt::Write;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::fan::{Slice, SliceCell, SliceError};

const TRIANGLE: [(f64, f64); 3] = [
    (20.0, 350.0),
    (380.0, 350.0),
    (200.0, 38.230_854_637_602_14),
];
const INTERVAL: [(f64, f64); 2] = [(20.0, 60.0), (380.0, 60.0)];

fn corners(d: usize) -> Result<&'static [(f64, f64)], SliceError> {
    match d {
        2 => Ok(&INTERVAL),
        3 => Ok(&TRIANGLE),
        _ => Err(SliceError::UnsupportedDimension(d)),
    }
}

fn place(corners: &[(f64, f64)], bary: &[BigRational]) -> (f64, f64) {
    bary.iter()
        .zip(corners)
        .fold((0.0, 0.0), |(x, y), (t, (cx, cy))| {
            let t = t.to_f64().expect("barycentric coordinates are finite");
            (x + t * cx, y + t * cy)
        })
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn title(slice: &Slice, cell: &SliceCell) -> String {
    match &cell.flows {
        Some(flows) => {
            let parts: Vec<String> = slice
                .edge_labels
                .iter()
                .zip(flows)
                .map(|(e, f)| format!("{e}={f}"))
                .collect();
            escape(&format!("flows {}", parts.join(", ")))
        }
        None => "no witness".to_string(),
    }
}

pub fn render_slice_svg(slice: &Slice) -> Result<String, SliceError> {
    let corners = corners(slice.ambient_dim())?;
    let height = if corners.len() == 3 { 400 } else { 120 };
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 400 {height}" width="400" height="{height}">"#
    )
    .unwrap();
    let pts: Vec<String> = corners
        .iter()
        .map(|(x, y)| format!("{x:.3},{y:.3}"))
        .collect();
    let outline = if corners.len() == 3 {
        "polygon"
    } else {
        "polyline"
    };
    writeln!(
        out,
        r##"<{outline} class="outline" points="{}" fill="none" stroke="#999"/>"##,
        pts.join(" ")
    )
    .unwrap();
    for (label, (x, y)) in slice.edge_labels.iter().zip(corners) {
        writeln!(
            out,
            r#"<text class="corner" x="{x:.3}" y="{:.3}" text-anchor="middle">{}</text>"#,
            y + 18.0,
            escape(label)
        )
        .unwrap();
    }

    let mut cells: Vec<&SliceCell> = slice.maximal_cells().collect();
    // Polygons first so that lower-dimensional cells stay visible.
    cells.sort_by_key(|c| std::cmp::Reverse(c.dim()));
    for cell in cells {
        let t = title(slice, cell);
        let placed: Vec<(f64, f64)> = cell.vertices.iter().map(|v| place(corners, v)).collect();
        match cell.dim() {
            0 => {
                let (x, y) = placed[0];
                writeln!(out, r##"<circle class="ray" cx="{x:.3}" cy="{y:.3}" r="3" fill="#235"><title>{t}</title></circle>"##)
                    .unwrap();
            }
            1 => {
                let ((x1, y1), (x2, y2)) = (placed[0], placed[1]);
                writeln!(
                    out,
                    r##"<line class="cone2" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#c33" stroke-width="3"><title>{t}</title></line>"##
                )
                .unwrap();
            }
            _ => {
                let p: Vec<String> = placed
                    .iter()
                    .map(|(x, y)| format!("{x:.3},{y:.3}"))
                    .collect();
                writeln!(
                    out,
                    r##"<polygon class="cone3" points="{}" fill="#9bd" fill-opacity="0.6" stroke="#357"><title>{t}</title></polygon>"##,
                    p.join(" ")
                )
                .unwrap();
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{build_fan, slice_fan};
    use crate::graph::banana;

    #[test]
    fn banana_picture() {
        let svg =
            render_slice_svg(&slice_fan(&build_fan(&banana(3, 10)).unwrap()).unwrap()).unwrap();
        assert_eq!(svg.matches("<circle").count(), 36);
        assert_eq!(svg.matches(r#"class="cone2""#).count(), 3);
        assert!(svg.contains("flows e1="));
    }

    #[test]
    fn two_gon_picture() {
        let svg =
            render_slice_svg(&slice_fan(&build_fan(&banana(2, 3)).unwrap()).unwrap()).unwrap();
        assert!(svg.contains("<polyline"));
        assert_eq!(svg.matches("<circle").count(), 4);
    }

    #[test]
    fn triangle_apex() {
        assert!((TRIANGLE[2].1 - (350.0 - 180.0 * 3f64.sqrt())).abs() < 1e-9);
    }
}
