//! Static SVG rendering of the 2-dimensional cases (hexagon, pentagon).
//!
//! Points live on the slice plane `x_1 + x_2 + x_3 = const`; they are
//! projected orthonormally with `e_1 - e_2` horizontal. Floating point is
//! used here for display only.

use crate::rational::{format_rat, rat_to_f64, Rat};
use crate::{Error, Result};

/// Orthonormal in-plane coordinates of a slice point.
pub fn project_slice_point(x: &[Rat]) -> (f64, f64) {
    let a = rat_to_f64(&x[0]);
    let b = rat_to_f64(&x[1]);
    let c = rat_to_f64(&x[2]);
    let px = (a - b) / 2f64.sqrt();
    let py = (a + b - 2.0 * c) / 6f64.sqrt();
    (px, py)
}

/// Renders the convex polygon spanned by three-coordinate slice vertices.
/// Vertices are sorted into cyclic order around their centroid.
pub fn render_slice_polygon(vertices: &[Vec<Rat>], title: &str) -> Result<String> {
    if vertices.is_empty() || vertices.iter().any(|v| v.len() != 3) {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: vertices.first().map_or(0, |v| v.len()),
        });
    }
    let mut pts: Vec<((f64, f64), &Vec<Rat>)> = vertices
        .iter()
        .map(|v| (project_slice_point(v), v))
        .collect();
    let cx = pts.iter().map(|(p, _)| p.0).sum::<f64>() / pts.len() as f64;
    let cy = pts.iter().map(|(p, _)| p.1).sum::<f64>() / pts.len() as f64;
    pts.sort_by(|(a, _), (b, _)| {
        let ta = (a.1 - cy).atan2(a.0 - cx);
        let tb = (b.1 - cy).atan2(b.0 - cx);
        ta.partial_cmp(&tb).unwrap_or(std::cmp::Ordering::Equal)
    });

    let min_x = pts.iter().map(|(p, _)| p.0).fold(f64::INFINITY, f64::min);
    let max_x = pts.iter().map(|(p, _)| p.0).fold(f64::NEG_INFINITY, f64::max);
    let min_y = pts.iter().map(|(p, _)| p.1).fold(f64::INFINITY, f64::min);
    let max_y = pts.iter().map(|(p, _)| p.1).fold(f64::NEG_INFINITY, f64::max);
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let margin = 0.18 * span + 0.4;
    let scale = 360.0 / (span + 2.0 * margin);
    // SVG y grows downward; flip so "up" in the plane is up on screen.
    let map = |p: (f64, f64)| {
        (
            (p.0 - min_x + margin) * scale,
            (max_y - p.1 + margin) * scale,
        )
    };

    let mut svg = String::new();
    let width = (max_x - min_x + 2.0 * margin) * scale;
    let height = (max_y - min_y + 2.0 * margin) * scale;
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width:.2} {height:.2}\" \
         width=\"{width:.2}\" height=\"{height:.2}\">\n",
    ));
    svg.push_str(&format!("<title>{title}</title>\n"));
    let ring: Vec<String> = pts
        .iter()
        .map(|(p, _)| {
            let (sx, sy) = map(*p);
            format!("{sx:.3},{sy:.3}")
        })
        .collect();
    svg.push_str(&format!(
        "<polygon points=\"{}\" fill=\"#cfe3f7\" stroke=\"#2b547e\" stroke-width=\"2\"/>\n",
        ring.join(" ")
    ));
    for (p, v) in &pts {
        let (sx, sy) = map(*p);
        let label: Vec<String> = v.iter().map(format_rat).collect();
        svg.push_str(&format!(
            "<circle cx=\"{sx:.3}\" cy=\"{sy:.3}\" r=\"4\" fill=\"#2b547e\"/>\n"
        ));
        svg.push_str(&format!(
            "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"12\" font-family=\"monospace\">({})</text>\n",
            sx + 6.0,
            sy - 6.0,
            label.join(",")
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn projection_keeps_root_horizontal() {
        // e1 - e2 must project onto the horizontal axis.
        let p = project_slice_point(&[rat_int(1), rat_int(-1), rat_int(0)]);
        assert!(p.1.abs() < 1e-12);
        assert!(p.0 > 0.0);
    }

    #[test]
    fn polygon_has_all_vertices() {
        let verts: Vec<Vec<_>> = [[0, 2, 4], [2, 0, 4], [5, 0, 1], [5, 1, 0], [3, 3, 0], [0, 3, 3]]
            .iter()
            .map(|v| v.iter().map(|&k| rat_int(k)).collect())
            .collect();
        let svg = render_slice_polygon(&verts, "hexagon").unwrap();
        assert_eq!(svg.matches("<circle").count(), 6);
        assert!(svg.contains("(0,2,4)"));
    }
}
