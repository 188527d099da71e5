//! SVG heatmap of a vertex function on a cell structure.

use std::f64::consts::PI;
use std::fmt::Write as _;

use gasket_core::CellStructure;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 40.0;

fn layout(s: &CellStructure) -> Vec<(f64, f64)> {
    match (s.coords(), s.lattice_order()) {
        (Some(coords), Some(n)) => coords.iter().map(|p| p.position(n)).collect(),
        _ => {
            // Boundary on the outer ring, everything else on an inner one.
            let interior = s.interior();
            let mut pos = vec![(0.0, 0.0); s.vertex_count()];
            let ring = |ids: &[usize], radius: f64, pos: &mut Vec<(f64, f64)>| {
                for (j, &v) in ids.iter().enumerate() {
                    let t = PI / 2.0 + 2.0 * PI * j as f64 / ids.len() as f64;
                    pos[v] = (0.5 + radius * t.cos(), 0.5 + radius * t.sin());
                }
            };
            ring(s.boundary(), 0.5, &mut pos);
            if interior.len() == 1 {
                pos[interior[0]] = (0.5, 0.5);
            } else {
                ring(&interior, 0.22, &mut pos);
            }
            pos
        }
    }
}

/// Blue (low) through white to red (high).
fn colour(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let (r, g, b) = if t < 0.5 {
        let u = t / 0.5;
        (u, u, 1.0)
    } else {
        let u = (1.0 - t) / 0.5;
        (1.0, u, u)
    };
    format!(
        "#{:02x}{:02x}{:02x}",
        (r * 255.0).round() as u8,
        (g * 255.0).round() as u8,
        (b * 255.0).round() as u8
    )
}

/// Cells are filled with the mean of their corner values; vertices carry the
/// values themselves. Without values every vertex is drawn grey.
pub fn render(s: &CellStructure, values: Option<&[f64]>) -> String {
    let pos = layout(s);
    let (xs, ys): (Vec<f64>, Vec<f64>) = pos.iter().copied().unzip();
    let (x0, x1) = (
        xs.iter().copied().fold(f64::INFINITY, f64::min),
        xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    );
    let (y0, y1) = (
        ys.iter().copied().fold(f64::INFINITY, f64::min),
        ys.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    );
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let inner = SIZE - 2.0 * MARGIN;
    // SVG y grows downward.
    let at = |v: usize| {
        let (x, y) = pos[v];
        (
            MARGIN + (x - x0) / span * inner,
            SIZE - MARGIN - (y - y0) / span * inner,
        )
    };
    let norm = values.map(|vals| {
        let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        move |x: f64| if hi > lo { (x - lo) / (hi - lo) } else { 0.5 }
    });

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, "<title>{}</title>", s.name());
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, cell) in s.cells().iter().enumerate() {
        let points: Vec<String> = cell
            .iter()
            .map(|&v| {
                let (x, y) = at(v);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let fill = match (values, &norm) {
            (Some(vals), Some(f)) => colour(f(
                cell.iter().map(|&v| vals[v]).sum::<f64>() / cell.len() as f64
            )),
            _ => "#eeeeee".to_string(),
        };
        let _ = writeln!(
            out,
            r##"<polygon points="{}" fill="{fill}" stroke="#333333" stroke-width="1"><title>cell {i}</title></polygon>"##,
            points.join(" ")
        );
    }
    for v in 0..s.vertex_count() {
        let (x, y) = at(v);
        let fill = match (values, &norm) {
            (Some(vals), Some(f)) => colour(f(vals[v])),
            _ => "#999999".to_string(),
        };
        let (radius, stroke) = if s.is_boundary(v) {
            (7.0, 2.5)
        } else {
            (4.0, 1.0)
        };
        let label = match values {
            Some(vals) => format!("vertex {v}: {}", vals[v]),
            None => format!("vertex {v}"),
        };
        let _ = writeln!(
            out,
            r##"<circle cx="{x:.2}" cy="{y:.2}" r="{radius}" fill="{fill}" stroke="#000000" stroke-width="{stroke}"><title>{label}</title></circle>"##
        );
    }
    out.push_str("</svg>\n");
    out
}
