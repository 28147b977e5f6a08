//! SVG rendering of the developed cusp tessellation.
//!
//! The plane is rotated and scaled so the horizontal period maps to 1000
//! units along the x axis; hinge layers are shaded grey and the period
//! parallelogram is outlined. Output is deterministic.

use monotri_core::geometry::CuspDevelopment;
use monotri_core::triangulation::TriKind;
use num_complex::Complex;
use std::fmt::Write;

const HINGE_FILL: &str = "#c9c9c9";
const PLAIN_FILL: &str = "#f5f1e8";
const STROKE: &str = "#333333";

/// Renders `periods` horizontal repetitions of the fundamental domain.
pub fn emit_svg(dev: &CuspDevelopment<f64>, periods: u32) -> Vec<u8> {
    let tri = dev.triangulation();
    let periods = periods.max(1) as i64;
    // rotate and scale so the horizontal period maps to 1000 units along
    // the x axis; flip y for svg coordinates
    let tau = dev.horizontal.translation;
    let to_svg = |z: Complex<f64>| {
        let w = z / tau * 1000.0;
        (w.re, -w.im)
    };

    let row_range = match tri.kind {
        TriKind::TwoBridge => 1..=(tri.num_layers() as i64),
        _ => 0..=(tri.num_letters() as i64 - 1),
    };

    // one fundamental domain, repeated by the period translation
    let mut polys: Vec<(i64, i64, bool, [(f64, f64); 3], bool)> = Vec::new();
    for (row, copy, up, corners) in dev.developed_triangles() {
        if !row_range.contains(&row) || copy != 0 {
            continue;
        }
        let layer_index = match tri.kind {
            TriKind::TwoBridge => row as usize,
            _ => row as usize % tri.num_letters(),
        };
        let hinge = tri.layer(layer_index).hinge;
        for k in 0..periods {
            let shift = tau * k as f64;
            let pts = [
                to_svg(corners[0] + shift),
                to_svg(corners[1] + shift),
                to_svg(corners[2] + shift),
            ];
            polys.push((row, k, up, pts, hinge));
        }
    }
    polys.sort_by(|a, b| (a.0, a.1, a.2).partial_cmp(&(b.0, b.1, b.2)).unwrap());

    // bounding box over triangles plus the domain outline
    let outline = {
        let o = Complex::new(0.0, 0.0);
        let h = dev.horizontal.translation;
        let v = dev.vertical.translation;
        [to_svg(o), to_svg(h), to_svg(h + v), to_svg(v)]
    };
    let mut min = (f64::INFINITY, f64::INFINITY);
    let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(_, _, _, pts, _) in &polys {
        for &(x, y) in &pts {
            min = (min.0.min(x), min.1.min(y));
            max = (max.0.max(x), max.1.max(y));
        }
    }
    for &(x, y) in &outline {
        min = (min.0.min(x), min.1.min(y));
        max = (max.0.max(x), max.1.max(y));
    }
    let pad = 20.0;
    let (x0, y0) = (min.0 - pad, min.1 - pad);
    let (w, h) = (max.0 - min.0 + 2.0 * pad, max.1 - min.1 + 2.0 * pad);

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{x0:.3} {y0:.3} {w:.3} {h:.3}">"#
    )
    .unwrap();
    writeln!(out, r#"<!-- cusp tessellation of {} -->"#, tri.word_display()).unwrap();
    for (row, copy, up, pts, hinge) in &polys {
        let fill = if *hinge { HINGE_FILL } else { PLAIN_FILL };
        writeln!(
            out,
            r#"<polygon points="{:.3},{:.3} {:.3},{:.3} {:.3},{:.3}" fill="{}" stroke="{}" stroke-width="2" data-layer="{}" data-copy="{}" data-apex="{}"/>"#,
            pts[0].0,
            pts[0].1,
            pts[1].0,
            pts[1].1,
            pts[2].0,
            pts[2].1,
            fill,
            STROKE,
            row,
            copy,
            if *up { "up" } else { "down" },
        )
        .unwrap();
    }
    writeln!(
        out,
        r##"<polygon points="{:.3},{:.3} {:.3},{:.3} {:.3},{:.3} {:.3},{:.3}" fill="none" stroke="#b03030" stroke-width="3" stroke-dasharray="12,8"/>"##,
        outline[0].0,
        outline[0].1,
        outline[1].0,
        outline[1].1,
        outline[2].0,
        outline[2].1,
        outline[3].0,
        outline[3].1,
    )
    .unwrap();
    writeln!(out, "</svg>").unwrap();
    out.into_bytes()
}
