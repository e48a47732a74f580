use std::fmt::Write as _;
use std::path::Path;

use super::{dual_points, real_slice_lines, ChartLine, Viewport};
use crate::kulkarni::TangentLineFamily;
use crate::projective::ProjPoint1;
use crate::{Error, Result};

/// A primitive in chart coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SvgShape {
    /// `a·x + b·y + c = 0`.
    Line {
        a: f64,
        b: f64,
        c: f64,
    },
    Dot {
        x: f64,
        y: f64,
    },
}

pub fn p1_shapes(samples: &[ProjPoint1]) -> Vec<SvgShape> {
    samples
        .iter()
        .filter_map(|s| s.chart())
        .map(|z| SvgShape::Dot { x: z.re, y: z.im })
        .collect()
}

/// Real-slice lines (see [`super::render_line_family_real_slice`]) and the skip count.
pub fn real_slice_shapes(fam: &TangentLineFamily) -> (Vec<SvgShape>, usize) {
    let (lines, skipped) = real_slice_lines(fam);
    let shapes = lines
        .into_iter()
        .filter(|[a, b, _]| a.hypot(*b) > 0.0)
        .map(|[a, b, c]| SvgShape::Line { a, b, c })
        .collect();
    (shapes, skipped)
}

pub fn dual_shapes(fam: &TangentLineFamily) -> Vec<SvgShape> {
    dual_points(fam)
        .0
        .into_iter()
        .map(|(x, y)| SvgShape::Dot { x, y })
        .collect()
}

fn path_data(shape: &SvgShape, vp: &Viewport) -> Result<String> {
    Ok(match *shape {
        SvgShape::Dot { x, y } => {
            let (cx, cy) = vp.to_pixel(x, y);
            let r = 1.0;
            format!(
                "M{:.3} {:.3}m-{r} 0a{r} {r} 0 1 0 {d} 0a{r} {r} 0 1 0 -{d} 0",
                cx,
                cy,
                d = 2.0 * r
            )
        }
        SvgShape::Line { a, b, c } => {
            let l = ChartLine::new(a, b, c)
                .ok_or_else(|| Error::InvalidParameter("line at infinity has no chart picture".into()))?;
            // Foot of the perpendicular from the viewport centre, then far out both ways.
            let (x0, y0) = (vp.center.re, vp.center.im);
            let s = l.a * x0 + l.b * y0 + l.c;
            let (fx, fy) = (x0 - s * l.a, y0 - s * l.b);
            let reach = 2.0 * vp.half_width.hypot(vp.half_height()) + s.abs();
            let (dx, dy) = (-l.b * reach, l.a * reach);
            let (p, q) = (vp.to_pixel(fx - dx, fy - dy), vp.to_pixel(fx + dx, fy + dy));
            format!("M{:.3} {:.3}L{:.3} {:.3}", p.0, p.1, q.0, q.1)
        }
    })
}

/// One `<path>` per shape, in the pixel frame of the viewport. Returns the
/// number of paths written.
pub fn write_svg(shapes: &[SvgShape], vp: &Viewport, path: impl AsRef<Path>) -> Result<usize> {
    let (w, h) = vp.pixels;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, r#"<g fill="none" stroke="black" stroke-width="1">"#);
    for s in shapes {
        let fill = if matches!(s, SvgShape::Dot { .. }) {
            r#" fill="black""#
        } else {
            ""
        };
        let _ = writeln!(out, r#"<path d="{}"{fill}/>"#, path_data(s, vp)?);
    }
    out.push_str("</g>\n</svg>\n");
    std::fs::write(path, out)?;
    Ok(shapes.len())
}
