//! Raster pictures of limit sets, tangent-line families and quartic zero sets.
//!
//! Every primitive paints coverage `max(0, 1 − d/px)` where `d` is the chart
//! distance from the pixel centre and `px` the pixel size; overlapping
//! primitives combine by `max`, so the fill order (and the row partition used
//! for parallelism) never changes a byte.

mod svg;

pub use svg::{dual_shapes, p1_shapes, real_slice_shapes, write_svg, SvgShape};

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::hermitian::QuarticCurve;
use crate::kulkarni::TangentLineFamily;
use crate::projective::{ProjLine, ProjPoint1};
use crate::veronese::real_form_conjugator;
use crate::{Complex, Error, Result};

const INK: [u8; 3] = [0, 0, 0];
const MARKER: [u8; 3] = [220, 30, 30];
const BACKGROUND: [u8; 3] = [255, 255, 255];
/// Tolerance on imaginary parts when reading a line as real.
const REAL_TOL: f64 = 1e-8;

/// A window onto a chart: `half_width` is the horizontal half-extent in chart
/// units; the vertical extent follows from the pixel aspect.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub center: Complex,
    pub half_width: f64,
    pub pixels: (usize, usize),
}

impl Viewport {
    pub fn new(center: Complex, half_width: f64, pixels: (usize, usize)) -> Result<Self> {
        if pixels.0 == 0 || pixels.1 == 0 {
            return Err(Error::InvalidParameter(
                "viewport needs positive pixel dimensions".into(),
            ));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidParameter(format!("viewport half-width {half_width}")));
        }
        Ok(Self {
            center,
            half_width,
            pixels,
        })
    }

    /// Chart size of one (square) pixel.
    pub fn pixel_size(&self) -> f64 {
        2.0 * self.half_width / self.pixels.0 as f64
    }

    pub fn half_height(&self) -> f64 {
        self.half_width * self.pixels.1 as f64 / self.pixels.0 as f64
    }

    /// Chart coordinates of the centre of pixel `(col, row)`; rows run downward.
    pub fn pixel_center(&self, col: usize, row: usize) -> (f64, f64) {
        let px = self.pixel_size();
        (
            self.center.re - self.half_width + (col as f64 + 0.5) * px,
            self.center.im + self.half_height() - (row as f64 + 0.5) * px,
        )
    }

    /// Fractional pixel position of a chart point (x grows with columns, y with rows).
    pub fn to_pixel(&self, x: f64, y: f64) -> (f64, f64) {
        let px = self.pixel_size();
        (
            (x - self.center.re + self.half_width) / px,
            (self.center.im + self.half_height() - y) / px,
        )
    }
}

/// 8-bit RGB image, row-major, three bytes per pixel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RasterImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl RasterImage {
    pub fn blank(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            pixels: BACKGROUND.repeat(width * height),
        }
    }

    pub fn pixel(&self, col: usize, row: usize) -> [u8; 3] {
        let k = 3 * (row * self.width + col);
        [self.pixels[k], self.pixels[k + 1], self.pixels[k + 2]]
    }

    fn set(&mut self, col: usize, row: usize, rgb: [u8; 3]) {
        let k = 3 * (row * self.width + col);
        self.pixels[k..k + 3].copy_from_slice(&rgb);
    }

    /// Whether any ink (a non-background, non-marker pixel) was painted at `(col, row)`.
    pub fn is_inked(&self, col: usize, row: usize) -> bool {
        let p = self.pixel(col, row);
        p != BACKGROUND && p != MARKER
    }

    pub fn is_marker(&self, col: usize, row: usize) -> bool {
        self.pixel(col, row) == MARKER
    }

    /// Binary portable pixmap.
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }

    fn paint_border(&mut self) {
        let (w, h) = (self.width, self.height);
        for col in 0..w {
            self.set(col, 0, MARKER);
            self.set(col, h - 1, MARKER);
        }
        for row in 0..h {
            self.set(0, row, MARKER);
            self.set(w - 1, row, MARKER);
        }
    }
}

pub fn write_image(img: &RasterImage, path: impl AsRef<Path>) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    f.write_all(&img.to_ppm())?;
    f.flush()?;
    Ok(())
}

/// A line `a·x + b·y + c = 0` in chart coordinates, with `(a, b) ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct ChartLine {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl ChartLine {
    fn new(a: f64, b: f64, c: f64) -> Option<Self> {
        let n = a.hypot(b);
        (n > 0.0 && n.is_finite()).then(|| Self {
            a: a / n,
            b: b / n,
            c: c / n,
        })
    }
}

/// Real coefficients of a line whose ratios are real, or `None`.
pub(crate) fn real_coefficients(l: &ProjLine) -> Option<[f64; 3]> {
    let v = l.coefficients();
    let lead = v.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm()))?;
    let phase = lead.conj() / lead.norm();
    let w = v.map(|x| x * phase);
    w.iter()
        .all(|x| x.im.abs() <= REAL_TOL)
        .then(|| [w[0].re, w[1].re, w[2].re])
}

/// Coverage of each pixel by dots and lines, filled row by row in parallel.
fn rasterize(vp: &Viewport, dots: &[(f64, f64)], lines: &[ChartLine]) -> Vec<f32> {
    let (w, h) = vp.pixels;
    let px = vp.pixel_size();
    // Dots grouped by the rows they can touch.
    let mut by_row: Vec<Vec<(f64, f64)>> = vec![Vec::new(); h];
    for &(x, y) in dots {
        let (_, r) = vp.to_pixel(x, y);
        let lo = (r - 1.5).floor().max(0.0);
        let hi = (r + 1.5).ceil().min(h as f64 - 1.0);
        if hi < lo || !r.is_finite() {
            continue;
        }
        for bucket in &mut by_row[lo as usize..=hi as usize] {
            bucket.push((x, y));
        }
    }
    let mut cov = vec![0f32; w * h];
    cov.par_chunks_mut(w).enumerate().for_each(|(row, out)| {
        let (x0, y) = vp.pixel_center(0, row);
        let mut paint = |col: usize, d: f64| {
            let v = (1.0 - d / px).max(0.0) as f32;
            if v > out[col] {
                out[col] = v;
            }
        };
        for &(dx, dy) in &by_row[row] {
            let (c, _) = vp.to_pixel(dx, dy);
            let lo = (c - 1.5).floor().max(0.0) as usize;
            let hi = (c + 1.5).ceil().min(w as f64 - 1.0);
            if hi < 0.0 {
                continue;
            }
            for col in lo..=hi as usize {
                let x = x0 + col as f64 * px;
                paint(col, (x - dx).hypot(y - dy));
            }
        }
        for l in lines {
            // |a x + b y + c| < px on this row.
            let r = l.b * y + l.c;
            let (lo, hi) = if l.a.abs() < 1e-12 {
                if r.abs() >= px {
                    continue;
                }
                (0, w - 1)
            } else {
                let xa = (-r - px) / l.a;
                let xb = (-r + px) / l.a;
                let (xa, xb) = (xa.min(xb), xa.max(xb));
                let ca = ((xa - x0) / px).floor();
                let cb = ((xb - x0) / px).ceil();
                if cb < 0.0 || ca > (w - 1) as f64 {
                    continue;
                }
                (ca.max(0.0) as usize, cb.min((w - 1) as f64) as usize)
            };
            for col in lo..=hi {
                let x = x0 + col as f64 * px;
                paint(col, (l.a * x + r).abs());
            }
        }
    });
    cov
}

fn compose(vp: &Viewport, cov: &[f32]) -> RasterImage {
    let mut img = RasterImage::blank(vp.pixels.0, vp.pixels.1);
    for (k, &v) in cov.iter().enumerate() {
        if v > 0.0 {
            let shade = |bg: u8, ink: u8| (bg as f32 + (ink as f32 - bg as f32) * v).round() as u8;
            let rgb = [0, 1, 2].map(|i| shade(BACKGROUND[i], INK[i]));
            img.pixels[3 * k..3 * k + 3].copy_from_slice(&rgb);
        }
    }
    img
}

/// Dots at the chart values of the samples; ∞ is marked by a red frame.
pub fn render_p1_limit_set(samples: &[ProjPoint1], vp: &Viewport) -> Result<RasterImage> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut dots = Vec::with_capacity(samples.len());
    let mut infinity = false;
    for s in samples {
        match s.chart() {
            Some(z) => dots.push((z.re, z.im)),
            None => infinity = true,
        }
    }
    let mut img = compose(vp, &rasterize(vp, &dots, &[]));
    if infinity {
        img.paint_border();
    }
    Ok(img)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealSliceRender {
    pub image: RasterImage,
    /// Lines with non-real coefficient ratios, left out of the picture.
    pub skipped: usize,
}

/// Real lines of the family, moved by the conjugator `γ₀` that takes the real
/// Veronese curve to the unit circle, drawn in the chart `Z = 1`.
pub fn render_line_family_real_slice(fam: &TangentLineFamily, vp: &Viewport) -> Result<RealSliceRender> {
    if fam.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let (lines, skipped) = real_slice_lines(fam);
    if lines.is_empty() {
        return Err(Error::AllLinesSkipped);
    }
    let chart: Vec<ChartLine> = lines.iter().filter_map(|&[a, b, c]| ChartLine::new(a, b, c)).collect();
    Ok(RealSliceRender {
        image: compose(vp, &rasterize(vp, &[], &chart)),
        skipped,
    })
}

/// `γ₀`-images of the real lines of the family, and the number of non-real ones.
pub(crate) fn real_slice_lines(fam: &TangentLineFamily) -> (Vec<[f64; 3]>, usize) {
    let g0 = real_form_conjugator();
    let mut out = Vec::with_capacity(fam.len());
    let mut skipped = 0;
    for l in &fam.lines {
        match real_coefficients(&g0.apply_line(l)) {
            Some(c) => out.push(c),
            None => skipped += 1,
        }
    }
    (out, skipped)
}

/// Each line `(c₀, c₁, c₂)` as the point `(c₀/c₂, c₁/c₂)` of the dual chart,
/// real parts only; lines with `c₂ = 0` mark the frame.
pub fn render_dual_locus(fam: &TangentLineFamily, vp: &Viewport) -> Result<RasterImage> {
    if fam.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let (dots, infinity) = dual_points(fam);
    let mut img = compose(vp, &rasterize(vp, &dots, &[]));
    if infinity {
        img.paint_border();
    }
    Ok(img)
}

pub(crate) fn dual_points(fam: &TangentLineFamily) -> (Vec<(f64, f64)>, bool) {
    let mut dots = Vec::with_capacity(fam.len());
    let mut infinity = false;
    for l in &fam.lines {
        let v = l.coefficients();
        if v[2].norm() <= crate::tol::DEFAULT * v.norm() {
            infinity = true;
        } else {
            dots.push(((v[0] / v[2]).re, (v[1] / v[2]).re));
        }
    }
    (dots, infinity)
}

/// Zero set of the quartic, drawn with the first-order distance `|F| / |∇F|`.
pub fn render_quartic_zero_set(q: &QuarticCurve, vp: &Viewport) -> RasterImage {
    let (w, h) = vp.pixels;
    let px = vp.pixel_size();
    let mut cov = vec![0f32; w * h];
    cov.par_chunks_mut(w).enumerate().for_each(|(row, out)| {
        for (col, o) in out.iter_mut().enumerate() {
            let (x, y) = vp.pixel_center(col, row);
            let (gx, gy) = q.gradient(x, y);
            let g = gx.hypot(gy);
            let f = q.eval(x, y);
            let d = if g > 0.0 {
                f.abs() / g
            } else if f == 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
            *o = (1.0 - d / px).max(0.0) as f32;
        }
    });
    compose(vp, &cov)
}
