use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use veronese_core::kulkarni::{kulkarni_limit_lines, TangentLineFamily};
use veronese_core::moebius::GroupSpec;
use veronese_core::projective::{ProjLine, ProjPoint1};
use veronese_core::render::{
    dual_shapes, p1_shapes, real_slice_shapes, render_dual_locus, render_line_family_real_slice, render_p1_limit_set,
    write_image, write_svg, RasterImage, Viewport,
};
use veronese_core::{c, Complex, Error};

use crate::error::core_at;
use crate::CliError;

pub struct LimitsetOptions {
    pub budget: usize,
    pub out: PathBuf,
    /// Pixel width (and height) of the pictures.
    pub pixels: usize,
    pub svg: bool,
}

pub struct LimitsetReport {
    pub sources: usize,
    pub skipped: usize,
    pub files: Vec<PathBuf>,
    pub warnings: Vec<String>,
}

fn num(x: f64) -> String {
    format!("{:.12e}", if x == 0.0 { 0.0 } else { x })
}

fn cnum(z: Complex) -> String {
    format!("{} {}", num(z.re), num(z.im))
}

/// Chart order, ∞ last.
fn canonical(mut sources: Vec<ProjPoint1>) -> Vec<ProjPoint1> {
    sources.sort_by(|a, b| match (a.chart(), b.chart()) {
        (Some(x), Some(y)) => x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    });
    sources
}

/// Coefficients scaled so that the first entry of largest modulus is real positive.
fn canonical_line(l: &ProjLine) -> [Complex; 3] {
    let v = l.coefficients();
    let lead = v.iter().copied().fold(
        c(0., 0.),
        |m, x| if x.norm() > m.norm() * (1.0 + 1e-12) { x } else { m },
    );
    let s = lead.conj() / lead.norm();
    [v[0] * s, v[1] * s, v[2] * s]
}

/// Plain-text list of the sources and their tangent lines.
pub fn family_text(fam: &TangentLineFamily) -> String {
    let sources = canonical(fam.sources.clone());
    let fam = TangentLineFamily::from_sources(sources, fam.budget);
    let mut out = String::new();
    let _ = writeln!(out, "# budget {}", fam.budget);
    let _ = writeln!(out, "# sources {}", fam.len());
    for s in &fam.sources {
        let _ = match s.chart() {
            Some(z) => writeln!(out, "source {}", cnum(z)),
            None => writeln!(out, "source inf"),
        };
    }
    let _ = writeln!(out, "# lines {}", fam.len());
    for l in &fam.lines {
        let [a, b, cc] = canonical_line(l);
        let _ = writeln!(out, "line {} {} {}", cnum(a), cnum(b), cnum(cc));
    }
    out
}

fn save(img: &RasterImage, path: &Path) -> Result<(), CliError> {
    write_image(img, path).map_err(core_at(path))
}

pub fn limitset(g: &GroupSpec, opts: &LimitsetOptions) -> Result<LimitsetReport, CliError> {
    let fam = kulkarni_limit_lines(g, opts.budget)?;
    fs::create_dir_all(&opts.out).map_err(|e| CliError::io(&opts.out, e))?;
    let px = (opts.pixels, opts.pixels);
    let wide = Viewport::new(c(0., 0.), 4.0, px)?;
    let slice = Viewport::new(c(0., 0.), 2.5, px)?;
    let mut files = Vec::new();
    let mut warnings = Vec::new();

    let text = opts.out.join("limitset.txt");
    fs::write(&text, family_text(&fam)).map_err(|e| CliError::io(&text, e))?;
    files.push(text);

    let p1 = opts.out.join("p1.ppm");
    save(&render_p1_limit_set(&fam.sources, &wide)?, &p1)?;
    files.push(p1);

    let real = opts.out.join("real_slice.ppm");
    let skipped = match render_line_family_real_slice(&fam, &slice) {
        Ok(r) => {
            save(&r.image, &real)?;
            r.skipped
        }
        Err(Error::AllLinesSkipped) => {
            warnings.push("no line of the family is real; real slice left blank".to_string());
            save(&RasterImage::blank(px.0, px.1), &real)?;
            fam.len()
        }
        Err(e) => return Err(e.into()),
    };
    files.push(real);

    let dual = opts.out.join("dual.ppm");
    save(&render_dual_locus(&fam, &wide)?, &dual)?;
    files.push(dual);

    if opts.svg {
        for (name, shapes, vp) in [
            ("p1.svg", p1_shapes(&fam.sources), &wide),
            ("real_slice.svg", real_slice_shapes(&fam).0, &slice),
            ("dual.svg", dual_shapes(&fam), &wide),
        ] {
            let path = opts.out.join(name);
            write_svg(&shapes, vp, &path).map_err(core_at(&path))?;
            files.push(path);
        }
    }

    Ok(LimitsetReport {
        sources: fam.len(),
        skipped,
        files,
        warnings,
    })
}
