//! Front end for `veronese-core`: reads a group spec file and runs analysis,
//! limit-set and deformation jobs. See [`spec`] for the file format.

pub mod analyze;
pub mod deform;
pub mod error;
pub mod limitset;
pub mod spec;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use veronese_core::hermitian::{boundary_quartic_unchecked, invariant_hermitian_form};
use veronese_core::kulkarni::kulkarni_limit_lines;
use veronese_core::render::{
    dual_shapes, p1_shapes, real_slice_shapes, render_dual_locus, render_line_family_real_slice, render_p1_limit_set,
    render_quartic_zero_set, write_image, write_svg, SvgShape, Viewport,
};
use veronese_core::veronese::iota;
use veronese_core::{c, tol};

use error::core_at;
pub use error::CliError;
use spec::{GroupSpecFile, Kind};

#[derive(Debug, Parser)]
#[command(
    name = "veronese",
    version,
    about = "Möbius groups, their Veronese lifts and the pictures they make"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify generators, look for invariant circles and Hermitian forms.
    Analyze {
        spec: PathBuf,
        /// Accepted invariance residual [default: the spec's `tol`, else 1e-8].
        #[arg(long)]
        tol: Option<f64>,
        /// Census grid resolution (0 skips the census).
        #[arg(long, default_value_t = 400)]
        grid: usize,
    },
    /// Sample the limit set and write its pictures and a text listing.
    Limitset {
        spec: PathBuf,
        /// Word budget [default: the spec's `budget`, else the group's].
        #[arg(long)]
        budget: Option<usize>,
        /// Output directory.
        #[arg(long, default_value = "limitset")]
        out: PathBuf,
        /// Picture size in pixels.
        #[arg(long, default_value_t = 512)]
        grid: usize,
        /// Also write SVG versions.
        #[arg(long)]
        svg: bool,
    },
    /// Tabulate verdicts along the deformation of a Schottky group.
    Deform {
        spec: PathBuf,
        /// Comma-separated deformation parameters in [0, 1].
        #[arg(long, default_value = "0.2,0.1,0.05,0.025,0")]
        t_list: String,
        /// Seed for the deformation direction [default: the spec's].
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        tol: Option<f64>,
        /// CSV output file [default: stdout].
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a single picture; `.svg` output paths get SVG, anything else P6.
    Render {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Picture::Slice)]
        what: Picture,
        #[arg(long)]
        budget: Option<usize>,
        /// Picture size in pixels.
        #[arg(long, default_value_t = 512)]
        grid: usize,
        /// Half-width of the viewport in chart units.
        #[arg(long)]
        half_width: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Picture {
    /// Limit set in the chart of P¹.
    P1,
    /// Real tangent lines in the disk model.
    Slice,
    /// Tangent lines as points of the dual plane.
    Dual,
    /// Zero set of the boundary quartic of the invariant form.
    Quartic,
}

pub fn load_spec(path: &Path) -> Result<GroupSpecFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    GroupSpecFile::parse(&text)
}

/// Runs one command, writing reports to `out` and warnings to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let stdout = |e: std::io::Error| CliError::io("<stdout>", e);
    match cli.command {
        Command::Analyze { spec, tol: t, grid } => {
            let file = load_spec(&spec)?;
            let g = file.build()?;
            let opts = analyze::AnalyzeOptions {
                tol: t.or(file.tol).unwrap_or(tol::FORM_RESIDUAL),
                grid,
            };
            write!(out, "{}", analyze::analyze(&g, &opts)?).map_err(stdout)?;
        }
        Command::Limitset {
            spec,
            budget,
            out: dir,
            grid,
            svg,
        } => {
            let g = load_spec(&spec)?.build()?;
            let opts = limitset::LimitsetOptions {
                budget: budget.unwrap_or(g.word_budget),
                out: dir,
                pixels: grid,
                svg,
            };
            let r = limitset::limitset(&g, &opts)?;
            for w in &r.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            writeln!(out, "sources: {}", r.sources).map_err(stdout)?;
            writeln!(out, "non-real lines: {}", r.skipped).map_err(stdout)?;
            for f in &r.files {
                writeln!(out, "wrote {}", f.display()).map_err(stdout)?;
            }
        }
        Command::Deform {
            spec,
            t_list,
            seed,
            tol: t,
            out: path,
        } => {
            let mut file = load_spec(&spec)?;
            if !matches!(file.kind, Kind::Schottky | Kind::Quasifuchsian) {
                return Err(CliError::Spec("deform needs a schottky or quasifuchsian spec".into()));
            }
            if seed.is_some() {
                file.seed = seed;
                file.displacements = None;
            }
            let base = file.base_group()?;
            let dir = file.deformation(base.rank())?;
            let ts = deform::parse_t_list(&t_list).map_err(CliError::Spec)?;
            let rows = deform::deform(&base, &dir, &ts, t.or(file.tol).unwrap_or(tol::FORM_RESIDUAL))?;
            if !deform::monotone(&rows) {
                let _ = writeln!(err, "warning: generator distances do not shrink monotonically with t");
            }
            let csv = deform::to_csv(&rows);
            match path {
                Some(p) => std::fs::write(&p, csv).map_err(|e| CliError::io(&p, e))?,
                None => write!(out, "{csv}").map_err(stdout)?,
            }
        }
        Command::Render {
            spec,
            what,
            budget,
            grid,
            half_width,
            out: path,
        } => {
            let g = load_spec(&spec)?.build()?;
            let default_half = if what == Picture::Slice { 2.5 } else { 4.0 };
            let vp = Viewport::new(c(0., 0.), half_width.unwrap_or(default_half), (grid, grid))?;
            let svg = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("svg"));
            let budget = budget.unwrap_or(g.word_budget);
            if what == Picture::Quartic {
                if svg {
                    return Err(CliError::Spec("quartic pictures are raster only".into()));
                }
                let lifts: Vec<_> = g.generators.iter().map(iota).collect();
                let h = invariant_hermitian_form(&lifts)?
                    .ok_or(CliError::Numerical(veronese_core::Error::FormNotInvariant(f64::NAN)))?;
                let img = render_quartic_zero_set(&boundary_quartic_unchecked(&h), &vp);
                return write_image(&img, &path).map_err(core_at(&path));
            }
            let fam = kulkarni_limit_lines(&g, budget)?;
            if svg {
                let shapes: Vec<SvgShape> = match what {
                    Picture::P1 => p1_shapes(&fam.sources),
                    Picture::Slice => real_slice_shapes(&fam).0,
                    Picture::Dual => dual_shapes(&fam),
                    Picture::Quartic => unreachable!(),
                };
                write_svg(&shapes, &vp, &path).map_err(core_at(&path))?;
            } else {
                let img = match what {
                    Picture::P1 => render_p1_limit_set(&fam.sources, &vp)?,
                    Picture::Slice => render_line_family_real_slice(&fam, &vp)?.image,
                    Picture::Dual => render_dual_locus(&fam, &vp)?,
                    Picture::Quartic => unreachable!(),
                };
                write_image(&img, &path).map_err(core_at(&path))?;
            }
            writeln!(out, "wrote {}", path.display()).map_err(stdout)?;
        }
    }
    Ok(())
}
