use std::fmt::Write as _;

use veronese_core::hermitian::{boundary_quartic, search_invariant_hermitian_form, veronese_ball_census, CensusGrid};
use veronese_core::moebius::{classify, search_invariant_circle, Certificate, GroupSpec};
use veronese_core::projective::ProjMap3;
use veronese_core::tol::SearchOptions;
use veronese_core::veronese::{iota, lift_type, lifted_spectrum};
use veronese_core::{CMatrix3, Complex};

use crate::CliError;

pub struct AnalyzeOptions {
    pub tol: f64,
    /// Census grid resolution; 0 skips the census.
    pub grid: usize,
}

pub(crate) fn fmt_c(z: Complex) -> String {
    // Avoid printing negative zeros.
    let r = |x: f64| if x == 0.0 { 0.0 } else { x };
    format!("{:.6}{:+.6}i", r(z.re), r(z.im))
}

fn fmt_m3(m: &CMatrix3) -> String {
    let rows: Vec<String> = (0..3)
        .map(|i| format!("[{}]", (0..3).map(|j| fmt_c(m[(i, j)])).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn fmt_lift(g: &ProjMap3) -> String {
    fmt_m3(&g.normalized())
}

pub fn analyze(g: &GroupSpec, opts: &AnalyzeOptions) -> Result<String, CliError> {
    let mut out = String::new();
    let search = SearchOptions {
        residual: opts.tol,
        ..Default::default()
    };
    let _ = writeln!(out, "generators: {} (word budget {})", g.rank(), g.word_budget);
    let cert = match &g.certificate {
        Certificate::None => "none".to_string(),
        Certificate::PingPong(pairs) => format!("ping-pong, {} disk pairs, verified", pairs.len()),
        Certificate::Relator(w) => format!("relator {}, verified", g.alphabet().display(w)),
    };
    let _ = writeln!(out, "certificate: {cert}");
    for (label, m) in g.labels.iter().zip(&g.generators) {
        let spec = lifted_spectrum(m);
        let _ = writeln!(
            out,
            "  {label}: {}, trace {}, lift {}, |spectrum| = {:.6e} {:.6e} {:.6e}",
            classify(m),
            fmt_c(m.trace()),
            lift_type(m),
            spec[0].norm(),
            spec[1].norm(),
            spec[2].norm()
        );
    }

    let circle = search_invariant_circle(&g.generators, &search)?;
    match &circle.circle {
        Some(cs) => {
            let shape = match cs.center_radius() {
                Some((c, r)) => format!("|z - ({})| = {r:.6}", fmt_c(c)),
                None => "a line through ∞".to_string(),
            };
            let _ = writeln!(out, "invariant circle: YES (residual {:.3e}): {shape}", circle.residual);
        }
        None => {
            let _ = writeln!(out, "invariant circle: NO (residual floor {:.3e})", circle.floor);
        }
    }

    let lifts: Vec<ProjMap3> = g.generators.iter().map(iota).collect();
    let _ = writeln!(out, "iota lift:");
    for (label, l) in g.labels.iter().zip(&lifts) {
        let _ = writeln!(out, "  {label}: {}", fmt_lift(l));
    }

    let form = search_invariant_hermitian_form(&lifts, &search)?;
    match &form.form {
        Some(h) => {
            let _ = writeln!(
                out,
                "invariant Hermitian form: YES {} (residual {:.3e})",
                h.signature(),
                form.residual
            );
            let _ = writeln!(out, "  form: {}", fmt_m3(h.matrix()));
            if opts.grid > 0 {
                let grid = CensusGrid {
                    resolution: opts.grid,
                    ..Default::default()
                };
                let census = veronese_ball_census(h, grid);
                let _ = writeln!(
                    out,
                    "census ({0}x{0} grid on [-{1}, {1}]², plus ∞): F in [{2:.6e}, {3:.6e}], negative {4}, zero {5}, positive {6}",
                    grid.resolution + 1,
                    grid.radius,
                    census.min,
                    census.max,
                    census.negative,
                    census.zero,
                    census.positive
                );
                if let Ok(q) = boundary_quartic(h) {
                    let _ = writeln!(
                        out,
                        "  boundary quartic: {:.6} + {:.6}x + {:.6}y + {:.6}x² + {:.6}xy + {:.6}y² + ρ²({:.6}x + {:.6}y + {:.6}) + {:.6}ρ⁴",
                        q.constant, q.x, q.y, q.x2, q.xy, q.y2, q.r2x, q.r2y, q.r2, q.r4
                    );
                }
            }
        }
        None => {
            let _ = writeln!(out, "invariant Hermitian form: NO (residual floor {:.3e})", form.floor);
        }
    }
    Ok(out)
}
