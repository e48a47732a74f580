use serde::Serialize;
use veronese_core::hermitian::search_invariant_hermitian_form;
use veronese_core::moebius::{quasifuchsian_family, search_invariant_circle, Deformation, GroupSpec};
use veronese_core::tol::SearchOptions;
use veronese_core::veronese::iota;
use veronese_core::Error;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeformRow {
    pub t: f64,
    /// `ok`, or why the parameter gives no Schottky group.
    pub status: String,
    pub certificate: bool,
    pub circle: bool,
    pub circle_residual: f64,
    pub hermitian: bool,
    pub hermitian_residual: f64,
    /// Largest generator distance to the undeformed group.
    pub distance: f64,
}

impl DeformRow {
    fn failed(t: f64, status: String) -> Self {
        Self {
            t,
            status,
            certificate: false,
            circle: false,
            circle_residual: f64::NAN,
            hermitian: false,
            hermitian_residual: f64::NAN,
            distance: f64::NAN,
        }
    }
}

/// One row per parameter. Collisions and other per-row failures are
/// recorded in the row and the table continues.
pub fn deform(base: &GroupSpec, dir: &Deformation, ts: &[f64], tol: f64) -> Result<Vec<DeformRow>, CliError> {
    let search = SearchOptions {
        residual: tol,
        ..Default::default()
    };
    let mut rows = Vec::with_capacity(ts.len());
    for &t in ts {
        let g = match quasifuchsian_family(base, t, dir) {
            Ok(g) => g,
            Err(Error::LeavesSchottkyLocus { .. }) => {
                rows.push(DeformRow::failed(t, "leaves-schottky-locus".into()));
                continue;
            }
            Err(e @ Error::InvalidParameter(_)) => {
                rows.push(DeformRow::failed(t, format!("invalid: {e}")));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let circle = search_invariant_circle(&g.generators, &search)?;
        let lifts: Vec<_> = g.generators.iter().map(iota).collect();
        let form = search_invariant_hermitian_form(&lifts, &search)?;
        let distance = g
            .generators
            .iter()
            .zip(&base.generators)
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max);
        rows.push(DeformRow {
            t,
            status: "ok".into(),
            certificate: g.verify_certificate().is_ok(),
            circle: circle.circle.is_some(),
            circle_residual: if circle.circle.is_some() {
                circle.residual
            } else {
                circle.floor
            },
            hermitian: form.form.is_some(),
            hermitian_residual: if form.form.is_some() { form.residual } else { form.floor },
            distance,
        });
    }
    Ok(rows)
}

/// Whether the distances of successful rows shrink as `t` decreases.
pub fn monotone(rows: &[DeformRow]) -> bool {
    let mut ok: Vec<&DeformRow> = rows.iter().filter(|r| r.status == "ok").collect();
    ok.sort_by(|a, b| b.t.total_cmp(&a.t));
    ok.windows(2).all(|w| w[1].t == w[0].t || w[1].distance < w[0].distance)
}

pub fn to_csv(rows: &[DeformRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory writer");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

pub fn parse_t_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("bad t value {x:?}: {e}")))
        .collect()
}
