//! Circles on the Riemann sphere as indefinite 2×2 Hermitian forms, and the
//! search for a circle preserved by every generator of a group.

use nalgebra::DMatrix;

use super::MoebiusMap;
use crate::linalg::{invariance_residual, scan_null_space, solve_invariant_hermitian};
use crate::projective::ProjPoint1;
use crate::tol::{self, SearchOptions};
use crate::{CMatrix2, Complex, Error, Result};

/// The circle `{p : p* h p = 0}` of a Hermitian `h` with `det h < 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleSpec {
    h: CMatrix2,
}

impl CircleSpec {
    pub fn from_matrix(h: CMatrix2) -> Result<Self> {
        let scale = h.iter().map(|x| x.norm()).fold(0.0, f64::max);
        let asym = (h - h.adjoint()).iter().map(|x| x.norm()).fold(0.0, f64::max);
        if asym > 1e-12 * scale.max(1.0) {
            return Err(Error::NotHermitian(asym));
        }
        let det = h.determinant().re;
        if !(det < -tol::DEFAULT * scale * scale) {
            return Err(Error::InvalidParameter(format!(
                "circle form must have negative determinant (got {det:e})"
            )));
        }
        Ok(Self { h })
    }

    /// The round circle `|z − center| = radius`; its interior is where the form is negative.
    pub fn disk(center: Complex, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "radius must be positive, got {radius}"
            )));
        }
        Self::from_matrix(CMatrix2::new(
            1.0.into(),
            -center,
            -center.conj(),
            (center.norm_sqr() - radius * radius).into(),
        ))
    }

    /// The extended real line.
    pub fn real_axis() -> Self {
        Self {
            h: CMatrix2::new(0.0.into(), Complex::new(0.0, 1.0), Complex::new(0.0, -1.0), 0.0.into()),
        }
    }

    pub fn matrix(&self) -> &CMatrix2 {
        &self.h
    }

    pub fn value(&self, p: &ProjPoint1) -> f64 {
        let v = p.vector();
        (v.adjoint() * self.h * v)[(0, 0)].re
    }

    /// Center and radius when the circle is round (does not pass through ∞).
    pub fn center_radius(&self) -> Option<(Complex, f64)> {
        let a = self.h[(0, 0)].re;
        let scale = self.h.iter().map(|x| x.norm()).fold(0.0, f64::max);
        if a.abs() <= tol::DEFAULT * scale {
            return None;
        }
        let center = -self.h[(0, 1)] / a;
        let r2 = center.norm_sqr() - self.h[(1, 1)].re / a;
        Some((center, r2.max(0.0).sqrt()))
    }

    /// Residual `max ‖g* h g − h‖ / ‖h‖` over the given maps.
    pub fn residual(&self, gens: &[MoebiusMap]) -> f64 {
        invariance_residual(&dyn_gens(gens), &to_dyn(&self.h))
    }
}

fn to_dyn(m: &CMatrix2) -> DMatrix<Complex> {
    DMatrix::from_iterator(2, 2, m.iter().copied())
}

fn dyn_gens(gens: &[MoebiusMap]) -> Vec<DMatrix<Complex>> {
    gens.iter().map(|g| to_dyn(g.matrix())).collect()
}

/// Outcome of the invariant-circle search.
#[derive(Clone, Debug)]
pub struct CircleSearch {
    pub circle: Option<CircleSpec>,
    /// Residual of the returned circle, or the least-squares floor when none.
    pub residual: f64,
    /// Smallest singular value of the stacked constraint system.
    pub floor: f64,
    /// Number of constraint directions below the residual tolerance.
    pub nullity: usize,
}

/// Finds a circle preserved by all generators, if one exists at tolerance.
pub fn invariant_circle(gens: &[MoebiusMap]) -> Result<Option<CircleSpec>> {
    Ok(search_invariant_circle(gens, &SearchOptions::default())?.circle)
}

pub fn search_invariant_circle(gens: &[MoebiusMap], opts: &SearchOptions) -> Result<CircleSearch> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let dg = dyn_gens(gens);
    let solve = solve_invariant_hermitian(&dg);
    let null = solve.null_directions(opts.residual);
    let found = scan_null_space(null, opts.tries, opts.seed, |h| {
        let det = (h[(0, 0)] * h[(1, 1)] - h[(0, 1)] * h[(1, 0)]).re;
        let norm2: f64 = h.iter().map(|x| x.norm_sqr()).sum();
        let ok = det < 0.0 && det.abs() > tol::CIRCLE_DET * norm2 && invariance_residual(&dg, h) < opts.residual;
        ok.then(|| h.clone())
    });
    let circle = found
        .map(|h| CircleSpec::from_matrix(CMatrix2::new(h[(0, 0)], h[(0, 1)], h[(1, 0)], h[(1, 1)])))
        .transpose()?;
    let residual = match &circle {
        Some(c) => c.residual(gens),
        None => solve.floor(),
    };
    Ok(CircleSearch {
        circle,
        residual,
        floor: solve.floor(),
        nullity: null.len(),
    })
}
