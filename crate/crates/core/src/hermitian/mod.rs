//! Hermitian forms on ℂ³, detection of forms preserved by a group of
//! projective maps, and the geometry of the Veronese curve against the ball
//! `{⟨w,w⟩ < 0}` of a signature-(2,1) form.

mod census;
mod chen_greenberg;
mod projection;
mod quartic;

pub use census::{veronese_ball_census, Census, CensusGrid};
pub use chen_greenberg::chen_greenberg_sample;
pub use projection::{real_projection_pi, real_projection_pi_with, EtaReading, RealProjectionResult};
pub use quartic::{boundary_quartic, boundary_quartic_unchecked, quartic_laplacian, Laplacian, QuarticCurve};

use std::fmt;

use nalgebra::DMatrix;

use crate::linalg::{invariance_residual, scan_null_space, solve_invariant_hermitian};
use crate::projective::{fmt_c, numerical_rank, ProjMap3};
use crate::tol::{self, SearchOptions};
use crate::{CMatrix3, CVector3, Complex, Error, Result, ONE, ZERO};

/// Inertia of a Hermitian matrix: counts of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub const LORENTZIAN: Self = Self {
        positive: 2,
        negative: 1,
        zero: 0,
    };

    pub fn as_tuple(&self) -> (usize, usize, usize) {
        (self.positive, self.negative, self.zero)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero == 0 {
            write!(f, "({},{})", self.positive, self.negative)
        } else {
            write!(f, "({},{},{})", self.positive, self.negative, self.zero)
        }
    }
}

/// A 3×3 Hermitian matrix with its signature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermitianForm3 {
    h: CMatrix3,
    signature: Signature,
}

fn max_abs(m: &CMatrix3) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

fn inertia(h: &CMatrix3, tol: f64) -> Signature {
    let ev = h.symmetric_eigenvalues();
    let scale = ev.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let cut = tol * scale;
    Signature {
        positive: ev.iter().filter(|&&x| x > cut).count(),
        negative: ev.iter().filter(|&&x| x < -cut).count(),
        zero: ev.iter().filter(|&&x| x.abs() <= cut).count(),
    }
}

impl HermitianForm3 {
    pub fn new(h: CMatrix3) -> Result<Self> {
        let asym = max_abs(&(h - h.adjoint()));
        if asym > 1e-12 * max_abs(&h).max(1.0) {
            return Err(Error::NotHermitian(asym));
        }
        if max_abs(&h) == 0.0 {
            return Err(Error::ZeroRepresentative);
        }
        // Symmetrize away the rounding so the eigen solver sees an exact Hermitian matrix.
        let h = (h + h.adjoint()) * Complex::from(0.5);
        Ok(Self {
            h,
            signature: inertia(&h, tol::DEFAULT),
        })
    }

    pub fn real(rows: [[f64; 3]; 3]) -> Result<Self> {
        Self::new(CMatrix3::from_fn(|i, j| rows[i][j].into()))
    }

    pub fn diagonal(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::real([[a, 0., 0.], [0., b, 0.], [0., 0., c]])
    }

    /// The anti-diagonal form `2 Re(x̄ z) + |y|²`.
    pub fn standard() -> Self {
        Self::new(CMatrix3::new(ZERO, ZERO, ONE, ZERO, ONE, ZERO, ONE, ZERO, ZERO)).expect("Hermitian")
    }

    pub fn matrix(&self) -> &CMatrix3 {
        &self.h
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    /// `v* h v`.
    pub fn evaluate(&self, v: &CVector3) -> f64 {
        let z = (v.adjoint() * self.h * v)[(0, 0)];
        debug_assert!(z.im.abs() <= 1e-10 * (1.0 + self.norm() * v.norm_squared()));
        z.re
    }

    /// Complex-bilinear value `vᵗ h v`.
    pub fn bilinear(&self, v: &CVector3) -> Complex {
        (v.transpose() * self.h * v)[(0, 0)]
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.h.norm()
    }

    /// `|v* h v| / (‖h‖ ‖v‖²)`: zero on the null cone, at most 1.
    pub fn relative_value(&self, v: &CVector3) -> f64 {
        self.evaluate(v) / (self.norm() * v.norm_squared())
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.h.iter().all(|x| x.im.abs() <= tol * self.norm())
    }

    /// `max_g ‖g* h g − h‖ / ‖h‖` over det-1 lifts of the given maps.
    pub fn invariance_residual(&self, gens: &[ProjMap3]) -> f64 {
        let lifts: Vec<DMatrix<Complex>> = gens.iter().map(|g| to_dyn(&unimodular(g.matrix()))).collect();
        invariance_residual(&lifts, &to_dyn(&self.h))
    }
}

impl fmt::Display for HermitianForm3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..3)
            .map(|i| {
                let r: Vec<String> = (0..3).map(|j| fmt_c(self.h[(i, j)])).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

pub fn evaluate(h: &HermitianForm3, v: &CVector3) -> f64 {
    h.evaluate(v)
}

pub fn signature(h: &HermitianForm3) -> Signature {
    h.signature()
}

/// Signature with an explicit relative eigenvalue threshold.
pub fn signature_with(h: &HermitianForm3, tol: f64) -> Signature {
    inertia(&h.h, tol)
}

fn to_dyn(m: &CMatrix3) -> DMatrix<Complex> {
    DMatrix::from_iterator(3, 3, m.iter().copied())
}

fn from_dyn(m: &DMatrix<Complex>) -> CMatrix3 {
    CMatrix3::from_iterator(m.iter().copied())
}

/// Rescales a lift to determinant one. Any cube root will do: a unimodular
/// scalar leaves `g* h g` unchanged.
fn unimodular(m: &CMatrix3) -> CMatrix3 {
    m / m.determinant().powf(1.0 / 3.0)
}

/// Outcome of the invariant-form search.
#[derive(Clone, Debug)]
pub struct FormSearch {
    pub form: Option<HermitianForm3>,
    /// Residual of the returned form, or the least-squares floor when none.
    pub residual: f64,
    /// Smallest singular value of the stacked constraint system.
    pub floor: f64,
    /// Number of constraint directions below the residual tolerance.
    pub nullity: usize,
}

/// A signature-(2,1) form preserved by all generators, if one exists at tolerance.
pub fn invariant_hermitian_form(gens: &[ProjMap3]) -> Result<Option<HermitianForm3>> {
    Ok(search_invariant_hermitian_form(gens, &SearchOptions::default())?.form)
}

pub fn search_invariant_hermitian_form(gens: &[ProjMap3], opts: &SearchOptions) -> Result<FormSearch> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    for (i, g) in gens.iter().enumerate() {
        if numerical_rank(g.matrix(), 1e-12) < 3 {
            return Err(Error::NonInvertible(i));
        }
    }
    let lifts: Vec<DMatrix<Complex>> = gens.iter().map(|g| to_dyn(&unimodular(g.matrix()))).collect();
    let solve = solve_invariant_hermitian(&lifts);
    let null = solve.null_directions(opts.residual);
    let found = scan_null_space(null, opts.tries, opts.seed, |h| {
        if invariance_residual(&lifts, h) >= opts.residual {
            return None;
        }
        let m = from_dyn(h);
        match inertia(&((m + m.adjoint()) * Complex::from(0.5)), tol::DEFAULT).as_tuple() {
            (2, 1, 0) => Some(h.clone()),
            (1, 2, 0) => Some(-h),
            _ => None,
        }
    });
    let form = match found {
        Some(h) => {
            let m = from_dyn(&h);
            Some(HermitianForm3::new(m / Complex::from(max_abs(&m)))?)
        }
        None => None,
    };
    let residual = match &form {
        Some(f) => invariance_residual(&lifts, &to_dyn(f.matrix())),
        None => solve.floor(),
    };
    Ok(FormSearch {
        form,
        residual,
        floor: solve.floor(),
        nullity: null.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::moebius::MoebiusMap;
    use crate::veronese::{iota, psi_vector};
    use crate::CVector2;

    #[test]
    fn evaluate_examples() {
        let h = HermitianForm3::standard();
        let v = CVector3::new(ONE, ZERO, -ONE);
        assert_eq!(h.evaluate(&v), -2.0);
        assert_eq!(h.evaluate(&CVector3::new(ZERO, ONE, ZERO)), 1.0);
        let lor = HermitianForm3::diagonal(1., 1., -1.).unwrap();
        let z = c(0.3, -1.2);
        let rho2 = z.norm_sqr();
        let v = psi_vector(&CVector2::new(ONE, z));
        assert!((lor.evaluate(&v) - (1.0 + 4.0 * rho2 - rho2 * rho2)).abs() < 1e-13);
        let lambda = c(-2.0, 0.5);
        assert!((lor.evaluate(&(v * lambda)) - lambda.norm_sqr() * lor.evaluate(&v)).abs() < 1e-12);
    }

    #[test]
    fn signature_examples() {
        let lor = Signature::LORENTZIAN;
        assert_eq!(HermitianForm3::diagonal(1., 1., -1.).unwrap().signature(), lor);
        assert_eq!(HermitianForm3::standard().signature(), lor);
        let j = HermitianForm3::real([[0., 0., -2.], [0., 1., 0.], [-2., 0., 0.]]).unwrap();
        assert_eq!(j.signature(), lor);
        assert_eq!(
            HermitianForm3::diagonal(1., 0., -1.).unwrap().signature().as_tuple(),
            (1, 1, 1)
        );
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix3::new(ONE, c(0., 1.), ZERO, c(0., 1.), ONE, ZERO, ZERO, ZERO, ONE);
        assert!(matches!(HermitianForm3::new(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn diagonal_loxodromic_preserves_standard_form() {
        let g = iota(&MoebiusMap::real(2., 0., 0., 0.5).unwrap());
        assert!(HermitianForm3::standard().invariance_residual(&[g]) < 1e-12);
        let s = search_invariant_hermitian_form(&[g], &SearchOptions::default()).unwrap();
        assert_eq!(s.nullity, 3);
        let f = s.form.unwrap();
        assert_eq!(f.signature(), Signature::LORENTZIAN);
        assert!(s.residual < 1e-12);
    }

    #[test]
    fn real_lifts_preserve_the_discriminant_form() {
        let gens = [
            iota(&MoebiusMap::real(2., 1., 1., 1.).unwrap()),
            iota(&MoebiusMap::real(1., 0., 3., 1.).unwrap()),
        ];
        let j = HermitianForm3::real([[0., 0., -2.], [0., 1., 0.], [-2., 0., 0.]]).unwrap();
        assert!(j.invariance_residual(&gens) < 1e-14);
        let f = invariant_hermitian_form(&gens).unwrap().expect("Fuchsian lift");
        // Unique up to positive scale for an irreducible group.
        let scaled = j.matrix() / Complex::from(2.0);
        assert!(max_abs(&(f.matrix() - scaled)) < 1e-9, "{f}");
    }

    #[test]
    fn empty_and_singular_inputs() {
        assert!(matches!(invariant_hermitian_form(&[]), Err(Error::EmptyGenerators)));
        let sing = ProjMap3::from_lift(CMatrix3::from_diagonal(&CVector3::new(ONE, ONE, ZERO)));
        assert!(matches!(
            invariant_hermitian_form(&[sing]),
            Err(Error::NonInvertible(0))
        ));
    }
}
