//! Möbius transformations of P¹_ℂ and discrete groups generated by them.

mod circle;
mod groups;
mod limit_set;

pub use circle::{invariant_circle, search_invariant_circle, CircleSearch, CircleSpec};
pub use groups::{
    four_disk_schottky, genus2_octagon_group, quasifuchsian_family, schottky_group, Certificate, Deformation, DiskPair,
    GroupSpec, DEFAULT_DEFORMATION_SEED,
};
pub use limit_set::{limit_set_p1, DEFAULT_CAP};

use std::fmt;

use crate::projective::{fmt_c, ProjPoint1};
use crate::words::GroupElement;
use crate::{tol, CMatrix2, CVector2, Complex, Error, Result, ONE};

/// Element of PSL(2,ℂ), stored by a determinant-one lift.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoebiusMap {
    m: CMatrix2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementType {
    Identity,
    Elliptic,
    Parabolic,
    Loxodromic,
}

impl fmt::Display for ElementType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementType::Identity => "identity",
            ElementType::Elliptic => "elliptic",
            ElementType::Parabolic => "parabolic",
            ElementType::Loxodromic => "loxodromic",
        })
    }
}

/// Fixed points of a non-identity element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FixedPoints {
    Parabolic(ProjPoint1),
    Elliptic(ProjPoint1, ProjPoint1),
    Loxodromic {
        attracting: ProjPoint1,
        repelling: ProjPoint1,
    },
}

impl FixedPoints {
    pub fn points(&self) -> Vec<ProjPoint1> {
        match *self {
            FixedPoints::Parabolic(p) => vec![p],
            FixedPoints::Elliptic(p, q) => vec![p, q],
            FixedPoints::Loxodromic { attracting, repelling } => vec![attracting, repelling],
        }
    }
}

impl MoebiusMap {
    /// `z ↦ (az + b)/(cz + d)`; the matrix is rescaled to determinant one.
    pub fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Result<Self> {
        Self::from_matrix(CMatrix2::new(a, b, c, d))
    }

    pub fn from_matrix(m: CMatrix2) -> Result<Self> {
        let det = m.determinant();
        let scale = m.iter().map(|x| x.norm_sqr()).sum::<f64>();
        if !(det.norm() > 1e-14 * scale) {
            return Err(Error::InvalidParameter("Möbius matrix must be invertible".into()));
        }
        Ok(Self { m: m / det.sqrt() })
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self {
            m: CMatrix2::identity(),
        }
    }

    /// The unique map sending `from[k]` to `to[k]` for k = 0, 1, 2.
    pub fn from_three_points(from: [ProjPoint1; 3], to: [ProjPoint1; 3]) -> Result<Self> {
        let s = Self::to_zero_one_infinity(from)?;
        let t = Self::to_zero_one_infinity(to)?;
        Ok(t.inverse().compose(&s))
    }

    /// Map sending `p[0], p[1], p[2]` to `0, 1, ∞`.
    fn to_zero_one_infinity(p: [ProjPoint1; 3]) -> Result<Self> {
        let det = |a: &ProjPoint1, b: &ProjPoint1| {
            let (u, v) = (a.vector(), b.vector());
            u[0] * v[1] - u[1] * v[0]
        };
        let (p1, p3) = (p[0].vector(), p[2].vector());
        let k23 = det(&p[1], &p[2]);
        let k21 = det(&p[1], &p[0]);
        Self::new(k23 * p1[1], -k23 * p1[0], k21 * p3[1], -k21 * p3[0])
            .map_err(|_| Error::InvalidParameter("three-point data must consist of distinct points".into()))
    }

    pub fn matrix(&self) -> &CMatrix2 {
        &self.m
    }

    pub fn entries(&self) -> (Complex, Complex, Complex, Complex) {
        (self.m[(0, 0)], self.m[(0, 1)], self.m[(1, 0)], self.m[(1, 1)])
    }

    pub fn trace(&self) -> Complex {
        self.m.trace()
    }

    /// `trace²`, independent of the choice of lift.
    pub fn trace_sq(&self) -> Complex {
        let t = self.trace();
        t * t
    }

    pub fn apply(&self, p: &ProjPoint1) -> ProjPoint1 {
        ProjPoint1::from_vector(&(self.m * p.vector())).expect("invertible")
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { m: self.m * other.m }
    }

    pub fn inverse(&self) -> Self {
        let (a, b, c, d) = self.entries();
        Self {
            m: CMatrix2::new(d, -b, -c, a),
        }
    }

    /// `h g h⁻¹`.
    pub fn conjugate_by(&self, h: &Self) -> Self {
        h.compose(self).compose(&h.inverse())
    }

    /// Lift-independent sup-norm distance `min(‖A − B‖, ‖A + B‖)`.
    pub fn distance(&self, other: &Self) -> f64 {
        let sup = |m: CMatrix2| m.iter().map(|x| x.norm()).fold(0.0, f64::max);
        sup(self.m - other.m).min(sup(self.m + other.m))
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.distance(&Self::identity()) < tol
    }

    /// Whether some determinant-one lift has real entries, i.e. the map lies in PSL(2,ℝ).
    pub fn is_real(&self, tol: f64) -> bool {
        self.m.iter().all(|x| x.im.abs() <= tol) || self.m.iter().all(|x| x.re.abs() <= tol)
    }
}

impl GroupElement for MoebiusMap {
    fn compose(&self, rhs: &Self) -> Self {
        MoebiusMap::compose(self, rhs)
    }
    fn inverse(&self) -> Self {
        MoebiusMap::inverse(self)
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c, d) = self.entries();
        write!(f, "[[{}, {}], [{}, {}]]", fmt_c(a), fmt_c(b), fmt_c(c), fmt_c(d))
    }
}

pub fn classify(g: &MoebiusMap) -> ElementType {
    classify_with(g, tol::DEFAULT)
}

/// Trichotomy by `τ = trace²`: real τ ∈ [0,4) elliptic, τ = 4 parabolic,
/// anything else loxodromic.
pub fn classify_with(g: &MoebiusMap, tol: f64) -> ElementType {
    if g.is_identity(tol) {
        return ElementType::Identity;
    }
    let tau = g.trace_sq();
    let scale = tau.norm().max(1.0);
    if (tau - 4.0).norm() <= tol * scale {
        ElementType::Parabolic
    } else if tau.im.abs() <= tol * scale && tau.re >= -tol && tau.re < 4.0 {
        ElementType::Elliptic
    } else {
        ElementType::Loxodromic
    }
}

fn eigenvector(m: &CMatrix2, lambda: Complex) -> CVector2 {
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let u = CVector2::new(b, lambda - a);
    let v = CVector2::new(lambda - d, c);
    if u.norm() >= v.norm() {
        u
    } else {
        v
    }
}

/// Fixed points from the closed-form 2×2 eigenvectors.
pub fn fixed_points(g: &MoebiusMap) -> Result<FixedPoints> {
    let kind = classify(g);
    let m = g.matrix();
    let t = g.trace();
    let point = |l: Complex| ProjPoint1::from_vector(&eigenvector(m, l));
    match kind {
        ElementType::Identity => Err(Error::IdentityElement),
        ElementType::Parabolic => Ok(FixedPoints::Parabolic(point(t / 2.0)?)),
        ElementType::Elliptic | ElementType::Loxodromic => {
            let s = (t * t - 4.0).sqrt();
            let (l1, l2) = ((t + s) / 2.0, (t - s) / 2.0);
            let (big, _) = if l1.norm() >= l2.norm() { (l1, l2) } else { (l2, l1) };
            // The small eigenvalue is recovered from det = 1 for stability.
            let small = ONE / big;
            let (p, q) = (point(big)?, point(small)?);
            if kind == ElementType::Elliptic {
                Ok(FixedPoints::Elliptic(p, q))
            } else {
                Ok(FixedPoints::Loxodromic {
                    attracting: p,
                    repelling: q,
                })
            }
        }
    }
}

/// Attracting fixed point of a loxodromic element, `None` otherwise.
pub(crate) fn attracting_point(g: &MoebiusMap, tol: f64) -> Option<ProjPoint1> {
    if classify_with(g, tol) != ElementType::Loxodromic {
        return None;
    }
    let t = g.trace();
    let s = (t * t - 4.0).sqrt();
    let (l1, l2) = ((t + s) / 2.0, (t - s) / 2.0);
    let big = if l1.norm() >= l2.norm() { l1 } else { l2 };
    ProjPoint1::from_vector(&eigenvector(g.matrix(), big)).ok()
}
