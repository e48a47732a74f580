//! The Veronese embedding `psi: P¹ → P²`, the representation `iota` it
//! induces, and tangent lines to the Veronese curve.
//!
//! `psi([z,w]) = [z², 2zw, w²]` parametrizes the conic `y² = 4xz`. A Möbius
//! map acts on binary quadratic forms and so on P²; `iota` is that action,
//! normalized so that `psi(g·x) = iota(g)·psi(x)`.

use crate::moebius::{classify, ElementType, MoebiusMap};
use crate::projective::{eigenvalues, ProjLine, ProjMap3, ProjPoint1, ProjPoint2};
use crate::{tol, CMatrix2, CMatrix3, CVector2, CVector3, Complex, Error, Result};

/// A point of the Veronese curve together with its parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VeronesePoint {
    pub point: ProjPoint2,
    pub preimage: ProjPoint1,
}

pub fn psi_vector(v: &CVector2) -> CVector3 {
    let (z, w) = (v[0], v[1]);
    CVector3::new(z * z, 2.0 * z * w, w * w)
}

pub fn psi(p: &ProjPoint1) -> VeronesePoint {
    VeronesePoint {
        point: ProjPoint2::from_vector(&psi_vector(p.vector())).expect("nonzero image"),
        preimage: *p,
    }
}

/// Scale-free conic residual `|y² − 4xz| / ‖p‖²`.
pub fn curve_residual(p: &ProjPoint2) -> f64 {
    let v = p.vector();
    (v[1] * v[1] - 4.0 * v[0] * v[2]).norm() / v.norm_squared()
}

/// Inverse of `psi` on the curve.
pub fn psi_inverse(p: &ProjPoint2, tol: f64) -> Result<ProjPoint1> {
    let residual = curve_residual(p);
    if residual >= tol {
        return Err(Error::NotOnVeronese { residual });
    }
    let v = p.vector();
    if v[0].norm() >= v[2].norm() {
        ProjPoint1::new(v[0], v[1] / 2.0)
    } else {
        ProjPoint1::new(v[1] / 2.0, v[2])
    }
}

/// `[[a², ab, b²], [2ac, ad + bc, 2bd], [c², cd, d²]]`.
pub fn iota_matrix(m: &CMatrix2) -> CMatrix3 {
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    CMatrix3::new(
        a * a,
        a * b,
        b * b,
        2.0 * a * c,
        a * d + b * c,
        2.0 * b * d,
        c * c,
        c * d,
        d * d,
    )
}

/// The lift of a Möbius map; determinant one since the 2×2 lift has det 1.
pub fn iota(g: &MoebiusMap) -> ProjMap3 {
    ProjMap3::from_lift(iota_matrix(g.matrix()))
}

/// Predicted spectrum `{a², 1, a⁻²}` of `iota(g)`, from an eigenvalue `a` of `g`.
pub fn lifted_spectrum(g: &MoebiusMap) -> [Complex; 3] {
    let t = g.trace();
    let a = (t + (t * t - 4.0).sqrt()) / 2.0;
    [a * a, 1.0.into(), 1.0 / (a * a)]
}

/// Tangent line to the curve at `psi(k)`: for `k = [u, v]` the coefficients
/// are `(v², −uv, u²)`, i.e. `(κ², −κ, 1)` at `[1, κ]` and `(1, 0, 0)` at `[0, 1]`.
pub fn tangent_line(k: &ProjPoint1) -> ProjLine {
    let (u, v) = (k.vector()[0], k.vector()[1]);
    ProjLine::from_coefficients(&CVector3::new(v * v, -u * v, u * u)).expect("nonzero")
}

/// Scale-free discriminant of `c₁s² + 2c₂st + c₃t²`, the restriction of the
/// line `c` to the curve. It vanishes exactly for tangent lines.
pub fn contact_discriminant(l: &ProjLine) -> f64 {
    let c = l.coefficients();
    (4.0 * (c[1] * c[1] - c[0] * c[2])).norm() / c.norm_squared()
}

/// Determinant of the three tangent-line coefficient rows.
pub fn tangent_triple_determinant(x: &ProjPoint1, y: &ProjPoint1, z: &ProjPoint1) -> Complex {
    let rows = [x, y, z].map(|p| *tangent_line(p).coefficients());
    CMatrix3::from_rows(&[rows[0].transpose(), rows[1].transpose(), rows[2].transpose()]).determinant()
}

/// Whether the tangent lines at three points are in general position
/// (scale-free determinant test with the default tolerance).
pub fn tangent_triple_general_position(x: &ProjPoint1, y: &ProjPoint1, z: &ProjPoint1) -> bool {
    let norms: f64 = [x, y, z]
        .iter()
        .map(|p| tangent_line(p).coefficients().norm())
        .product();
    tangent_triple_determinant(x, y, z).norm() > tol::DEFAULT * norms
}

/// Three eigenvalues of pairwise distinct modulus.
pub fn is_strongly_loxodromic(g: &ProjMap3, tol: f64) -> bool {
    let ev = eigenvalues(g.matrix());
    let scale = ev[0].norm();
    (ev[0].norm() - ev[1].norm()) > tol * scale && (ev[1].norm() - ev[2].norm()) > tol * scale
}

/// `(M − λ)³ = 0` for the common eigenvalue `λ = tr M / 3`.
pub fn is_unipotent(g: &ProjMap3, tol: f64) -> bool {
    let m = g.matrix();
    let lambda = m.trace() / 3.0;
    let n = m - CMatrix3::identity() * lambda;
    let scale = m.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let n3 = n * n * n;
    n3.iter().map(|x| x.norm()).fold(0.0, f64::max) <= tol * scale.powi(3)
}

/// How the lift of an element sits in PSL(3,ℂ).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftType {
    Identity,
    /// Diagonalizable with unimodular eigenvalues.
    Elliptic,
    /// Unipotent, not the identity: never strongly loxodromic.
    Unipotent,
    StronglyLoxodromic,
}

impl std::fmt::Display for LiftType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LiftType::Identity => "identity",
            LiftType::Elliptic => "elliptic",
            LiftType::Unipotent => "unipotent",
            LiftType::StronglyLoxodromic => "strongly loxodromic",
        })
    }
}

/// Type of `iota(g)`, read off from the lift alone.
pub fn lift_type(g: &MoebiusMap) -> LiftType {
    let lift = iota(g);
    if lift.is_scalar(tol::DEFAULT) {
        LiftType::Identity
    } else if is_strongly_loxodromic(&lift, tol::DEFAULT) {
        LiftType::StronglyLoxodromic
    } else if classify(g) == ElementType::Parabolic || is_unipotent(&lift, 1e-9) {
        LiftType::Unipotent
    } else {
        LiftType::Elliptic
    }
}

/// The real matrix `[[1,0,−1],[0,1,0],[1,0,1]]` carrying `psi(ℝ̂)` onto the
/// conic `X² + Y² = Z²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealFormConjugator {
    pub g0: ProjMap3,
}

const GAMMA0: [[i64; 3]; 3] = [[1, 0, -1], [0, 1, 0], [1, 0, 1]];
const LORENTZ: [[i64; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, -1]];

pub fn real_form_conjugator() -> RealFormConjugator {
    let m = CMatrix3::from_fn(|i, j| (GAMMA0[i][j] as f64).into());
    RealFormConjugator {
        g0: ProjMap3::new(m).expect("det 2"),
    }
}

fn int_mul(a: &[[i64; 3]; 3], b: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn int_transpose(a: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

impl RealFormConjugator {
    pub fn integer_matrix(&self) -> [[i64; 3]; 3] {
        GAMMA0
    }

    /// `γ₀ᵗ · diag(1,1,−1) · γ₀` in exact integer arithmetic.
    pub fn pulled_back_lorentz_form(&self) -> [[i64; 3]; 3] {
        int_mul(&int_mul(&int_transpose(&GAMMA0), &LORENTZ), &GAMMA0)
    }

    pub fn apply(&self, p: &ProjPoint2) -> ProjPoint2 {
        self.g0.apply(p)
    }

    pub fn apply_line(&self, l: &ProjLine) -> ProjLine {
        self.g0.apply_line(l)
    }

    /// `γ₀ · psi([x, y])` for real `x, y`, without normalization:
    /// `(x² − y², 2xy, x² + y²)`.
    pub fn real_parametrization(&self, x: f64, y: f64) -> [f64; 3] {
        let v = psi_vector(&CVector2::new(x.into(), y.into()));
        let w = self.g0.matrix() * v;
        [w[0].re, w[1].re, w[2].re]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::same_point;
    use crate::{c, ONE, ZERO};
    use proptest::prelude::*;

    fn p2(x: Complex, y: Complex, z: Complex) -> ProjPoint2 {
        ProjPoint2::new(x, y, z).unwrap()
    }

    #[test]
    fn psi_examples() {
        let cases = [
            ((ONE, ONE), (c(1., 0.), c(2., 0.), c(1., 0.))),
            ((ONE, c(0., 1.)), (c(1., 0.), c(0., 2.), c(-1., 0.))),
            ((ZERO, ONE), (ZERO, ZERO, ONE)),
        ];
        for ((z, w), (x, y, u)) in cases {
            let q = psi(&ProjPoint1::new(z, w).unwrap());
            assert!(q.point.same_point(&p2(x, y, u), 1e-15));
            assert!(curve_residual(&q.point) < 1e-15);
        }
    }

    #[test]
    fn psi_inverse_examples() {
        let back = psi_inverse(&ProjPoint2::real(1., 2., 1.).unwrap(), 1e-9).unwrap();
        assert!(back.same_point(&ProjPoint1::new(ONE, ONE).unwrap(), 1e-15));
        let back = psi_inverse(&ProjPoint2::basis(2), 1e-9).unwrap();
        assert!(back.same_point(&ProjPoint1::new(ZERO, ONE).unwrap(), 1e-15));
        let back = psi_inverse(&p2(ONE, c(0., 2.), -ONE), 1e-9).unwrap();
        assert!(back.same_point(&ProjPoint1::new(ONE, c(0., 1.)).unwrap(), 1e-15));
        assert!(matches!(
            psi_inverse(&ProjPoint2::real(1., 1., 1.).unwrap(), 1e-9),
            Err(Error::NotOnVeronese { .. })
        ));
    }

    #[test]
    fn iota_examples() {
        let d = iota(&MoebiusMap::real(2., 0., 0., 0.5).unwrap());
        let want = CMatrix3::from_diagonal(&CVector3::new(c(4., 0.), ONE, c(0.25, 0.)));
        assert!((d.matrix() - want).norm() < 1e-15);
        assert_eq!(*iota(&MoebiusMap::identity()).matrix(), CMatrix3::identity());
        let u = iota(&MoebiusMap::real(1., 1., 0., 1.).unwrap());
        let want = CMatrix3::from_fn(|i, j| [[1., 1., 1.], [0., 1., 2.], [0., 0., 1.]][i][j].into());
        assert_eq!(*u.matrix(), want);
    }

    #[test]
    fn iota_commutes_with_psi_on_samples() {
        let g = MoebiusMap::new(c(1., 2.), c(-0.5, 0.3), c(0.7, -1.), c(2., 0.1)).unwrap();
        let lift = iota(&g);
        for z in [c(0., 0.), c(1., 0.), c(-2., 3.), c(0.5, -0.5), c(10., 1.)] {
            let x = ProjPoint1::finite(z);
            let lhs = psi(&g.apply(&x)).point;
            let rhs = lift.apply(&psi(&x).point);
            assert!(same_point(&lhs, &rhs, 1e-12));
        }
    }

    #[test]
    fn tangent_line_examples() {
        let l = tangent_line(&ProjPoint1::new(ONE, ZERO).unwrap());
        assert!(l.same_line(&ProjLine::real(0., 0., 1.).unwrap(), 1e-15));
        assert!(l.contains(&ProjPoint2::basis(0), 1e-15));
        let l = tangent_line(&ProjPoint1::new(ONE, ONE).unwrap());
        assert!(l.same_line(&ProjLine::real(1., -1., 1.).unwrap(), 1e-15));
        assert!(l.contains(&ProjPoint2::real(1., 2., 1.).unwrap(), 1e-15));
        let l = tangent_line(&ProjPoint1::new(ZERO, ONE).unwrap());
        assert!(l.same_line(&ProjLine::real(1., 0., 0.).unwrap(), 1e-15));
        assert!(l.contains(&ProjPoint2::basis(2), 1e-15));
        assert!(contact_discriminant(&l) < 1e-15);
        assert!(contact_discriminant(&ProjLine::real(0., 1., 0.).unwrap()) > 0.1);
    }

    #[test]
    fn tangent_triples() {
        let k = |x: f64| ProjPoint1::new(ONE, x.into()).unwrap();
        let det = tangent_triple_determinant(&k(0.), &k(1.), &k(2.));
        // (s − r)(k − s)(k − r) = 2 for (k, r, s) = (0, 1, 2); normalizing
        // [1, 2] to [1/2, 1] scales the third row by 1/4.
        assert!((det.norm() * 4.0 - 2.0).abs() < 1e-14);
        assert!(tangent_triple_general_position(&k(0.), &k(1.), &k(2.)));
        assert!(!tangent_triple_general_position(&k(0.), &k(1.), &k(1.)));
        let inf = ProjPoint1::new(ZERO, ONE).unwrap();
        assert!((tangent_triple_determinant(&k(0.), &k(1.), &inf).norm() - 1.0).abs() < 1e-15);
        assert!(tangent_triple_general_position(&k(0.), &k(1.), &inf));
    }

    #[test]
    fn real_form_identities() {
        let g = real_form_conjugator();
        assert_eq!(g.pulled_back_lorentz_form(), [[0, 0, -2], [0, 1, 0], [-2, 0, 0]]);
        let img = g.apply(&ProjPoint2::basis(0));
        assert!(img.same_point(&ProjPoint2::real(1., 0., 1.).unwrap(), 1e-15));
        let img = g.apply(&ProjPoint2::real(1., 2., 1.).unwrap());
        assert!(img.same_point(&ProjPoint2::real(0., 1., 1.).unwrap(), 1e-15));
        assert_eq!(g.real_parametrization(2., 3.), [-5., 12., 13.]);
    }

    #[test]
    fn lift_types() {
        let lox = MoebiusMap::real(2., 0., 0., 0.5).unwrap();
        assert_eq!(lift_type(&lox), LiftType::StronglyLoxodromic);
        let par = MoebiusMap::real(1., 1., 0., 1.).unwrap();
        assert_eq!(lift_type(&par), LiftType::Unipotent);
        assert!(!is_strongly_loxodromic(&iota(&par), 1e-9));
        let ell = MoebiusMap::real(0., -1., 1., 0.).unwrap();
        assert_eq!(lift_type(&ell), LiftType::Elliptic);
        assert_eq!(lift_type(&MoebiusMap::identity()), LiftType::Identity);
    }

    fn arb_c() -> impl Strategy<Value = Complex> {
        (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| c(a, b))
    }

    fn arb_map() -> impl Strategy<Value = MoebiusMap> {
        (arb_c(), arb_c(), arb_c(), arb_c()).prop_filter_map("singular", |(a, b, cc, d)| {
            let m = MoebiusMap::new(a, b, cc, d).ok()?;
            // Keep conditioning moderate so fixed tolerances stay meaningful.
            (m.matrix().norm() < 30.0).then_some(m)
        })
    }

    proptest! {
        #[test]
        fn iota_is_multiplicative(g in arb_map(), h in arb_map()) {
            let lhs = iota(&g.compose(&h));
            let rhs = iota(&g).compose(&iota(&h));
            prop_assert!(lhs.distance(&rhs) < 1e-10);
        }

        #[test]
        fn curve_is_invariant(g in arb_map(), z in arb_c()) {
            let p = iota(&g).apply(&psi(&ProjPoint1::finite(z)).point);
            prop_assert!(curve_residual(&p) < 1e-9);
        }

        #[test]
        fn tangent_lines_have_double_contact(u in arb_c(), v in arb_c()) {
            prop_assume!(u.norm() + v.norm() > 1e-3);
            let k = ProjPoint1::new(u, v).unwrap();
            let l = tangent_line(&k);
            prop_assert!(contact_discriminant(&l) < 1e-9);
            prop_assert!(l.contains(&psi(&k).point, 1e-12));
        }

        #[test]
        fn psi_round_trips(u in arb_c(), v in arb_c()) {
            prop_assume!(u.norm() + v.norm() > 1e-3);
            let k = ProjPoint1::new(u, v).unwrap();
            let back = psi_inverse(&psi(&k).point, 1e-9).unwrap();
            prop_assert!(back.same_point(&k, 1e-9));
        }
    }
}
