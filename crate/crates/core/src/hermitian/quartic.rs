//! The real quartic `F(x, y) = ⟨psi(1, z), psi(1, z)⟩`, `z = x + iy`, whose
//! zero set is the preimage of the ball boundary on the Veronese curve.

use super::HermitianForm3;
use crate::{tol, Error, Result};

/// `F = constant + x·X + y·Y + x2·X² + xy·XY + y2·Y² + r2x·ρ²X + r2y·ρ²Y + r2·ρ² + r4·ρ⁴`
/// with `ρ² = X² + Y²`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QuarticCurve {
    pub constant: f64,
    pub x: f64,
    pub y: f64,
    pub x2: f64,
    pub xy: f64,
    pub y2: f64,
    pub r2x: f64,
    pub r2y: f64,
    pub r2: f64,
    pub r4: f64,
}

impl QuarticCurve {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let r2 = x * x + y * y;
        self.constant
            + self.x * x
            + self.y * y
            + self.x2 * x * x
            + self.xy * x * y
            + self.y2 * y * y
            + r2 * (self.r2x * x + self.r2y * y + self.r2 + self.r4 * r2)
    }

    pub fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
        let r2 = x * x + y * y;
        let lin = self.r2x * x + self.r2y * y + self.r2 + 2.0 * self.r4 * r2;
        let dx = self.x + 2.0 * self.x2 * x + self.xy * y + 2.0 * x * lin + self.r2x * r2;
        let dy = self.y + self.xy * x + 2.0 * self.y2 * y + 2.0 * y * lin + self.r2y * r2;
        (dx, dy)
    }
}

/// Coefficients of `F` read off a Hermitian matrix with entries `a_ij = b_ij + i c_ij`:
///
/// `F = a₁₁ + 4(b₁₂x − c₁₂y) + 2(b₁₃(x² − y²) − 2c₁₃xy) + a₃₃ρ⁴ + 4ρ²(b₂₃x − c₂₃y) + 4a₂₂ρ²`.
///
/// Requires `psi(∞) = [0,0,1]` off the null cone, i.e. `a₃₃ ≠ 0`.
pub fn boundary_quartic(h: &HermitianForm3) -> Result<QuarticCurve> {
    let m = h.matrix();
    let scale = m.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if m[(2, 2)].re.abs() <= tol::DEFAULT * scale {
        return Err(Error::PsiInfinityOnNullSet);
    }
    Ok(boundary_quartic_unchecked(h))
}

/// [`boundary_quartic`] without the `a₃₃ ≠ 0` check; the formula itself holds
/// for every Hermitian matrix.
pub fn boundary_quartic_unchecked(h: &HermitianForm3) -> QuarticCurve {
    let m = h.matrix();
    let (a12, a13, a23) = (m[(0, 1)], m[(0, 2)], m[(1, 2)]);
    QuarticCurve {
        constant: m[(0, 0)].re,
        x: 4.0 * a12.re,
        y: -4.0 * a12.im,
        x2: 2.0 * a13.re,
        xy: -4.0 * a13.im,
        y2: -2.0 * a13.re,
        r2x: 4.0 * a23.re,
        r2y: -4.0 * a23.im,
        r2: 4.0 * m[(1, 1)].re,
        r4: m[(2, 2)].re,
    }
}

/// `ΔF = constant + x·X + y·Y + r2·ρ²`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Laplacian {
    pub constant: f64,
    pub x: f64,
    pub y: f64,
    pub r2: f64,
}

impl Laplacian {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.constant + self.x * x + self.y * y + self.r2 * (x * x + y * y)
    }
}

/// Exact Laplacian, monomial by monomial: `Δ(ρ²X) = 8X`, `Δρ² = 4`, `Δρ⁴ = 16ρ²`.
/// For a quartic from a form this is `16(a₃₃ρ² + a₂₂ + 2b₂₃x − 2c₂₃y)`.
pub fn quartic_laplacian(q: &QuarticCurve) -> Laplacian {
    Laplacian {
        constant: 2.0 * (q.x2 + q.y2) + 4.0 * q.r2,
        x: 8.0 * q.r2x,
        y: 8.0 * q.r2y,
        r2: 16.0 * q.r4,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::veronese::psi_vector;
    use crate::{c, CMatrix3, CVector2, ONE};
    use proptest::prelude::*;

    #[test]
    fn diagonal_examples() {
        let q = boundary_quartic(&HermitianForm3::diagonal(1., 1., -1.).unwrap()).unwrap();
        for (x, y) in [(0.0, 0.0), (1.0, 2.0), (-0.5, 0.25)] {
            let r2: f64 = x * x + y * y;
            assert!((q.eval(x, y) - (1.0 + 4.0 * r2 - r2 * r2)).abs() < 1e-12);
            assert!((quartic_laplacian(&q).eval(x, y) - 16.0 * (1.0 - r2)).abs() < 1e-12);
        }
        let q = boundary_quartic(&HermitianForm3::diagonal(2., -1., 2.).unwrap()).unwrap();
        for (x, y) in [(0.0, 0.0), (1.0, 0.0), (0.6, 0.8), (2.0, -1.0)] {
            let r2: f64 = x * x + y * y;
            assert!((q.eval(x, y) - 2.0 * (1.0 - r2).powi(2)).abs() < 1e-12);
            assert!((quartic_laplacian(&q).eval(x, y) - 16.0 * (2.0 * r2 - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn standard_form_needs_the_unchecked_variant() {
        let h = HermitianForm3::standard();
        assert!(matches!(boundary_quartic(&h), Err(Error::PsiInfinityOnNullSet)));
        let q = boundary_quartic_unchecked(&h);
        for (x, y) in [(1.0, 0.0), (0.0, 1.0), (0.3, -2.0)] {
            assert!((q.eval(x, y) - (6.0 * x * x + 2.0 * y * y)).abs() < 1e-12);
            let v = psi_vector(&CVector2::new(ONE, c(x, y)));
            assert!((q.eval(x, y) - h.evaluate(&v)).abs() < 1e-12);
        }
    }

    #[test]
    fn harmonic_when_top_entries_vanish() {
        let h = HermitianForm3::new(CMatrix3::new(
            c(1., 0.),
            c(0.5, 0.2),
            c(0.3, -1.),
            c(0.5, -0.2),
            c(0., 0.),
            c(0., 0.),
            c(0.3, 1.),
            c(0., 0.),
            c(0., 0.),
        ))
        .unwrap();
        let lap = quartic_laplacian(&boundary_quartic_unchecked(&h));
        assert_eq!(lap, Laplacian::default());
    }

    fn arb_form() -> impl Strategy<Value = HermitianForm3> {
        prop::array::uniform9(-2.0f64..2.0).prop_map(|e| {
            let m = CMatrix3::new(
                c(e[0], 0.),
                c(e[1], e[2]),
                c(e[3], e[4]),
                c(e[1], -e[2]),
                c(e[5], 0.),
                c(e[6], e[7]),
                c(e[3], -e[4]),
                c(e[6], -e[7]),
                c(e[8], 0.),
            );
            HermitianForm3::new(m).unwrap()
        })
    }

    proptest! {
        #[test]
        fn quartic_matches_form_on_the_curve(h in arb_form(), x in -3.0f64..3.0, y in -3.0f64..3.0) {
            let q = boundary_quartic_unchecked(&h);
            let v = psi_vector(&CVector2::new(ONE, c(x, y)));
            let want = h.evaluate(&v);
            prop_assert!((q.eval(x, y) - want).abs() <= 1e-9 * (1.0 + want.abs()));
        }

        #[test]
        fn gradient_matches_differences(h in arb_form(), x in -3.0f64..3.0, y in -3.0f64..3.0) {
            let q = boundary_quartic_unchecked(&h);
            let s = 1e-5;
            let (gx, gy) = q.gradient(x, y);
            let fx = (q.eval(x + s, y) - q.eval(x - s, y)) / (2.0 * s);
            let fy = (q.eval(x, y + s) - q.eval(x, y - s)) / (2.0 * s);
            prop_assert!((gx - fx).abs() < 1e-4 * (1.0 + gx.abs()));
            prop_assert!((gy - fy).abs() < 1e-4 * (1.0 + gy.abs()));
        }

        #[test]
        fn laplacian_matches_five_point_stencil(h in arb_form(), x in -2.1f64..2.1, y in -2.1f64..2.1) {
            let q = boundary_quartic_unchecked(&h);
            let s = 1e-3;
            let fd = (q.eval(x + s, y) + q.eval(x - s, y) + q.eval(x, y + s) + q.eval(x, y - s)
                - 4.0 * q.eval(x, y)) / (s * s);
            prop_assert!((quartic_laplacian(&q).eval(x, y) - fd).abs() < 1e-5 * (1.0 + fd.abs()));
        }
    }
}
