//! The real projection `Π: [v] ↦ [η̄ v + η v̄]` from the complex ball to the
//! real points of P².

use super::HermitianForm3;
use crate::projective::ProjPoint2;
use crate::{tol, CVector3, Complex, Error, Result};

/// Which scalar defines `η²`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EtaReading {
    /// `η² = −vᵗ h v`. Makes `Π` independent of the representative.
    #[default]
    Bilinear,
    /// `η² = −v* h v`. Depends on the phase of `v`; kept for comparison.
    Hermitian,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealProjectionResult {
    pub point: ProjPoint2,
    pub eta_sq: Complex,
}

pub fn real_projection_pi(v: &CVector3, h: &HermitianForm3) -> Result<RealProjectionResult> {
    real_projection_pi_with(v, h, EtaReading::Bilinear)
}

pub fn real_projection_pi_with(v: &CVector3, h: &HermitianForm3, reading: EtaReading) -> Result<RealProjectionResult> {
    if !h.is_real(1e-12) {
        return Err(Error::InvalidParameter(
            "projection needs a form with real entries".into(),
        ));
    }
    let scale = h.norm() * v.norm_squared();
    if scale == 0.0 {
        return Err(Error::ZeroRepresentative);
    }
    let beta = match reading {
        EtaReading::Bilinear => h.bilinear(v),
        EtaReading::Hermitian => h.evaluate(v).into(),
    };
    if beta.norm() <= tol::DEFAULT * scale {
        return Err(Error::ProjectionUndefined);
    }
    let eta_sq = -beta;
    let eta = eta_sq.sqrt();
    // η̄v + ηv̄ = 2 Re(η̄ v), real by construction.
    let w = v.map(|x| Complex::from(2.0 * (eta.conj() * x).re));
    if w.norm() <= tol::DEFAULT * eta.norm() * v.norm() {
        return Err(Error::ProjectionUndefined);
    }
    Ok(RealProjectionResult {
        point: ProjPoint2::from_vector(&w)?,
        eta_sq,
    })
}
