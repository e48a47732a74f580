//! Boundary accumulation of an interior orbit.

use super::HermitianForm3;
use crate::dedup::PointSet;
use crate::projective::{ProjMap3, ProjPoint2};
use crate::tol;
use crate::words::{for_each_orbit_point, Alphabet};
use crate::{Error, Result};

/// Orbit points of `base` under reduced words of length ≤ `budget` that come
/// within relative form value 1e-3 of the sphere `⟨w,w⟩ = 0`, deduplicated.
///
/// One base point suffices for non-elementary groups, where the accumulation
/// set does not depend on the orbit.
pub fn chen_greenberg_sample(
    gens: &[ProjMap3],
    h: &HermitianForm3,
    base: &ProjPoint2,
    budget: usize,
) -> Result<Vec<ProjPoint2>> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let residual = h.invariance_residual(gens);
    if residual >= tol::FORM_RESIDUAL {
        return Err(Error::FormNotInvariant(residual));
    }
    let value = h.relative_value(base.vector());
    if value >= 0.0 {
        return Err(Error::NotInterior(value));
    }
    let labels: Vec<String> = (0..gens.len()).map(|i| format!("g{i}")).collect();
    let alphabet = Alphabet::new(&labels)?;
    let mut set = PointSet::new(tol::DEDUP);
    for_each_orbit_point(
        gens,
        &alphabet,
        base,
        budget,
        |g, p| g.apply(p),
        |_, p| {
            if h.relative_value(p.vector()).abs() < tol::MEMBERSHIP {
                set.insert(*p);
            }
        },
    );
    if set.len() == 0 {
        return Err(Error::NoAccumulation(budget));
    }
    Ok(set.into_vec())
}
