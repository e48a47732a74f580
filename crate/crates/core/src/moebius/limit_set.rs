use super::{attracting_point, GroupSpec};
use crate::dedup::PointSet;
use crate::projective::ProjPoint1;
use crate::tol;
use crate::words::for_each_word;
use crate::{Error, Result};

/// Default cap on the number of distinct samples.
pub const DEFAULT_CAP: usize = 1 << 20;

/// Attracting fixed points of loxodromic reduced words of length ≤ `budget`,
/// in enumeration order, with near-duplicates (chordal 1e-6) dropped.
pub fn limit_set_p1(g: &GroupSpec, budget: usize, cap: usize) -> Result<Vec<ProjPoint1>> {
    let mut set = PointSet::new(tol::DEDUP);
    for_each_word(&g.generators, &g.alphabet(), budget, |_, m| {
        if set.len() >= cap {
            return;
        }
        if let Some(p) = attracting_point(m, tol::DEFAULT) {
            set.insert(p);
        }
    });
    if set.len() == 0 {
        return Err(Error::NoLoxodromicWord(budget));
    }
    Ok(set.into_vec())
}
