//! Numerical thresholds shared across modules.

/// Relative tolerance for projective equality and rank decisions.
pub const DEFAULT: f64 = 1e-9;

/// Chordal distance below which two limit-set samples are merged.
pub const DEDUP: f64 = 1e-6;

/// Normalized incidence below which a point counts as lying on a limit line.
pub const MEMBERSHIP: f64 = 1e-3;

/// Accepted residual `max ‖g* h g − h‖ / ‖h‖` for an invariant form.
pub const FORM_RESIDUAL: f64 = 1e-8;

/// Minimum `|det h| / ‖h‖²` for an invariant circle to be non-degenerate.
pub const CIRCLE_DET: f64 = 1e-8;

/// Number of terms inspected by the Cauchy test for pseudo-projective limits.
pub const CAUCHY_WINDOW: usize = 5;

/// Relative modulus window inside which entries count as tied for normalization.
pub(crate) const TIE: f64 = 1e-12;

/// Knobs for the invariant-form searches.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchOptions {
    /// Accepted invariance residual.
    pub residual: f64,
    /// Seed for random combinations of null directions.
    pub seed: u64,
    /// Number of random combinations tried when the null space has dimension > 1.
    pub tries: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            residual: FORM_RESIDUAL,
            seed: 0x5eed,
            tries: 256,
        }
    }
}
