//! Centralized tolerances.
//!
//! All thresholds target double precision with well-conditioned desk-scale
//! instances; nothing here adapts to input scale beyond the stated relative
//! factors.

/// Relative threshold below which a self-product or norm counts as zero.
pub const TAU_ZERO: f64 = 1e-12;

/// Rank threshold, as a fraction of the largest singular value.
pub const TAU_RANK_REL: f64 = 1e-10;

/// Width of the rank refusal band: singular values in
/// `(TAU_RANK_REL, RANK_BAND * TAU_RANK_REL)` times the largest singular
/// value trigger [`crate::Error::RankAmbiguous`] rather than a guess.
pub const RANK_BAND: f64 = 100.0;

/// Max-abs residual of `G^T J G - J` accepted from a Lorentz map.
pub const TAU_LORENTZ: f64 = 1e-9;

/// Decides sphere vs half-space when projecting a unit space-like vector
/// back to an oriented ball.
pub const TAU_PLANE: f64 = 1e-10;

/// Tangency band for the ball-pair relation classifier. Tangency is a
/// measure-zero condition; a band is mandatory in floating point.
pub const TAU_REL: f64 = 1e-9;

/// Ball-parameter tolerance for solver verification. Unlifting amplifies
/// error near the sphere/half-space transition, hence looser than the
/// Gram tolerances.
pub const VERIFY_BALL: f64 = 1e-6;

/// Chordal-metric tolerance for point-solver verification.
pub const VERIFY_POINT: f64 = 1e-7;

/// Default tolerance for comparing invariant Gram matrices.
pub fn gram_tol(max_entry: f64) -> f64 {
    1e-8 * (1.0 + max_entry.abs())
}
