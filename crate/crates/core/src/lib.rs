//! Mobius-invariant geometry of balls and points in `R^N_inf`, computed in
//! the hyperboloid model.
//!
//! The crate provides:
//!
//! - indefinite (Lorentz) linear algebra over `M = N + 2` coordinates:
//!   inner products, causal classification, Gram analysis, Lorentz
//!   complements, canonical subspace forms, and signature-aware basis
//!   completion ([`minkowski`], [`span`], [`canonical`], [`lorentz`]);
//! - lifts of oriented balls to space-like unit vectors and of boundary
//!   points to positive light rays, with the signed inversive distance and
//!   the absolute cross-ratio computed through them ([`geometry`]);
//! - constructive rigidity solvers: given two configurations with matching
//!   invariants, build the positive Lorentz map identifying them, detect
//!   the common-boundary-point degeneracy, and classify uniqueness
//!   ([`solver`]);
//! - seeded instance generation for tests and tooling ([`sample`]).

pub mod canonical;
pub mod error;
pub mod geometry;
pub mod lorentz;
pub mod minkowski;
pub mod sample;
pub mod solver;
pub mod span;
pub mod tol;

pub use canonical::{canonicalize_subspace, complete_to_lorentz_basis, CanonicalForm};
pub use error::{Error, Result};
pub use geometry::{
    absolute_cross_ratio, apply_to_ball, apply_to_point, ball_model_to_hyperboloid,
    ball_param_error, chordal_distance, lift_ball, lift_point, lightray_cross_ratio,
    relation_of_balls, signed_inversive_distance, unlift_ball, unlift_point,
    unsigned_inversive_distance, BallRelation, ExtendedPoint, LightRay, OrientedBall, Side,
};
pub use lorentz::{random_lorentz, LorentzMap, LorentzReport};
pub use minkowski::{
    causal_class, gram_matrix, hyperbolic_distance, lorentz_inner, CausalClass, MinkVector,
};
pub use solver::{
    classify_uniqueness, detect_common_boundary, full_cross_ratio_check, match_frames,
    solve_balls, solve_points, verify_correspondence, Configuration, ConfigurationKind,
    CorrespondenceReport, CrossRatioReport, MatchMode, SolveOutcome, Uniqueness,
};
pub use span::{classify_span, lorentz_complement, SpanKind, SubspaceClass};
