use thiserror::Error;

/// Errors raised by the Lorentz linear algebra, the lifts, and the solvers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("no vector exceeds the zero tolerance")]
    AllZero,

    /// Raised when a singular value falls inside the refusal band: the rank
    /// of the span cannot be decided reliably, and rigidity answers flip
    /// discontinuously with rank.
    #[error("rank ambiguous: singular value {value:.3e} lies in ({lo:.3e}, {hi:.3e})")]
    RankAmbiguous { value: f64, lo: f64, hi: f64 },

    #[error("span is light-like; the construction requires a non-degenerate span")]
    DegenerateSpan,

    #[error("subspace is the full space; no proper canonical form exists")]
    FullSpace,

    #[error("vector is not on the hyperboloid sheet")]
    NotOnSheet,

    #[error("vector is not space-like")]
    NotSpaceLike,

    #[error("vector is not light-like")]
    NotLightLike,

    #[error("vector or map does not preserve the positive sheet")]
    NotPositive,

    #[error("points are not pairwise distinct")]
    DuplicatePoints,

    #[error("light rays are not pairwise independent")]
    DuplicateRays,

    #[error("the two boundaries coincide")]
    SameBoundary,

    #[error("point lies on or outside the unit ball boundary")]
    OnOrOutsideBoundary,

    #[error("Gram matrices differ: max deviation {max_dev:.3e} exceeds tolerance {tol:.3e}")]
    GramMismatch { max_dev: f64, tol: f64 },

    #[error("all boundary spheres pass through a common point")]
    CommonBoundaryPoint,

    #[error("cross-ratio invariants differ: max deviation {max_dev:.3e} exceeds tolerance {tol:.3e}")]
    CrossRatioMismatch { max_dev: f64, tol: f64 },

    #[error("configuration is empty")]
    EmptyConfiguration,

    #[error("duplicate label: {0}")]
    DuplicateLabel(String),

    #[error("configuration has the wrong kind for this operation")]
    WrongKind,

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
