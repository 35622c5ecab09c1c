//! Balls and points of `R^N_inf`, their lifts to Minkowski space, and the
//! two Mobius invariants.
//!
//! An oriented ball lifts to a space-like unit vector `v` with the
//! membership convention `p in B  <=>  <v, lift_point(p)> > 0`; a boundary
//! point lifts to a positive light ray. Both invariants are computed
//! through the lifts, which handles spheres, half-spaces and the point at
//! infinity uniformly.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::lorentz::LorentzMap;
use crate::minkowski::{lorentz_inner, CausalClass, MinkVector};
use crate::tol;

/// Which side of its boundary sphere an oriented ball occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Inside,
    Outside,
}

/// An open ball of `R^N_inf`: a Euclidean ball interior or exterior, or an
/// open half-space `{x : normal . x > offset}`.
#[derive(Debug, Clone, PartialEq)]
pub enum OrientedBall {
    Sphere {
        center: DVector<f64>,
        radius: f64,
        side: Side,
    },
    HalfSpace {
        normal: DVector<f64>,
        offset: f64,
    },
}

impl OrientedBall {
    pub fn sphere(center: DVector<f64>, radius: f64, side: Side) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidInput(format!("radius must be positive, got {radius}")));
        }
        if center.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite center coordinate".into()));
        }
        Ok(OrientedBall::Sphere { center, radius, side })
    }

    /// Normalizes the normal vector; errors on a zero normal.
    pub fn half_space(normal: DVector<f64>, offset: f64) -> Result<Self> {
        let n = normal.norm();
        if !(n > 0.0) || !n.is_finite() || !offset.is_finite() {
            return Err(Error::InvalidInput("half-space needs a nonzero finite normal".into()));
        }
        Ok(OrientedBall::HalfSpace { normal: normal / n, offset: offset / n })
    }

    /// Boundary dimension `N`.
    pub fn dim(&self) -> usize {
        match self {
            OrientedBall::Sphere { center, .. } => center.len(),
            OrientedBall::HalfSpace { normal, .. } => normal.len(),
        }
    }

    /// The other component of the boundary's complement.
    pub fn complement(&self) -> OrientedBall {
        match self {
            OrientedBall::Sphere { center, radius, side } => OrientedBall::Sphere {
                center: center.clone(),
                radius: *radius,
                side: match side {
                    Side::Inside => Side::Outside,
                    Side::Outside => Side::Inside,
                },
            },
            OrientedBall::HalfSpace { normal, offset } => OrientedBall::HalfSpace {
                normal: -normal,
                offset: -offset,
            },
        }
    }

    /// Membership test via the lift sign convention.
    pub fn contains(&self, p: &ExtendedPoint) -> bool {
        let v = lift_ball(self);
        let u = lift_point(p);
        lorentz_inner(&v, u.vector()).unwrap_or(f64::NAN) > 0.0
    }
}

/// A point of `R^N` or the point at infinity.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtendedPoint {
    Finite(DVector<f64>),
    /// The point at infinity of `R^N_inf`; carries `N`.
    Infinity(usize),
}

impl ExtendedPoint {
    pub fn finite(coords: DVector<f64>) -> Result<Self> {
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite point coordinate".into()));
        }
        Ok(ExtendedPoint::Finite(coords))
    }

    pub fn finite_from_slice(coords: &[f64]) -> Result<Self> {
        Self::finite(DVector::from_row_slice(coords))
    }

    pub fn dim(&self) -> usize {
        match self {
            ExtendedPoint::Finite(c) => c.len(),
            ExtendedPoint::Infinity(n) => *n,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ExtendedPoint::Infinity(_))
    }
}

/// A positive light-like vector, representing a light ray through the
/// origin (equivalently a boundary point of hyperbolic space).
#[derive(Debug, Clone, PartialEq)]
pub struct LightRay {
    vector: MinkVector,
}

impl LightRay {
    pub fn new(vector: MinkVector) -> Result<Self> {
        let n = vector.euclidean_norm();
        if vector.norm_sq().abs() > 1e-9 * n * n || n == 0.0 {
            return Err(Error::NotLightLike);
        }
        if vector.time() <= 0.0 {
            return Err(Error::NotPositive);
        }
        Ok(LightRay { vector })
    }

    pub fn vector(&self) -> &MinkVector {
        &self.vector
    }

    pub fn into_vector(self) -> MinkVector {
        self.vector
    }
}

/// Lifts an oriented ball to a space-like unit vector.
///
/// `Sphere(c, r, Inside)` with `A = |c|^2 - r^2` maps to
/// `(c/r, (A-1)/(2r), (A+1)/(2r))`; `Outside` negates; `HalfSpace(n, d)`
/// maps to `(n, d, d)`.
pub fn lift_ball(b: &OrientedBall) -> MinkVector {
    let n = b.dim();
    let m = n + 2;
    let mut v = DVector::zeros(m);
    match b {
        OrientedBall::Sphere { center, radius, side } => {
            let a = center.norm_squared() - radius * radius;
            for i in 0..n {
                v[i] = center[i] / radius;
            }
            v[m - 2] = (a - 1.0) / (2.0 * radius);
            v[m - 1] = (a + 1.0) / (2.0 * radius);
            if *side == Side::Outside {
                v = -v;
            }
        }
        OrientedBall::HalfSpace { normal, offset } => {
            for i in 0..n {
                v[i] = normal[i];
            }
            v[m - 2] = *offset;
            v[m - 1] = *offset;
        }
    }
    MinkVector::from_raw(v)
}

/// Projects a space-like vector back to the oriented ball it lifts.
pub fn unlift_ball(v: &MinkVector) -> Result<OrientedBall> {
    if causal_is_not_spacelike(v) {
        return Err(Error::NotSpaceLike);
    }
    let unit = v.scale(1.0 / v.norm_sq().sqrt());
    let m = unit.dim();
    let kappa = unit.time() - unit.coords()[m - 2];
    let spatial = unit.spatial();
    if kappa.abs() > tol::TAU_PLANE {
        let radius = 1.0 / kappa.abs();
        let center = spatial / kappa;
        let side = if kappa > 0.0 { Side::Inside } else { Side::Outside };
        OrientedBall::sphere(center, radius, side)
    } else {
        OrientedBall::half_space(spatial, unit.coords()[m - 2])
    }
}

fn causal_is_not_spacelike(v: &MinkVector) -> bool {
    v.causal_class() != CausalClass::SpaceLike
}

/// Lifts a point to a positive light ray: `p -> (p, (|p|^2-1)/2, (|p|^2+1)/2)`
/// and `inf -> (0, ..., 0, 1, 1)`. Satisfies
/// `<lift(p), lift(q)> = -|p - q|^2 / 2` for finite points.
pub fn lift_point(p: &ExtendedPoint) -> LightRay {
    let n = p.dim();
    let m = n + 2;
    let mut v = DVector::zeros(m);
    match p {
        ExtendedPoint::Finite(c) => {
            let q = c.norm_squared();
            for i in 0..n {
                v[i] = c[i];
            }
            v[m - 2] = (q - 1.0) / 2.0;
            v[m - 1] = (q + 1.0) / 2.0;
        }
        ExtendedPoint::Infinity(_) => {
            v[m - 2] = 1.0;
            v[m - 1] = 1.0;
        }
    }
    LightRay { vector: MinkVector::from_raw(v) }
}

/// Projects a positive light-like vector back to the boundary point whose
/// ray it spans. Scale-invariant.
pub fn unlift_point(w: &MinkVector) -> Result<ExtendedPoint> {
    let n = w.euclidean_norm();
    // Loose gate: applying a Lorentz map to an exact light vector leaves a
    // self-product of order eps * |g|^4 relative to the new norm.
    if n == 0.0 || w.norm_sq().abs() > 1e-6 * n * n {
        return Err(Error::NotLightLike);
    }
    if w.time() <= 0.0 {
        return Err(Error::NotPositive);
    }
    let m = w.dim();
    let kappa = w.time() - w.coords()[m - 2];
    if kappa.abs() <= tol::TAU_PLANE * n {
        Ok(ExtendedPoint::Infinity(m - 2))
    } else {
        ExtendedPoint::finite(w.spatial() / kappa)
    }
}

/// Signed inversive distance `[B1, B2] = <v1, v2>` of the lifts; for two
/// Euclidean ball interiors this equals
/// `(r1^2 + r2^2 - |c1 - c2|^2) / (2 r1 r2)` and it negates under a side
/// flip of either argument.
pub fn signed_inversive_distance(b1: &OrientedBall, b2: &OrientedBall) -> Result<f64> {
    lorentz_inner(&lift_ball(b1), &lift_ball(b2))
}

/// `|[B1, B2]|`; depends only on the boundaries.
pub fn unsigned_inversive_distance(s1: &OrientedBall, s2: &OrientedBall) -> Result<f64> {
    Ok(signed_inversive_distance(s1, s2)?.abs())
}

/// Cross-ratio of four pairwise independent light rays:
/// `(<v1,v2><v3,v4>) / (<v1,v3><v2,v4>)`, invariant under Lorentz maps and
/// under rescaling of each ray.
pub fn lightray_cross_ratio(l1: &LightRay, l2: &LightRay, l3: &LightRay, l4: &LightRay) -> Result<f64> {
    let p = |a: &LightRay, b: &LightRay| -> Result<f64> {
        let val = lorentz_inner(a.vector(), b.vector())?;
        let scale = a.vector().euclidean_norm() * b.vector().euclidean_norm();
        if val.abs() <= tol::TAU_ZERO * scale {
            return Err(Error::DuplicateRays);
        }
        Ok(val)
    };
    let num = p(l1, l2)? * p(l3, l4)?;
    let den = p(l1, l3)? * p(l2, l4)?;
    Ok(num / den)
}

/// Absolute cross-ratio `|a-b||c-d| / (|a-c||b-d|)` of four distinct
/// points, with the usual conventions at infinity, computed as the square
/// root of the light-ray cross-ratio of the lifts.
pub fn absolute_cross_ratio(
    a: &ExtendedPoint,
    b: &ExtendedPoint,
    c: &ExtendedPoint,
    d: &ExtendedPoint,
) -> Result<f64> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in i + 1..4 {
            if chordal_distance(pts[i], pts[j])? <= 1e-14 {
                return Err(Error::DuplicatePoints);
            }
        }
    }
    let [la, lb, lc, ld] = pts.map(lift_point);
    let cr2 = lightray_cross_ratio(&la, &lb, &lc, &ld)?;
    Ok(cr2.max(0.0).sqrt())
}

/// Chordal metric on `R^N_inf`: the Euclidean distance of the images under
/// stereographic projection to the unit sphere. Ranges over `[0, 2]`.
pub fn chordal_distance(p: &ExtendedPoint, q: &ExtendedPoint) -> Result<f64> {
    let u = lift_point(p).into_vector();
    let v = lift_point(q).into_vector();
    let u = u.scale(1.0 / u.time());
    let v = v.scale(1.0 / v.time());
    Ok((-2.0 * lorentz_inner(&u, &v)?).max(0.0).sqrt())
}

/// How a pair of distinct boundaries sits: disjoint (with the hyperbolic
/// distance of the corresponding planes), tangent, or intersecting (with
/// the dihedral angle between the chosen half-spaces).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BallRelation {
    BoundariesDisjoint { distance: f64 },
    Tangent,
    Intersecting { angle: f64 },
}

/// Classifies a ball pair by its signed inversive distance `lambda`:
/// `|lambda| > 1` means disjoint boundaries at hyperbolic distance
/// `arccosh |lambda|`, `|lambda| = 1` tangency, `|lambda| < 1` intersection
/// at angle `arccos(lambda)`. Flipping one side replaces the angle by its
/// supplement.
pub fn relation_of_balls(b1: &OrientedBall, b2: &OrientedBall) -> Result<BallRelation> {
    let v1 = lift_ball(b1);
    let v2 = lift_ball(b2);
    let diff = (&v1 - &v2).euclidean_norm();
    let sum = (&v1 + &v2).euclidean_norm();
    let scale = v1.euclidean_norm().max(v2.euclidean_norm());
    if diff.min(sum) <= 1e-9 * scale {
        return Err(Error::SameBoundary);
    }
    let lambda = lorentz_inner(&v1, &v2)?;
    if lambda.abs() > 1.0 + tol::TAU_REL {
        Ok(BallRelation::BoundariesDisjoint { distance: lambda.abs().acosh() })
    } else if (lambda.abs() - 1.0).abs() <= tol::TAU_REL {
        Ok(BallRelation::Tangent)
    } else {
        Ok(BallRelation::Intersecting { angle: lambda.clamp(-1.0, 1.0).acos() })
    }
}

/// Acts on a point through the light-cone lift. The map must be positive.
pub fn apply_to_point(g: &LorentzMap, p: &ExtendedPoint) -> Result<ExtendedPoint> {
    if !g.positivity() {
        return Err(Error::NotPositive);
    }
    let u = lift_point(p).into_vector();
    unlift_point(&g.apply(&u)?)
}

/// Acts on an oriented ball through the space-like lift. The map must be
/// positive, so membership is preserved.
pub fn apply_to_ball(g: &LorentzMap, b: &OrientedBall) -> Result<OrientedBall> {
    if !g.positivity() {
        return Err(Error::NotPositive);
    }
    unlift_ball(&g.apply(&lift_ball(b))?)
}

/// The isometry from the ball model (dimension `M - 1`) onto the
/// hyperboloid sheet: `x -> (2x, 1 + |x|^2) / (1 - |x|^2)`.
pub fn ball_model_to_hyperboloid(x: &DVector<f64>) -> Result<MinkVector> {
    let q = x.norm_squared();
    if q >= 1.0 - tol::TAU_ZERO {
        return Err(Error::OnOrOutsideBoundary);
    }
    let m = x.len() + 1;
    let denom = 1.0 - q;
    let mut v = DVector::zeros(m);
    for i in 0..x.len() {
        v[i] = 2.0 * x[i] / denom;
    }
    v[m - 1] = (1.0 + q) / denom;
    Ok(MinkVector::from_raw(v))
}

/// Parameter-space discrepancy between two oriented balls, relative to the
/// parameter magnitudes, used by the solver verification. Falls back to the
/// Euclidean distance of the unit lifts when the two balls have different
/// shapes (or sides), which bounds the mismatch from below.
pub fn ball_param_error(a: &OrientedBall, b: &OrientedBall) -> f64 {
    match (a, b) {
        (
            OrientedBall::Sphere { center: c1, radius: r1, side: s1 },
            OrientedBall::Sphere { center: c2, radius: r2, side: s2 },
        ) if s1 == s2 => {
            let dc = (c1 - c2).amax();
            let scale = 1.0 + c1.amax().max(c2.amax()).max(r1.max(*r2));
            dc.max((r1 - r2).abs()) / scale
        }
        (
            OrientedBall::HalfSpace { normal: n1, offset: d1 },
            OrientedBall::HalfSpace { normal: n2, offset: d2 },
        ) => {
            let dn = (n1 - n2).amax();
            let scale = 1.0 + d1.abs().max(d2.abs());
            dn.max((d1 - d2).abs()) / scale
        }
        _ => (&lift_ball(a) - &lift_ball(b)).euclidean_norm(),
    }
}
