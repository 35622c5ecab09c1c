//! Constructive rigidity: match Gram-equal frames, solve ball and point
//! configurations, gate on the common-boundary degeneracy, and classify
//! uniqueness.
//!
//! The solvers consume only pairwise invariants. For balls the signed
//! inversive distances of a configuration are the Gram matrix of its lifts,
//! so frame matching applies directly; for points the lifts are first
//! rescaled along their rays so that cross-ratio equality becomes Gram
//! equality.

use nalgebra::{DMatrix, DVector};

use crate::canonical::{complete_to_lorentz_basis, j_orthonormalize_pair};
use crate::error::{Error, Result};
use crate::geometry::{
    apply_to_ball, apply_to_point, ball_param_error, chordal_distance, lift_ball, lift_point,
    unlift_ball, ExtendedPoint, OrientedBall,
};
use crate::lorentz::LorentzMap;
use crate::minkowski::{gram_matrix, j_matrix, lorentz_inner, MinkVector};
use crate::span::{analyze_span, classify_span, SpanKind, SubspaceClass};
use crate::tol;

/// Whether a configuration holds balls or points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigurationKind {
    Balls,
    Points,
}

/// A labeled, finite family of oriented balls or of distinct points.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    dim: usize,
    labels: Vec<String>,
    items: Items,
}

#[derive(Debug, Clone, PartialEq)]
enum Items {
    Balls(Vec<OrientedBall>),
    Points(Vec<ExtendedPoint>),
}

impl Configuration {
    pub fn balls(dim: usize, entries: Vec<(String, OrientedBall)>) -> Result<Self> {
        let (labels, items): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        check_labels(&labels)?;
        for b in &items {
            if b.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: b.dim() });
            }
        }
        Ok(Self { dim, labels, items: Items::Balls(items) })
    }

    /// Points must be pairwise distinct.
    pub fn points(dim: usize, entries: Vec<(String, ExtendedPoint)>) -> Result<Self> {
        let (labels, items): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        check_labels(&labels)?;
        for p in &items {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: p.dim() });
            }
        }
        for i in 0..items.len() {
            for j in i + 1..items.len() {
                if chordal_distance(&items[i], &items[j])? <= 1e-12 {
                    return Err(Error::DuplicatePoints);
                }
            }
        }
        Ok(Self { dim, labels, items: Items::Points(items) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Ambient Minkowski dimension `M = N + 2`.
    pub fn ambient_dim(&self) -> usize {
        self.dim + 2
    }

    pub fn len(&self) -> usize {
        match &self.items {
            Items::Balls(v) => v.len(),
            Items::Points(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> ConfigurationKind {
        match &self.items {
            Items::Balls(_) => ConfigurationKind::Balls,
            Items::Points(_) => ConfigurationKind::Points,
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ball_items(&self) -> Result<&[OrientedBall]> {
        match &self.items {
            Items::Balls(v) => Ok(v),
            Items::Points(_) => Err(Error::WrongKind),
        }
    }

    pub fn point_items(&self) -> Result<&[ExtendedPoint]> {
        match &self.items {
            Items::Points(v) => Ok(v),
            Items::Balls(_) => Err(Error::WrongKind),
        }
    }

    /// Lifts every item to Minkowski space.
    pub fn lifts(&self) -> Vec<MinkVector> {
        match &self.items {
            Items::Balls(v) => v.iter().map(lift_ball).collect(),
            Items::Points(v) => v.iter().map(|p| lift_point(p).into_vector()).collect(),
        }
    }

    /// Image under a positive Lorentz map, keeping labels.
    pub fn apply(&self, g: &LorentzMap) -> Result<Configuration> {
        let items = match &self.items {
            Items::Balls(v) => {
                Items::Balls(v.iter().map(|b| apply_to_ball(g, b)).collect::<Result<_>>()?)
            }
            Items::Points(v) => {
                Items::Points(v.iter().map(|p| apply_to_point(g, p)).collect::<Result<_>>()?)
            }
        };
        Ok(Configuration { dim: self.dim, labels: self.labels.clone(), items })
    }

    /// Replaces every ball by its complement. No-op restriction: balls only.
    pub fn complemented(&self) -> Result<Configuration> {
        match &self.items {
            Items::Balls(v) => Ok(Configuration {
                dim: self.dim,
                labels: self.labels.clone(),
                items: Items::Balls(v.iter().map(OrientedBall::complement).collect()),
            }),
            Items::Points(_) => Err(Error::WrongKind),
        }
    }

    /// The invariant Gram: signed inversive distances for balls; for points
    /// the raw lift Gram (scale-dependent, see [`full_cross_ratio_check`]
    /// for the invariant comparison).
    pub fn invariant_gram(&self) -> Result<DMatrix<f64>> {
        gram_matrix(&self.lifts())
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// Direct match, or match after swapping every ball for its complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchMode {
    Direct,
    ComplementSwapped,
}

/// How constrained the identifying map is by the configuration.
#[derive(Debug, Clone, PartialEq)]
pub enum Uniqueness {
    /// The lifts span the full Minkowski space: the map is unique.
    Unique,
    /// All boundaries are orthogonal to one fixed sphere (the witness
    /// boundary, when a space-like complement direction exists).
    StronglySymmetric { witness: Option<OrientedBall> },
    /// The boundary planes meet in a single point of hyperbolic space.
    FixedHyperbolicPoint,
    /// All points lie on one common sphere (the witness boundary).
    PointsOnCommonSphere { witness: Option<OrientedBall> },
}

/// Solver output: the identifying positive Lorentz map together with its
/// match mode, uniqueness class, and residuals.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub map: LorentzMap,
    pub mode: MatchMode,
    pub uniqueness: Uniqueness,
    /// Max entrywise deviation between the two invariant Grams.
    pub residual_gram: f64,
    /// Max per-item verification error (ball parameters or chordal metric).
    pub residual_match: f64,
}

fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

fn max_abs(a: &DMatrix<f64>) -> f64 {
    a.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

/// Builds a Lorentz map sending `vs[i]` to `mirror[i]`, given that the two
/// Gram matrices agree within `tol` and that the span is non-degenerate.
///
/// The construction pivots an independent subset, J-orthonormalizes both
/// sides with the same spectral coefficients, completes both frames with
/// [`complete_to_lorentz_basis`], and reads the map off the two frames.
/// Remaining vectors are residual-checked; Gram equality forces them to
/// match.
pub fn match_frames(vs: &[MinkVector], mirror: &[MinkVector], tol: f64) -> Result<LorentzMap> {
    if vs.len() != mirror.len() {
        return Err(Error::DimensionMismatch { left: vs.len(), right: mirror.len() });
    }
    let g_a = gram_matrix(vs)?;
    let g_b = gram_matrix(mirror)?;
    let gram_dev = max_abs_diff(&g_a, &g_b);
    if gram_dev > tol {
        return Err(Error::GramMismatch { max_dev: gram_dev, tol });
    }

    let analysis = analyze_span(vs)?;
    if analysis.class.kind == SpanKind::LightLike {
        return Err(Error::DegenerateSpan);
    }
    let m = vs[0].dim();
    let p = analysis.class.dim;

    let basis_a: Vec<MinkVector> = analysis.pivots.iter().map(|&i| vs[i].clone()).collect();
    let basis_b: Vec<MinkVector> = analysis.pivots.iter().map(|&i| mirror[i].clone()).collect();
    match analyze_span(&basis_b) {
        Ok(a) if a.class.dim == p => {}
        Ok(_) => return Err(Error::GramMismatch { max_dev: gram_dev, tol }),
        Err(e) => return Err(e),
    }

    let (frame_a, frame_b, _) = j_orthonormalize_pair(&basis_a, &basis_b)?;
    let mut full_a = frame_a;
    let mut full_b = frame_b;
    if p < m {
        full_a.extend(complete_to_lorentz_basis(&basis_a)?);
        full_b.extend(complete_to_lorentz_basis(&basis_b)?);
    }

    // phi = F' D F^T J for J-orthonormal frames F, F' with sign pattern D.
    let f_a = DMatrix::from_columns(&full_a.iter().map(|v| v.coords().clone()).collect::<Vec<_>>());
    let f_b = DMatrix::from_columns(&full_b.iter().map(|v| v.coords().clone()).collect::<Vec<_>>());
    let mut d = DMatrix::zeros(m, m);
    for (i, v) in full_a.iter().enumerate() {
        d[(i, i)] = v.norm_sq().signum();
    }
    let phi = LorentzMap::from_raw(&f_b * d * f_a.transpose() * j_matrix(m));

    let scale = vs.iter().fold(0.0f64, |a, v| a.max(v.euclidean_norm())).max(1.0);
    let limit = 10.0 * tol * scale;
    let mut worst = 0.0f64;
    for (v, w) in vs.iter().zip(mirror.iter()) {
        let resid = (&phi.apply(v)? - w).euclidean_norm();
        worst = worst.max(resid);
    }
    if worst > limit {
        return Err(Error::GramMismatch { max_dev: worst, tol: limit });
    }
    Ok(phi)
}

/// Whether the boundary spheres of a ball configuration share a point,
/// read off the span of the lifts: they do iff the span is light-like, or
/// space-like of dimension below `M - 1`.
pub fn detect_common_boundary(conf: &Configuration) -> Result<(bool, SubspaceClass)> {
    conf.ball_items()?;
    if conf.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    let class = classify_span(&conf.lifts())?;
    let common = match class.kind {
        SpanKind::LightLike => true,
        SpanKind::SpaceLike => class.dim < conf.ambient_dim() - 1,
        SpanKind::TimeLike => false,
    };
    Ok((common, class))
}

/// Solves a ball configuration pair: if the signed-inversive-distance
/// Grams agree and no common boundary point exists, returns a positive
/// Lorentz map matching the configurations either directly or with every
/// ball complement-swapped.
pub fn solve_balls(conf_a: &Configuration, conf_b: &Configuration, tol: Option<f64>) -> Result<SolveOutcome> {
    let balls_a = conf_a.ball_items()?;
    let balls_b = conf_b.ball_items()?;
    check_pair(conf_a, conf_b)?;

    let lifts_a = conf_a.lifts();
    let lifts_b = conf_b.lifts();
    let g_a = gram_matrix(&lifts_a)?;
    let g_b = gram_matrix(&lifts_b)?;
    let gram_dev = max_abs_diff(&g_a, &g_b);
    let tol = tol.unwrap_or_else(|| {
        // Gram entries computed from stored ball parameters carry roundoff
        // of order eps times the product of the lift magnitudes.
        let vmax = lifts_a
            .iter()
            .chain(lifts_b.iter())
            .fold(0.0f64, |a, v| a.max(v.euclidean_norm()));
        tol::gram_tol(max_abs(&g_a)).max(1e-13 * vmax * vmax)
    });
    if gram_dev > tol {
        return Err(Error::GramMismatch { max_dev: gram_dev, tol });
    }

    let (common, _) = detect_common_boundary(conf_a)?;
    if common {
        return Err(Error::CommonBoundaryPoint);
    }

    let phi = match_frames(&lifts_a, &lifts_b, tol)?;
    let (map, mode) = if phi.positivity() {
        (phi, MatchMode::Direct)
    } else {
        (phi.negate(), MatchMode::ComplementSwapped)
    };

    let mut residual_match = 0.0f64;
    for (a, b) in balls_a.iter().zip(balls_b.iter()) {
        let source = match mode {
            MatchMode::Direct => a.clone(),
            MatchMode::ComplementSwapped => a.complement(),
        };
        let image = apply_to_ball(&map, &source)?;
        residual_match = residual_match.max(ball_param_error(&image, b));
    }
    if residual_match > tol::VERIFY_BALL {
        return Err(Error::GramMismatch { max_dev: residual_match, tol: tol::VERIFY_BALL });
    }

    Ok(SolveOutcome {
        map,
        mode,
        uniqueness: classify_uniqueness(conf_a)?,
        residual_gram: gram_dev,
        residual_match,
    })
}

/// Rescales the point lifts on both sides so that cross-ratio equality
/// becomes Gram equality, following the anchor-triple construction: the
/// first three lifts are scaled to reproduce the primed pairwise products,
/// every further lift is scaled against the second anchor. Requires at
/// least three points per side.
///
/// Returns the two scaled lift families and their max Gram deviation.
fn scale_point_lifts(
    pts_a: &[ExtendedPoint],
    pts_b: &[ExtendedPoint],
) -> Result<(Vec<MinkVector>, Vec<MinkVector>, f64)> {
    debug_assert!(pts_a.len() >= 3 && pts_a.len() == pts_b.len());
    let lifts_a: Vec<MinkVector> = pts_a.iter().map(|p| lift_point(p).into_vector()).collect();
    let lifts_b: Vec<MinkVector> = pts_b.iter().map(|p| lift_point(p).into_vector()).collect();
    let g_a = gram_matrix(&lifts_a)?;
    let g_b = gram_matrix(&lifts_b)?;

    // Anchor scalings: lambda_i > 0 with lambda_i lambda_j <u_i, u_j> equal
    // to the primed products for the three anchor pairs. Every quotient is
    // positive because distinct positive light rays have negative products.
    let q = (g_b[(0, 1)] * g_b[(0, 2)] * g_a[(1, 2)]) / (g_a[(0, 1)] * g_a[(0, 2)] * g_b[(1, 2)]);
    if !(q > 0.0) {
        return Err(Error::CrossRatioMismatch { max_dev: f64::INFINITY, tol: 0.0 });
    }
    let l0 = q.sqrt();
    let l1 = g_b[(0, 1)] / (l0 * g_a[(0, 1)]);
    let l2 = g_b[(0, 2)] / (l0 * g_a[(0, 2)]);
    if !(l1 > 0.0) || !(l2 > 0.0) {
        return Err(Error::CrossRatioMismatch { max_dev: f64::INFINITY, tol: 0.0 });
    }

    let mut scaled_a = lifts_a.clone();
    let mut scaled_b = lifts_b.clone();
    scaled_a[0] = lifts_a[0].scale(l0);
    scaled_a[1] = lifts_a[1].scale(l1);
    scaled_a[2] = lifts_a[2].scale(l2);

    let target = -lorentz_inner(&scaled_a[1], &scaled_a[2])?
        / lorentz_inner(&scaled_a[0], &scaled_a[2])?;
    for i in 3..lifts_a.len() {
        let mu_a = target / lorentz_inner(&lifts_a[i], &scaled_a[1])?;
        let mu_b = target / lorentz_inner(&lifts_b[i], &scaled_b[1])?;
        if !(mu_a > 0.0) || !(mu_b > 0.0) {
            return Err(Error::CrossRatioMismatch { max_dev: f64::INFINITY, tol: 0.0 });
        }
        scaled_a[i] = lifts_a[i].scale(mu_a);
        scaled_b[i] = lifts_b[i].scale(mu_b);
    }

    // Renormalize each pair by the same positive factor: Gram equality and
    // the matched map are unchanged, but the magnitudes stop spreading over
    // orders of magnitude, which keeps the frame matching well conditioned.
    for i in 0..scaled_a.len() {
        let s = 1.0 / scaled_a[i].euclidean_norm();
        scaled_a[i] = scaled_a[i].scale(s);
        scaled_b[i] = scaled_b[i].scale(s);
    }

    let dev = max_abs_diff(&gram_matrix(&scaled_a)?, &gram_matrix(&scaled_b)?);
    Ok((scaled_a, scaled_b, dev))
}

/// Solves a point configuration pair: if all absolute cross-ratios agree,
/// returns the positive Lorentz map carrying each point to its partner.
/// Configurations with fewer than three points are augmented identically
/// on both sides and solved through the three-point case.
pub fn solve_points(conf_a: &Configuration, conf_b: &Configuration, tol: Option<f64>) -> Result<SolveOutcome> {
    let pts_a = conf_a.point_items()?;
    let pts_b = conf_b.point_items()?;
    check_pair(conf_a, conf_b)?;

    let (aug_a, aug_b) = if pts_a.len() < 3 {
        augment_to_three(pts_a, pts_b, conf_a.dim())
    } else {
        (pts_a.to_vec(), pts_b.to_vec())
    };

    let (scaled_a, scaled_b, gram_dev) = scale_point_lifts(&aug_a, &aug_b)?;
    let tol = tol.unwrap_or_else(|| {
        let scale = scaled_a
            .iter()
            .chain(scaled_b.iter())
            .fold(0.0f64, |a, v| a.max(v.euclidean_norm()));
        tol::gram_tol(scale * scale)
    });
    if gram_dev > tol {
        return Err(Error::CrossRatioMismatch { max_dev: gram_dev, tol });
    }

    let phi = match match_frames(&scaled_a, &scaled_b, tol) {
        Ok(phi) => phi,
        Err(Error::GramMismatch { max_dev, tol }) => {
            return Err(Error::CrossRatioMismatch { max_dev, tol })
        }
        Err(e) => return Err(e),
    };
    let map = if phi.positivity() { phi } else { phi.negate() };

    let mut residual_match = 0.0f64;
    for (p, q) in pts_a.iter().zip(pts_b.iter()) {
        let image = apply_to_point(&map, p)?;
        residual_match = residual_match.max(chordal_distance(&image, q)?);
    }
    if residual_match > tol::VERIFY_POINT {
        return Err(Error::CrossRatioMismatch { max_dev: residual_match, tol: tol::VERIFY_POINT });
    }

    Ok(SolveOutcome {
        map,
        mode: MatchMode::Direct,
        uniqueness: classify_uniqueness(conf_a)?,
        residual_gram: gram_dev,
        residual_match,
    })
}

/// Appends the same auxiliary points to both sides until each has three,
/// skipping candidates that nearly coincide with an existing point on
/// either side. Triple transitivity guarantees the augmented instance is
/// solvable whenever the original is.
fn augment_to_three(
    pts_a: &[ExtendedPoint],
    pts_b: &[ExtendedPoint],
    dim: usize,
) -> (Vec<ExtendedPoint>, Vec<ExtendedPoint>) {
    let mut out_a = pts_a.to_vec();
    let mut out_b = pts_b.to_vec();
    let mut candidates: Vec<ExtendedPoint> = vec![
        ExtendedPoint::Infinity(dim),
        ExtendedPoint::Finite(DVector::zeros(dim)),
    ];
    for k in 1..8 {
        let mut c = DVector::zeros(dim);
        c[0] = k as f64;
        candidates.push(ExtendedPoint::Finite(c));
    }
    let mut iter = candidates.into_iter();
    while out_a.len() < 3 {
        let c = iter.next().expect("candidate list exhausted");
        let clashes = out_a
            .iter()
            .chain(out_b.iter())
            .any(|p| chordal_distance(p, &c).unwrap_or(0.0) <= 1e-9);
        if clashes {
            continue;
        }
        out_a.push(c.clone());
        out_b.push(c);
    }
    (out_a, out_b)
}

/// Span-based uniqueness classification.
///
/// Balls: the map is unique iff the lifts span the full space; a time-like
/// proper span means every boundary is orthogonal to a fixed sphere
/// (strong symmetry); a space-like span of dimension `M - 1` pins a single
/// hyperbolic point. Points: unique iff full span, otherwise all points
/// lie on a common sphere of the witness boundary.
pub fn classify_uniqueness(conf: &Configuration) -> Result<Uniqueness> {
    if conf.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    let lifts = conf.lifts();
    let class = classify_span(&lifts)?;
    let m = conf.ambient_dim();
    match conf.kind() {
        ConfigurationKind::Balls => {
            if class.dim == m {
                Ok(Uniqueness::Unique)
            } else if class.kind == SpanKind::SpaceLike && class.dim == m - 1 {
                Ok(Uniqueness::FixedHyperbolicPoint)
            } else {
                Ok(Uniqueness::StronglySymmetric { witness: spacelike_complement_witness(&lifts) })
            }
        }
        ConfigurationKind::Points => {
            if class.dim == m {
                Ok(Uniqueness::Unique)
            } else {
                Ok(Uniqueness::PointsOnCommonSphere {
                    witness: spacelike_complement_witness(&lifts),
                })
            }
        }
    }
}

/// A space-like unit vector of the Lorentz complement, projected back to
/// the oriented ball whose boundary it describes. `None` when the
/// complement holds no space-like direction.
fn spacelike_complement_witness(lifts: &[MinkVector]) -> Option<OrientedBall> {
    let comp = crate::span::lorentz_complement(lifts).ok()?;
    if comp.is_empty() {
        return None;
    }
    let g = gram_matrix(&comp).ok()?;
    let eig = nalgebra::SymmetricEigen::new(g);
    let (idx, &lmax) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))?;
    let scale = eig.eigenvalues.iter().fold(0.0f64, |a, &l| a.max(l.abs()));
    if lmax <= 1e-9 * scale.max(1.0) {
        return None;
    }
    let m = lifts[0].dim();
    let mut w = DVector::zeros(m);
    for (k, c) in comp.iter().enumerate() {
        w += c.coords() * eig.eigenvectors[(k, idx)];
    }
    unlift_ball(&MinkVector::from_raw(w)).ok()
}

/// Independent checker for solver outputs and external maps.
#[derive(Debug, Clone)]
pub struct CorrespondenceReport {
    /// Per-item parameter error (ball parameters or chordal metric), under
    /// the better of the two match modes for balls.
    pub item_errors: Vec<f64>,
    pub max_error: f64,
    pub mode: MatchMode,
    /// Deviation of the two invariant Grams (signed inversive distances
    /// for balls, anchor-scaled lift products for points).
    pub gram_residual: f64,
}

impl CorrespondenceReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_error <= tol
    }
}

/// Checks whether `g` carries `conf_a` onto `conf_b`, trying both the
/// direct and the complement-swapped reading for balls and reporting the
/// better one.
pub fn verify_correspondence(
    conf_a: &Configuration,
    conf_b: &Configuration,
    g: &LorentzMap,
) -> Result<CorrespondenceReport> {
    check_pair(conf_a, conf_b)?;
    match conf_a.kind() {
        ConfigurationKind::Balls => {
            let balls_a = conf_a.ball_items()?;
            let balls_b = conf_b.ball_items()?;
            let run = |swap: bool| -> Result<Vec<f64>> {
                balls_a
                    .iter()
                    .zip(balls_b.iter())
                    .map(|(a, b)| {
                        let source = if swap { a.complement() } else { a.clone() };
                        Ok(ball_param_error(&apply_to_ball(g, &source)?, b))
                    })
                    .collect()
            };
            let direct = run(false)?;
            let swapped = run(true)?;
            let max_of = |v: &[f64]| v.iter().cloned().fold(0.0f64, f64::max);
            let (errors, mode) = if max_of(&direct) <= max_of(&swapped) {
                (direct, MatchMode::Direct)
            } else {
                (swapped, MatchMode::ComplementSwapped)
            };
            let gram_residual =
                max_abs_diff(&conf_a.invariant_gram()?, &conf_b.invariant_gram()?);
            let max_error = max_of(&errors);
            Ok(CorrespondenceReport { item_errors: errors, max_error, mode, gram_residual })
        }
        ConfigurationKind::Points => {
            let pts_a = conf_a.point_items()?;
            let pts_b = conf_b.point_items()?;
            let errors: Vec<f64> = pts_a
                .iter()
                .zip(pts_b.iter())
                .map(|(p, q)| chordal_distance(&apply_to_point(g, p)?, q))
                .collect::<Result<_>>()?;
            let gram_residual = if pts_a.len() >= 3 {
                match scale_point_lifts(pts_a, pts_b) {
                    Ok((_, _, dev)) => dev,
                    Err(_) => f64::INFINITY,
                }
            } else {
                0.0
            };
            let max_error = errors.iter().cloned().fold(0.0f64, f64::max);
            Ok(CorrespondenceReport {
                item_errors: errors,
                max_error,
                mode: MatchMode::Direct,
                gram_residual,
            })
        }
    }
}

/// Exhaustive cross-ratio audit over all ordered 4-tuples of distinct
/// indices.
#[derive(Debug, Clone)]
pub struct CrossRatioReport {
    /// Max discrepancy `|cr - cr'| / (1 + min(|cr|, |cr'|))`.
    pub max_discrepancy: f64,
    /// Index tuple attaining the maximum.
    pub witness: [usize; 4],
    /// Number of ordered tuples compared.
    pub tuples: usize,
}

/// Compares absolute cross-ratios over every ordered 4-tuple (`O(m^4)`),
/// from the pairwise lift products. The solver itself checks only the
/// generating family; this is the full audit.
pub fn full_cross_ratio_check(
    conf_a: &Configuration,
    conf_b: &Configuration,
) -> Result<CrossRatioReport> {
    let pts_a = conf_a.point_items()?;
    conf_b.point_items()?;
    check_pair(conf_a, conf_b)?;
    let m = pts_a.len();
    if m < 4 {
        return Err(Error::InvalidInput(format!(
            "cross-ratio audit needs at least 4 points, got {m}"
        )));
    }
    let g_a = conf_a.invariant_gram()?;
    let g_b = conf_b.invariant_gram()?;
    let cr = |g: &DMatrix<f64>, a: usize, b: usize, c: usize, d: usize| -> f64 {
        ((g[(a, b)] * g[(c, d)]) / (g[(a, c)] * g[(b, d)])).max(0.0).sqrt()
    };
    let mut worst = 0.0f64;
    let mut witness = [0usize; 4];
    let mut tuples = 0usize;
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    if a == b || a == c || a == d || b == c || b == d || c == d {
                        continue;
                    }
                    tuples += 1;
                    let ca = cr(&g_a, a, b, c, d);
                    let cb = cr(&g_b, a, b, c, d);
                    let disc = (ca - cb).abs() / (1.0 + ca.abs().min(cb.abs()));
                    if disc > worst {
                        worst = disc;
                        witness = [a, b, c, d];
                    }
                }
            }
        }
    }
    Ok(CrossRatioReport { max_discrepancy: worst, witness, tuples })
}

fn check_pair(conf_a: &Configuration, conf_b: &Configuration) -> Result<()> {
    if conf_a.kind() != conf_b.kind() {
        return Err(Error::WrongKind);
    }
    if conf_a.dim() != conf_b.dim() {
        return Err(Error::DimensionMismatch { left: conf_a.dim(), right: conf_b.dim() });
    }
    if conf_a.len() != conf_b.len() {
        return Err(Error::DimensionMismatch { left: conf_a.len(), right: conf_b.len() });
    }
    if conf_a.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    Ok(())
}
