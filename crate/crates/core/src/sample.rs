//! Seeded instance generation for tests and tooling.
//!
//! Every generator is deterministic in its seed. A structure constrains
//! the span class of the generated lifts, mirroring the uniqueness cases:
//! `Full` aims for a full span, `StronglySymmetric` keeps every boundary
//! orthogonal to the unit sphere, `CommonSphere` puts every point on the
//! unit sphere, and `CommonPoint` runs every boundary through the origin.

use nalgebra::DVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{chordal_distance, ExtendedPoint, OrientedBall, Side};
use crate::lorentz::{random_lorentz, LorentzMap};
use crate::solver::{Configuration, ConfigurationKind};
use crate::span::classify_span;

/// Span constraint for generated configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    Full,
    StronglySymmetric,
    CommonSphere,
    CommonPoint,
}

fn random_side(rng: &mut ChaCha8Rng) -> Side {
    if rng.random_bool(0.5) {
        Side::Inside
    } else {
        Side::Outside
    }
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(dim, |_, _| rng.random_range(-1.0..1.0));
        let n = v.norm();
        if n > 1e-3 {
            return v / n;
        }
    }
}

/// One unconstrained ball: mostly spheres, occasionally a half-space.
pub fn random_ball(rng: &mut ChaCha8Rng, dim: usize) -> OrientedBall {
    if rng.random_bool(0.2) {
        let normal = random_unit(rng, dim);
        let offset = rng.random_range(-2.0..2.0);
        OrientedBall::half_space(normal, offset).expect("unit normal")
    } else {
        let center = DVector::from_fn(dim, |_, _| rng.random_range(-3.0..3.0));
        let radius = rng.random_range(0.3..2.5);
        OrientedBall::sphere(center, radius, random_side(rng)).expect("positive radius")
    }
}

/// One unconstrained point, occasionally the point at infinity.
pub fn random_point(rng: &mut ChaCha8Rng, dim: usize) -> ExtendedPoint {
    if rng.random_bool(0.05) {
        ExtendedPoint::Infinity(dim)
    } else {
        ExtendedPoint::Finite(DVector::from_fn(dim, |_, _| rng.random_range(-3.0..3.0)))
    }
}

fn structured_ball(rng: &mut ChaCha8Rng, dim: usize, structure: Structure) -> OrientedBall {
    match structure {
        Structure::Full => random_ball(rng, dim),
        // |c|^2 = r^2 + 1 puts the boundary orthogonal to the unit sphere;
        // a plane through the origin does the same.
        Structure::StronglySymmetric => {
            if rng.random_bool(0.2) {
                OrientedBall::half_space(random_unit(rng, dim), 0.0).expect("unit normal")
            } else {
                let center = random_unit(rng, dim) * rng.random_range(1.2..3.0);
                let radius = (center.norm_squared() - 1.0).sqrt();
                OrientedBall::sphere(center, radius, random_side(rng)).expect("positive radius")
            }
        }
        // |c| = r or a plane through the origin: every boundary hits 0.
        Structure::CommonPoint => {
            if rng.random_bool(0.2) {
                OrientedBall::half_space(random_unit(rng, dim), 0.0).expect("unit normal")
            } else {
                let center = random_unit(rng, dim) * rng.random_range(0.5..3.0);
                let radius = center.norm();
                OrientedBall::sphere(center, radius, random_side(rng)).expect("positive radius")
            }
        }
        Structure::CommonSphere => panic!("common-sphere applies to points"),
    }
}

fn structured_point(rng: &mut ChaCha8Rng, dim: usize, structure: Structure) -> ExtendedPoint {
    match structure {
        Structure::Full => random_point(rng, dim),
        Structure::CommonSphere => ExtendedPoint::Finite(random_unit(rng, dim)),
        _ => panic!("structure applies to balls"),
    }
}

/// A labeled ball configuration. With `Structure::Full` and `n >= dim + 2`
/// the generator retries until the lifts span the full Minkowski space.
pub fn random_balls(seed: u64, n: usize, dim: usize, structure: Structure) -> Result<Configuration> {
    if matches!(structure, Structure::CommonSphere) {
        return Err(Error::InvalidInput("common-sphere applies to points".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = dim + 2;
    for _ in 0..64 {
        let entries: Vec<(String, OrientedBall)> = (0..n)
            .map(|i| (format!("b{i}"), structured_ball(&mut rng, dim, structure)))
            .collect();
        let conf = Configuration::balls(dim, entries)?;
        if structure == Structure::Full && n >= m {
            match classify_span(&conf.lifts()) {
                Ok(c) if c.dim == m => return Ok(conf),
                _ => continue,
            }
        }
        return Ok(conf);
    }
    Err(Error::InvalidInput(format!(
        "could not generate a full-span ball configuration with n = {n}, dim = {dim}"
    )))
}

/// A labeled configuration of pairwise well-separated points.
pub fn random_points(seed: u64, n: usize, dim: usize, structure: Structure) -> Result<Configuration> {
    if matches!(structure, Structure::StronglySymmetric | Structure::CommonPoint) {
        return Err(Error::InvalidInput("structure applies to balls".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<ExtendedPoint> = Vec::with_capacity(n);
    while points.len() < n {
        let p = structured_point(&mut rng, dim, structure);
        let separated = points
            .iter()
            .all(|q| chordal_distance(q, &p).map(|d| d > 1e-3).unwrap_or(false));
        if separated {
            points.push(p);
        }
    }
    Configuration::points(
        dim,
        points.into_iter().enumerate().map(|(i, p)| (format!("p{i}"), p)).collect(),
    )
}

/// A solvable instance: a configuration `A`, its image `B = g(A)` under a
/// seeded positive Lorentz map, and `g` itself.
pub fn generate_pair(
    seed: u64,
    kind: ConfigurationKind,
    n: usize,
    dim: usize,
    structure: Structure,
) -> Result<(Configuration, Configuration, LorentzMap)> {
    let a = match kind {
        ConfigurationKind::Balls => random_balls(seed, n, dim, structure)?,
        ConfigurationKind::Points => random_points(seed, n, dim, structure)?,
    };
    // skip deterministically past ill-conditioned boost products: entries
    // above ~1e2 square into roundoff that drowns the verification bounds
    let base = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(1);
    let g = (0..)
        .map(|k| random_lorentz(base.wrapping_add(k), dim + 2))
        .find(|g| g.matrix().iter().all(|x| x.abs() <= 1e2))
        .unwrap();
    let b = a.apply(&g)?;
    Ok((a, b, g))
}
