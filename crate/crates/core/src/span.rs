//! Subspace analysis: rank, causal trichotomy, and Lorentz complements.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::minkowski::{gram_matrix, MinkVector};
use crate::tol;

/// Causal kind of a subspace: space-like if every non-zero element is
/// space-like, time-like if it contains a time-like vector, light-like
/// otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpanKind {
    SpaceLike,
    TimeLike,
    LightLike,
}

/// Kind and dimension of a span.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubspaceClass {
    pub kind: SpanKind,
    pub dim: usize,
}

/// Everything the solvers need about a span: its class, a maximal
/// independent subset (pivot indices into the input), and a Euclidean
/// orthonormal basis of the span.
pub(crate) struct SpanAnalysis {
    pub class: SubspaceClass,
    pub pivots: Vec<usize>,
    pub ortho_basis: Vec<DVector<f64>>,
}

/// Rank decision from singular values: refuses inside the band
/// `(tau, RANK_BAND * tau)` relative to the largest value.
fn decide_rank(sv: &[f64]) -> Result<usize> {
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return Ok(0);
    }
    let lo = tol::TAU_RANK_REL * smax;
    let hi = tol::RANK_BAND * lo;
    let mut rank = 0;
    for &s in sv {
        if s >= hi {
            rank += 1;
        } else if s > lo {
            return Err(Error::RankAmbiguous { value: s, lo, hi });
        }
    }
    Ok(rank)
}

pub(crate) fn analyze_span(vs: &[MinkVector]) -> Result<SpanAnalysis> {
    if vs.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    let m = vs[0].dim();
    for v in vs {
        if v.dim() != m {
            return Err(Error::DimensionMismatch { left: m, right: v.dim() });
        }
    }
    if vs.iter().all(|v| v.euclidean_norm() <= tol::TAU_ZERO) {
        return Err(Error::AllZero);
    }

    // Rank is invariant under scaling each vector; normalizing the columns
    // keeps the singular-value band meaningful when magnitudes vary widely.
    let cols: Vec<DVector<f64>> = vs
        .iter()
        .map(|v| {
            let c = v.coords().clone();
            let n = c.norm();
            if n > tol::TAU_ZERO {
                c / n
            } else {
                c
            }
        })
        .collect();
    let a = DMatrix::from_columns(&cols);
    let sv: Vec<f64> = a.svd(false, false).singular_values.iter().cloned().collect();
    let rank = decide_rank(&sv)?;

    // Column-pivoted modified Gram-Schmidt to pick an independent subset.
    let mut residuals: Vec<DVector<f64>> = cols;
    let mut pivots = Vec::with_capacity(rank);
    let mut ortho_basis = Vec::with_capacity(rank);
    for _ in 0..rank {
        let (best, _) = residuals
            .iter()
            .enumerate()
            .filter(|(i, _)| !pivots.contains(i))
            .map(|(i, r)| (i, r.norm()))
            .fold((usize::MAX, -1.0), |acc, (i, n)| if n > acc.1 { (i, n) } else { acc });
        let q = residuals[best].normalize();
        for (i, r) in residuals.iter_mut().enumerate() {
            if i != best {
                let c = q.dot(r);
                *r -= &q * c;
            }
        }
        pivots.push(best);
        ortho_basis.push(q);
    }
    pivots.sort_unstable();

    let pivot_vecs: Vec<MinkVector> = pivots.iter().map(|&i| vs[i].clone()).collect();
    let g = gram_matrix(&pivot_vecs)?;
    let kind = classify_gram(&g, &pivot_vecs);

    Ok(SpanAnalysis {
        class: SubspaceClass { kind, dim: rank },
        pivots,
        ortho_basis,
    })
}

/// Trichotomy from the eigenvalues of the restricted Gram of an independent
/// set: one negative eigenvalue means time-like, positive definite means
/// space-like, positive semidefinite and singular means light-like.
fn classify_gram(g: &DMatrix<f64>, vecs: &[MinkVector]) -> SpanKind {
    let eig = SymmetricEigen::new(g.clone());
    let max_abs = eig.eigenvalues.iter().fold(0.0f64, |a, &l| a.max(l.abs()));
    // Scale against Euclidean column norms as well: a Gram that is nearly
    // zero (e.g. a single light ray) must not be measured against itself.
    let col_scale = vecs.iter().fold(0.0f64, |a, v| {
        let n = v.euclidean_norm();
        a.max(n * n)
    });
    let eps = tol::TAU_RANK_REL * max_abs.max(col_scale).max(f64::MIN_POSITIVE);
    let negatives = eig.eigenvalues.iter().filter(|&&l| l < -eps).count();
    let nulls = eig.eigenvalues.iter().filter(|&&l| l.abs() <= eps).count();
    if negatives >= 1 {
        SpanKind::TimeLike
    } else if nulls >= 1 {
        SpanKind::LightLike
    } else {
        SpanKind::SpaceLike
    }
}

/// Kind and dimension of `span(vs)`.
pub fn classify_span(vs: &[MinkVector]) -> Result<SubspaceClass> {
    Ok(analyze_span(vs)?.class)
}

/// Extends a Euclidean-orthonormal set to an orthonormal basis of `R^m`,
/// returning only the new vectors.
pub(crate) fn complete_orthonormal(q: &[DVector<f64>], m: usize) -> Vec<DVector<f64>> {
    let mut basis: Vec<DVector<f64>> = q.to_vec();
    let mut extra = Vec::new();
    while basis.len() < m {
        // Pick the standard basis vector with the largest residual.
        let mut best: Option<(f64, DVector<f64>)> = None;
        for i in 0..m {
            let mut r = DVector::zeros(m);
            r[i] = 1.0;
            for b in &basis {
                let c = b.dot(&r);
                r -= b * c;
            }
            let n = r.norm();
            if best.as_ref().is_none_or(|(bn, _)| n > *bn) {
                best = Some((n, r));
            }
        }
        let (n, r) = best.unwrap();
        let q = r / n;
        basis.push(q.clone());
        extra.push(q);
    }
    extra
}

/// Basis of the Lorentz complement `V^L = { y : <x, y> = 0 for all x in V }`.
///
/// Uses the identity `V^L = J (V^perp)` with `V^perp` the Euclidean
/// orthogonal complement.
pub fn lorentz_complement(vs: &[MinkVector]) -> Result<Vec<MinkVector>> {
    let analysis = analyze_span(vs)?;
    let m = vs[0].dim();
    let extra = complete_orthonormal(&analysis.ortho_basis, m);
    Ok(extra
        .into_iter()
        .map(|mut w| {
            let last = w.len() - 1;
            w[last] = -w[last];
            MinkVector::from_raw(w)
        })
        .collect())
}
