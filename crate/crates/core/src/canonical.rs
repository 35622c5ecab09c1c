//! Canonical subspace forms and signature-aware basis completion.
//!
//! Every proper subspace of Minkowski space reduces by a Lorentz map to one
//! of three canonical forms of its dimension `p` (zero-based coordinates,
//! time-like coordinate last, `m = M`):
//!
//! - `T_p = span{e_0, ..., e_{p-2}, e_{m-1}}` (time-like),
//! - `S_p = span{e_0, ..., e_{p-1}}` (space-like),
//! - `L_p = span{e_0, ..., e_{p-2}, e_{p-1} + e_{m-1}}` (light-like).
//!
//! The reduction is built from three stages: a spatial orthogonal map
//! aligning the spatial part of the subspace with a coordinate block, a
//! second spatial orthogonal map concentrating the residual component into
//! one coordinate, and a hyperbolic rotation (or sheet reflection) in that
//! coordinate/time plane.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::minkowski::MinkVector;
use crate::lorentz::LorentzMap;
use crate::span::{analyze_span, complete_orthonormal, SpanKind};
use crate::tol;

/// Which canonical subspace a span reduces to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalForm {
    pub kind: SpanKind,
    pub dim: usize,
}

impl CanonicalForm {
    /// Max violation of membership in the canonical subspace: coordinates
    /// outside the canonical support, plus the light-pair constraint for
    /// `L_p`.
    pub fn membership_residual(&self, v: &MinkVector) -> f64 {
        let m = v.dim();
        let p = self.dim;
        let c = v.coords();
        let mut r = 0.0f64;
        match self.kind {
            SpanKind::SpaceLike => {
                for i in p..m {
                    r = r.max(c[i].abs());
                }
            }
            SpanKind::TimeLike => {
                for i in p.saturating_sub(1)..m - 1 {
                    r = r.max(c[i].abs());
                }
            }
            SpanKind::LightLike => {
                for i in p..m - 1 {
                    r = r.max(c[i].abs());
                }
                r = r.max((c[p - 1] - c[m - 1]).abs());
            }
        }
        r
    }
}

/// Reduces `span(vs)` to its canonical form: returns a Lorentz map `phi`
/// with `phi(span(vs))` equal to the canonical subspace of the returned
/// form. Requires `1 <= dim span < M`.
pub fn canonicalize_subspace(vs: &[MinkVector]) -> Result<(LorentzMap, CanonicalForm)> {
    let analysis = analyze_span(vs)?;
    let m = vs[0].dim();
    let p = analysis.class.dim;
    if p == m {
        return Err(Error::FullSpace);
    }

    let basis = &analysis.ortho_basis;

    // Stage 1: split off the intersection with the spatial hyperplane
    // {x_{m-1} = 0}. Its dimension is p or p-1.
    let rho: Vec<f64> = basis.iter().map(|b| b[m - 1]).collect();
    let rho_norm = rho.iter().map(|x| x * x).sum::<f64>().sqrt();
    let contained_in_spatial = rho_norm <= 1e-12;

    let spatial_members: Vec<DVector<f64>> = if contained_in_spatial {
        basis.clone()
    } else {
        // Null combinations of the last-coordinate row.
        let jmax = rho
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .map(|(i, _)| i)
            .unwrap();
        let mut out = Vec::with_capacity(p - 1);
        for j in 0..p {
            if j == jmax {
                continue;
            }
            let mut s = basis[j].clone() - &basis[jmax] * (rho[j] / rho[jmax]);
            s[m - 1] = 0.0;
            out.push(s);
        }
        out
    };

    // Orthonormalize the spatial members inside R^{m-1}.
    let mut q1: Vec<DVector<f64>> = Vec::with_capacity(spatial_members.len());
    for s in &spatial_members {
        let mut r = DVector::from_iterator(m - 1, s.iter().take(m - 1).copied());
        for q in &q1 {
            let c = q.dot(&r);
            r -= q * c;
        }
        let n = r.norm();
        if n <= 1e-12 {
            continue;
        }
        q1.push(r / n);
    }
    let k = q1.len();
    let q2 = complete_orthonormal(&q1, m - 1);
    let mut alpha = DMatrix::identity(m, m);
    for (row, q) in q1.iter().chain(q2.iter()).enumerate() {
        for col in 0..m - 1 {
            alpha[(row, col)] = q[col];
        }
    }
    let alpha = LorentzMap::from_raw(alpha);

    if contained_in_spatial {
        return Ok((alpha, CanonicalForm { kind: SpanKind::SpaceLike, dim: p }));
    }

    // Stage 2: pick the representative outside the spatial hyperplane,
    // strip its aligned block, and concentrate the rest into coordinate
    // p-1 by a Householder reflection.
    let pick = basis
        .iter()
        .max_by(|a, b| a[m - 1].abs().total_cmp(&b[m - 1].abs()))
        .unwrap();
    let u = alpha.apply(&MinkVector::from_raw(pick.clone()))?;
    let mut v = u.coords().clone();
    for i in 0..k {
        v[i] = 0.0;
    }

    let block = m - p; // spatial indices p-1 ..= m-2
    let s = DVector::from_iterator(block, (p - 1..m - 1).map(|i| v[i]));
    let s_norm = s.norm();
    let mut beta = DMatrix::identity(m, m);
    if s_norm > 0.0 {
        let mut h_vec = s.clone();
        h_vec[0] -= s_norm;
        let hn2 = h_vec.norm_squared();
        if hn2 > 1e-300 {
            for a in 0..block {
                for b in 0..block {
                    let delta = if a == b { 1.0 } else { 0.0 };
                    beta[(p - 1 + a, p - 1 + b)] = delta - 2.0 * h_vec[a] * h_vec[b] / hn2;
                }
            }
        }
    }
    let beta = LorentzMap::from_raw(beta);

    // Stage 3: the surviving vector has support (w_p, w_time); rotate or
    // reflect it onto the canonical representative.
    let wp = s_norm;
    let wt = v[m - 1];
    let scale = wp.hypot(wt);
    let (gamma, kind) = if (wp - wt).abs() <= 1e-10 * scale {
        (LorentzMap::identity(m), SpanKind::LightLike)
    } else if (wp + wt).abs() <= 1e-10 * scale {
        (LorentzMap::time_reflection(m), SpanKind::LightLike)
    } else {
        let q = wp * wp - wt * wt;
        let ell = q.abs().sqrt();
        if q > 0.0 {
            (LorentzMap::boost_ab(m, p - 1, wp / ell, -wt / ell), SpanKind::SpaceLike)
        } else {
            (LorentzMap::boost_ab(m, p - 1, wt / ell, -wp / ell), SpanKind::TimeLike)
        }
    };

    let phi = gamma.compose(&beta).compose(&alpha);
    Ok((phi, CanonicalForm { kind, dim: p }))
}

/// J-orthonormalizes an independent non-degenerate set via the spectral
/// decomposition of its restricted Gram, applying the same coefficients to
/// a mirror set (whose Gram is assumed equal). Returns both frames and the
/// norm signs, sorted space-like first.
pub(crate) fn j_orthonormalize_pair(
    b: &[MinkVector],
    mirror: &[MinkVector],
) -> Result<(Vec<MinkVector>, Vec<MinkVector>, Vec<f64>)> {
    let g = crate::minkowski::gram_matrix(b)?;
    let eig = SymmetricEigen::new(g);
    let max_abs = eig.eigenvalues.iter().fold(0.0f64, |a, &l| a.max(l.abs()));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));

    let mut out_a = Vec::with_capacity(order.len());
    let mut out_b = Vec::with_capacity(order.len());
    let mut signs = Vec::with_capacity(order.len());
    for &idx in &order {
        let lambda = eig.eigenvalues[idx];
        if lambda.abs() <= tol::TAU_RANK_REL * max_abs.max(1.0) {
            return Err(Error::DegenerateSpan);
        }
        let inv_sqrt = 1.0 / lambda.abs().sqrt();
        let col = eig.eigenvectors.column(idx);
        let m = b[0].dim();
        let mut va = DVector::zeros(m);
        let mut vb = DVector::zeros(m);
        for (kk, (ba, bb)) in b.iter().zip(mirror.iter()).enumerate() {
            va += ba.coords() * (col[kk] * inv_sqrt);
            vb += bb.coords() * (col[kk] * inv_sqrt);
        }
        out_a.push(MinkVector::from_raw(va));
        out_b.push(MinkVector::from_raw(vb));
        signs.push(lambda.signum());
    }
    Ok((out_a, out_b, signs))
}

/// Extends an independent non-degenerate set to a Lorentz-orthonormal
/// frame: returns `M - p` vectors spanning the Lorentz complement with
/// self-products `+-1`, space-like first and the time-like vector (if any)
/// last and positive.
pub fn complete_to_lorentz_basis(vs: &[MinkVector]) -> Result<Vec<MinkVector>> {
    let analysis = analyze_span(vs)?;
    if analysis.class.kind == SpanKind::LightLike {
        return Err(Error::DegenerateSpan);
    }
    if analysis.class.dim < vs.len() {
        return Err(Error::InvalidInput("input vectors are not linearly independent".into()));
    }
    let m = vs[0].dim();
    if analysis.class.dim == m {
        return Ok(Vec::new());
    }

    let complement: Vec<MinkVector> = complete_orthonormal(&analysis.ortho_basis, m)
        .into_iter()
        .map(|mut w| {
            let last = w.len() - 1;
            w[last] = -w[last];
            MinkVector::from_raw(w)
        })
        .collect();

    let (mut frame, _, signs) = j_orthonormalize_pair(&complement, &complement)?;
    for (w, &sign) in frame.iter_mut().zip(&signs) {
        // Deterministic orientation: positive time component for the
        // time-like vector, positive leading coordinate otherwise.
        let flip = if sign < 0.0 {
            w.time() < 0.0
        } else {
            let lead = w
                .coords()
                .iter()
                .cloned()
                .max_by(|a, b| a.abs().total_cmp(&b.abs()))
                .unwrap_or(0.0);
            lead < 0.0
        };
        if flip {
            *w = w.neg();
        }
    }
    Ok(frame)
}
