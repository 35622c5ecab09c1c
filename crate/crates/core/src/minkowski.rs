//! Minkowski vectors and the Lorentz inner product.
//!
//! The ambient space has dimension `M = N + 2` and signature `(M - 1, 1)`,
//! with the time-like coordinate last. Balls of `R^N_inf` lift to space-like
//! unit vectors and boundary points lift to positive light rays; see
//! [`crate::geometry`].

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tol;

/// A vector of Minkowski space of dimension `M >= 3`, signature `(M-1, 1)`.
///
/// Coordinate `M` (the last one) is the time-like coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct MinkVector {
    coords: DVector<f64>,
}

impl MinkVector {
    /// Wraps a coordinate vector. Entries must be finite and `M >= 3`.
    pub fn new(coords: DVector<f64>) -> Result<Self> {
        if coords.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "Minkowski dimension must be at least 3, got {}",
                coords.len()
            )));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite coordinate".into()));
        }
        Ok(Self { coords })
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(DVector::from_row_slice(coords))
    }

    /// Standard basis vector `e_i` (zero-based) in dimension `m`.
    pub fn basis(m: usize, i: usize) -> Self {
        assert!(m >= 3 && i < m);
        let mut v = DVector::zeros(m);
        v[i] = 1.0;
        Self { coords: v }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.coords
    }

    /// The spatial block: coordinates `1..=M-2` in one-based terms.
    pub fn spatial(&self) -> DVector<f64> {
        let m = self.dim();
        DVector::from_iterator(m - 2, self.coords.iter().take(m - 2).copied())
    }

    /// Last coordinate (the time-like one).
    pub fn time(&self) -> f64 {
        self.coords[self.dim() - 1]
    }

    pub fn euclidean_norm(&self) -> f64 {
        self.coords.norm()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { coords: &self.coords * s }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    /// Lorentz self-product `<v, v>`.
    pub fn norm_sq(&self) -> f64 {
        inner_j(&self.coords, &self.coords)
    }

    pub fn causal_class(&self) -> CausalClass {
        causal_class(self)
    }

    pub(crate) fn from_raw(coords: DVector<f64>) -> Self {
        Self { coords }
    }
}

impl std::ops::Add for &MinkVector {
    type Output = MinkVector;
    fn add(self, rhs: &MinkVector) -> MinkVector {
        MinkVector { coords: &self.coords + &rhs.coords }
    }
}

impl std::ops::Sub for &MinkVector {
    type Output = MinkVector;
    fn sub(self, rhs: &MinkVector) -> MinkVector {
        MinkVector { coords: &self.coords - &rhs.coords }
    }
}

/// Sign class of a vector under the Lorentz form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalClass {
    SpaceLike,
    TimeLike,
    LightLike,
    /// The zero vector (within tolerance).
    Zero,
}

/// `<u, v> = u_1 v_1 + ... + u_{M-1} v_{M-1} - u_M v_M`.
pub fn lorentz_inner(u: &MinkVector, v: &MinkVector) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch { left: u.dim(), right: v.dim() });
    }
    Ok(inner_j(&u.coords, &v.coords))
}

/// Raw form evaluation on coordinate vectors of equal length.
pub(crate) fn inner_j(u: &DVector<f64>, v: &DVector<f64>) -> f64 {
    let m = u.len();
    let mut acc = 0.0;
    for i in 0..m - 1 {
        acc += u[i] * v[i];
    }
    acc - u[m - 1] * v[m - 1]
}

/// The matrix `J = diag(1, ..., 1, -1)` of the form.
pub(crate) fn j_matrix(m: usize) -> DMatrix<f64> {
    let mut j = DMatrix::identity(m, m);
    j[(m - 1, m - 1)] = -1.0;
    j
}

/// Classifies by the sign of `<v, v>`, with a relative zero band.
pub fn causal_class(v: &MinkVector) -> CausalClass {
    let n = v.euclidean_norm();
    if n <= tol::TAU_ZERO {
        return CausalClass::Zero;
    }
    let q = v.norm_sq();
    if q.abs() <= tol::TAU_ZERO * n * n {
        CausalClass::LightLike
    } else if q > 0.0 {
        CausalClass::SpaceLike
    } else {
        CausalClass::TimeLike
    }
}

/// Pairwise Lorentz products, computed once per unordered pair so the
/// result is exactly symmetric.
pub fn gram_matrix(vs: &[MinkVector]) -> Result<DMatrix<f64>> {
    let k = vs.len();
    if k == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let m = vs[0].dim();
    for v in vs {
        if v.dim() != m {
            return Err(Error::DimensionMismatch { left: m, right: v.dim() });
        }
    }
    let mut g = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let p = inner_j(&vs[i].coords, &vs[j].coords);
            g[(i, j)] = p;
            g[(j, i)] = p;
        }
    }
    Ok(g)
}

/// Distance on the hyperboloid sheet, `cosh rho(x, y) = -<x, y>`.
///
/// Both arguments must satisfy `<x, x> = -1` and `x_M > 0`.
pub fn hyperbolic_distance(x: &MinkVector, y: &MinkVector) -> Result<f64> {
    for v in [x, y] {
        // relative gate: computing <x, x> loses precision at scale |x|_E^2
        let scale = 1.0 + v.euclidean_norm().powi(2);
        if (v.norm_sq() + 1.0).abs() > 1e-9 * scale || v.time() <= 0.0 {
            return Err(Error::NotOnSheet);
        }
    }
    let c = -lorentz_inner(x, y)?;
    Ok(c.max(1.0).acosh())
}
