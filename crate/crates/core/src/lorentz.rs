//! Lorentz transformations as `M x M` matrices with `G^T J G = J`.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::minkowski::{j_matrix, MinkVector};
use crate::tol;

/// A linear map preserving the Lorentz form; the computational
/// representation of a Mobius transformation. Positive maps fix the upper
/// hyperboloid sheet, non-positive ones swap the sheets.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzMap {
    matrix: DMatrix<f64>,
}

/// Residual report from [`LorentzMap::validate`].
#[derive(Debug, Clone, Copy)]
pub struct LorentzReport {
    /// Max-abs entry of `G^T J G - J`.
    pub residual: f64,
    /// The `(M, M)` entry; `|corner| >= 1` for a true Lorentz map.
    pub corner: f64,
    /// True iff the `(M, M)` entry is positive.
    pub positive: bool,
}

impl LorentzMap {
    /// Validates the form residual at the default tolerance.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        Self::with_tolerance(matrix, tol::TAU_LORENTZ)
    }

    /// Validates the form residual at a caller tolerance.
    pub fn with_tolerance(matrix: DMatrix<f64>, tolerance: f64) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() < 3 {
            return Err(Error::InvalidInput(format!(
                "expected a square matrix of size >= 3, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        let map = Self { matrix };
        let report = map.validate();
        if report.residual > tolerance || report.corner.abs() < 1.0 - tolerance {
            return Err(Error::InvalidInput(format!(
                "matrix does not preserve the Lorentz form: residual {:.3e}, corner {:.6}",
                report.residual, report.corner
            )));
        }
        Ok(map)
    }

    pub(crate) fn from_raw(matrix: DMatrix<f64>) -> Self {
        Self { matrix }
    }

    pub fn identity(m: usize) -> Self {
        Self { matrix: DMatrix::identity(m, m) }
    }

    /// Rotation by `angle` in the space-like coordinate plane `(i, j)`,
    /// zero-based, both < M-1.
    pub fn rotation(m: usize, i: usize, j: usize, angle: f64) -> Self {
        assert!(i < m - 1 && j < m - 1 && i != j);
        let mut g = DMatrix::identity(m, m);
        let (c, s) = (angle.cos(), angle.sin());
        g[(i, i)] = c;
        g[(j, j)] = c;
        g[(i, j)] = -s;
        g[(j, i)] = s;
        Self { matrix: g }
    }

    /// The matrix `A[a, b]` with `a^2 - b^2 = 1`: identity except entries
    /// `(i, i) = (M, M) = a` and `(i, M) = (M, i) = b`, zero-based `i < M-1`.
    pub fn boost_ab(m: usize, i: usize, a: f64, b: f64) -> Self {
        assert!(i < m - 1);
        let mut g = DMatrix::identity(m, m);
        g[(i, i)] = a;
        g[(m - 1, m - 1)] = a;
        g[(i, m - 1)] = b;
        g[(m - 1, i)] = b;
        Self { matrix: g }
    }

    /// Hyperbolic rotation `A[cosh t, sinh t]` in the `(i, M)` plane.
    pub fn boost(m: usize, i: usize, t: f64) -> Self {
        Self::boost_ab(m, i, t.cosh(), t.sinh())
    }

    /// `diag(1, ..., 1, -1)`: swaps the hyperboloid sheets.
    pub fn time_reflection(m: usize) -> Self {
        Self { matrix: j_matrix(m) }
    }

    /// Lorentz reflection through the hyperplane orthogonal to a
    /// space-like vector: negates `v`, fixes its Lorentz complement.
    /// Always positive.
    pub fn reflection(v: &MinkVector) -> Result<Self> {
        let q = v.norm_sq();
        if q <= 0.0 {
            return Err(Error::NotSpaceLike);
        }
        let m = v.dim();
        let c = v.coords();
        let matrix = DMatrix::identity(m, m) - (c * (c.transpose() * j_matrix(m))) * (2.0 / q);
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// True iff the `(M, M)` entry is positive.
    pub fn positivity(&self) -> bool {
        let m = self.dim();
        self.matrix[(m - 1, m - 1)] > 0.0
    }

    /// Residuals of the defining identity `G^T J G = J`, report-only.
    pub fn validate(&self) -> LorentzReport {
        let m = self.dim();
        let j = j_matrix(m);
        let res = self.matrix.transpose() * &j * &self.matrix - &j;
        let residual = res.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        let corner = self.matrix[(m - 1, m - 1)];
        LorentzReport { residual, corner, positive: corner > 0.0 }
    }

    pub fn apply(&self, v: &MinkVector) -> Result<MinkVector> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: v.dim() });
        }
        Ok(MinkVector::from_raw(&self.matrix * v.coords()))
    }

    /// `self` after `other`: `(self.compose(other))(v) = self(other(v))`.
    pub fn compose(&self, other: &LorentzMap) -> LorentzMap {
        LorentzMap { matrix: &self.matrix * &other.matrix }
    }

    /// Exact inverse via the form: `G^{-1} = J G^T J`.
    pub fn inverse(&self) -> LorentzMap {
        let j = j_matrix(self.dim());
        LorentzMap { matrix: &j * self.matrix.transpose() * &j }
    }

    pub fn negate(&self) -> LorentzMap {
        LorentzMap { matrix: -&self.matrix }
    }
}

/// Deterministic pseudo-random positive Lorentz map: a product of `2M`
/// elementary generators (space-like rotations and boosts with
/// `t in [-2, 2]`, keeping condition numbers modest).
pub fn random_lorentz(seed: u64, m: usize) -> LorentzMap {
    assert!(m >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = LorentzMap::identity(m);
    for _ in 0..2 * m {
        let elem = if rng.random_bool(0.5) {
            let i = rng.random_range(0..m - 1);
            let mut j = rng.random_range(0..m - 2);
            if j >= i {
                j += 1;
            }
            let angle = rng.random_range(0.0..std::f64::consts::TAU);
            LorentzMap::rotation(m, i, j, angle)
        } else {
            let i = rng.random_range(0..m - 1);
            let t = rng.random_range(-2.0..2.0);
            LorentzMap::boost(m, i, t)
        };
        g = elem.compose(&g);
    }
    g
}
