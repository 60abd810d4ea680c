//! Finite complex matrix block with eagerly computed spectral data. The
//! eigenvalues come from a Schur decomposition at construction time, the
//! operator norm from the largest singular value, and resolvent norms from
//! the smallest singular value of the shifted matrix. All quantities are
//! honest for non-normal matrices; no normality shortcut is taken.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::oracle::DIM_CAP;
use crate::spectral::{ComplexPoint, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMatrixOperator {
    matrix: DMatrix<ComplexPoint>,
    eigenvalues: Vec<ComplexPoint>,
    norm: f64,
}

impl FiniteMatrixOperator {
    pub fn new(matrix: DMatrix<ComplexPoint>) -> Result<Self> {
        if matrix.nrows() == 0 || matrix.nrows() != matrix.ncols() {
            return Err(Error::InvalidInput(format!(
                "matrix: need a nonempty square matrix, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.nrows() > DIM_CAP {
            return Err(Error::DimensionCap {
                dim: matrix.nrows(),
                cap: DIM_CAP,
            });
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(
                "matrix: entries must be finite".into(),
            ));
        }
        let eig = matrix
            .clone()
            .eigenvalues()
            .ok_or(Error::EigensolveFailure(matrix.nrows()))?;
        let mut eigenvalues: Vec<ComplexPoint> = eig.iter().copied().collect();
        eigenvalues.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        let norm = matrix
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .fold(0.0, f64::max);
        Ok(FiniteMatrixOperator {
            matrix,
            eigenvalues,
            norm,
        })
    }

    pub fn from_rows(rows: Vec<Vec<ComplexPoint>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput(
                "matrix: rows must form a nonempty square".into(),
            ));
        }
        let flat: Vec<ComplexPoint> = rows.into_iter().flatten().collect();
        FiniteMatrixOperator::new(DMatrix::from_row_slice(n, n, &flat))
    }

    pub fn matrix(&self) -> &DMatrix<ComplexPoint> {
        &self.matrix
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    /// Eigenvalues with algebraic multiplicity, sorted by (re, im).
    pub fn eigenvalues(&self) -> &[ComplexPoint] {
        &self.eigenvalues
    }

    pub fn point_contains(&self, lambda: ComplexPoint, tol: &Tolerance) -> bool {
        self.eigenvalues
            .iter()
            .any(|e| (lambda - e).norm() <= tol.eps_membership)
    }

    /// Exact resolvent norm 1 / sigma_min(A - lambda I); None when lambda
    /// is an eigenvalue (within eps) or the shifted matrix is numerically
    /// singular.
    pub fn resolvent_norm(&self, lambda: ComplexPoint, tol: &Tolerance) -> Option<f64> {
        if self.point_contains(lambda, tol) {
            return None;
        }
        let mut shifted = self.matrix.clone();
        for i in 0..shifted.nrows() {
            shifted[(i, i)] -= lambda;
        }
        let sigma_min = shifted
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        (sigma_min > 0.0).then(|| 1.0 / sigma_min)
    }

    /// A finite block only truncates to its own size or larger.
    pub fn truncate(&self, n: usize) -> Result<DMatrix<ComplexPoint>> {
        if n < self.dimension() {
            return Err(Error::InvalidInput(format!(
                "matrix: block of dimension {} cannot shrink to {n}",
                self.dimension()
            )));
        }
        Ok(self.matrix.clone())
    }

    pub fn counting(&self, lambda: f64) -> Result<u64> {
        Ok(self
            .eigenvalues
            .iter()
            .filter(|e| e.norm() <= lambda)
            .count() as u64)
    }

    pub fn eigenvalues_up_to(&self, lambda: f64) -> Result<Vec<ComplexPoint>> {
        Ok(self
            .eigenvalues
            .iter()
            .copied()
            .filter(|e| e.norm() <= lambda)
            .collect())
    }

    pub fn covers_counting(&self, _lambda: f64, n: usize) -> bool {
        n >= self.dimension()
    }

    pub fn operator_norm(&self) -> f64 {
        self.norm
    }

    pub fn min_eigenvalue_modulus(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|e| e.norm())
            .fold(f64::INFINITY, f64::min)
    }
}
