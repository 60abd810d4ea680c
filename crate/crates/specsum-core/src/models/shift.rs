//! Unilateral right shift on l^2: (x_1, x_2, ...) -> (0, x_1, x_2, ...).
//! The closed unit disk is its spectrum: the open disk is residual spectrum
//! (eigenvalue-free, with non-dense range), the unit circle is continuous
//! spectrum, and the point spectrum is empty.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::spectral::{ComplexPoint, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ShiftOperator;

impl ShiftOperator {
    pub fn new() -> Self {
        ShiftOperator
    }

    /// Signed distance from the unit circle; negative inside the disk.
    fn circle_gap(lambda: ComplexPoint) -> f64 {
        lambda.norm() - 1.0
    }

    pub fn point_contains(&self, _lambda: ComplexPoint, _tol: &Tolerance) -> bool {
        false
    }

    pub fn residual_contains(&self, lambda: ComplexPoint, tol: &Tolerance) -> bool {
        Self::circle_gap(lambda) < -tol.eps_membership
    }

    pub fn continuous_contains(&self, lambda: ComplexPoint, tol: &Tolerance) -> bool {
        Self::circle_gap(lambda).abs() <= tol.eps_membership
    }

    /// 1 / (|lambda| - 1) outside the closed disk; None on or inside it.
    pub fn resolvent_norm(&self, lambda: ComplexPoint, tol: &Tolerance) -> Option<f64> {
        let gap = Self::circle_gap(lambda);
        (gap > tol.eps_membership).then(|| 1.0 / gap)
    }

    /// The n-by-n corner: ones on the subdiagonal.
    pub fn truncate(&self, n: usize) -> Result<DMatrix<ComplexPoint>> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "shift: truncation size must be positive".into(),
            ));
        }
        let mut a = DMatrix::zeros(n, n);
        for i in 0..n - 1 {
            a[(i + 1, i)] = ComplexPoint::new(1.0, 0.0);
        }
        Ok(a)
    }

    pub fn counting(&self, _lambda: f64) -> Result<u64> {
        Err(Error::UnsupportedModel(
            "shift: empty point spectrum admits no eigenvalue counting".into(),
        ))
    }

    pub fn eigenvalues_up_to(&self, _lambda: f64) -> Result<Vec<ComplexPoint>> {
        Err(Error::UnsupportedModel(
            "shift: empty point spectrum admits no eigenvalue enumeration".into(),
        ))
    }

    pub fn operator_norm(&self) -> f64 {
        1.0
    }

    pub fn is_compact(&self) -> bool {
        false
    }

    pub fn has_compact_resolvent(&self) -> bool {
        false
    }
}
