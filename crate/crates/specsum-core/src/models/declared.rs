//! Operator described only through declared spectral sets: finite lists of
//! point, residual, and continuous spectrum locations. Stands in for
//! coordinates whose spectra are known from theory rather than computed.
//! Carries no eigenvector or multiplicity data, so counting queries are
//! unsupported and the operator norm is unknown.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::spectral::{ComplexPoint, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct DeclaredOperator {
    point: Vec<ComplexPoint>,
    residual: Vec<ComplexPoint>,
    continuous: Vec<ComplexPoint>,
    compact_resolvent: bool,
}

impl DeclaredOperator {
    pub fn new(
        point: Vec<ComplexPoint>,
        residual: Vec<ComplexPoint>,
        continuous: Vec<ComplexPoint>,
        compact_resolvent: bool,
    ) -> Result<Self> {
        if point.is_empty() && residual.is_empty() && continuous.is_empty() {
            return Err(Error::InvalidInput(
                "declared: at least one spectral set must be nonempty".into(),
            ));
        }
        for set in [&point, &residual, &continuous] {
            if set.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidInput(
                    "declared: spectral points must be finite".into(),
                ));
            }
        }
        // the three parts of a spectrum are disjoint by definition
        let pairs = [
            (&point, &residual, "point", "residual"),
            (&point, &continuous, "point", "continuous"),
            (&residual, &continuous, "residual", "continuous"),
        ];
        for (a, b, na, nb) in pairs {
            for x in a.iter() {
                for y in b.iter() {
                    if (x - y).norm() <= 1e-12 {
                        return Err(Error::InvalidInput(format!(
                            "declared: {x} appears in both the {na} and {nb} sets"
                        )));
                    }
                }
            }
        }
        Ok(DeclaredOperator {
            point,
            residual,
            continuous,
            compact_resolvent,
        })
    }

    pub fn point_set(&self) -> &[ComplexPoint] {
        &self.point
    }

    pub fn residual_set(&self) -> &[ComplexPoint] {
        &self.residual
    }

    pub fn continuous_set(&self) -> &[ComplexPoint] {
        &self.continuous
    }

    fn near(set: &[ComplexPoint], lambda: ComplexPoint, eps: f64) -> bool {
        set.iter().any(|p| (lambda - p).norm() <= eps)
    }

    pub fn point_contains(&self, lambda: ComplexPoint, tol: &Tolerance) -> bool {
        Self::near(&self.point, lambda, tol.eps_membership)
    }

    pub fn residual_contains(&self, lambda: ComplexPoint, tol: &Tolerance) -> bool {
        Self::near(&self.residual, lambda, tol.eps_membership)
    }

    pub fn continuous_contains(&self, lambda: ComplexPoint, tol: &Tolerance) -> bool {
        Self::near(&self.continuous, lambda, tol.eps_membership)
    }

    /// Distance to the union of the declared sets.
    pub fn spectrum_distance(&self, lambda: ComplexPoint) -> f64 {
        self.point
            .iter()
            .chain(&self.residual)
            .chain(&self.continuous)
            .map(|p| (lambda - p).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// 1 / dist(lambda, declared spectrum); None within eps of it. Exact
    /// when the true spectrum is the declared set and the operator is
    /// normal, an upper-bound model otherwise.
    pub fn resolvent_norm(&self, lambda: ComplexPoint, tol: &Tolerance) -> Option<f64> {
        let d = self.spectrum_distance(lambda);
        (d > tol.eps_membership).then(|| 1.0 / d)
    }

    /// Truncation keeps only what is representable finitely: a diagonal of
    /// the declared eigenvalues.
    pub fn truncate(&self, n: usize) -> Result<DMatrix<ComplexPoint>> {
        if self.point.is_empty() {
            return Err(Error::UnsupportedModel(
                "declared: no eigenvalues to truncate onto".into(),
            ));
        }
        if n == 0 {
            return Err(Error::InvalidInput(
                "declared: truncation size must be positive".into(),
            ));
        }
        let take = n.min(self.point.len());
        Ok(DMatrix::from_diagonal(&DVector::from_vec(
            self.point[..take].to_vec(),
        )))
    }

    pub fn counting(&self, _lambda: f64) -> Result<u64> {
        Err(Error::UnsupportedModel(
            "declared: spectra carry no multiplicity data to count".into(),
        ))
    }

    pub fn eigenvalues_up_to(&self, _lambda: f64) -> Result<Vec<ComplexPoint>> {
        Err(Error::UnsupportedModel(
            "declared: spectra carry no multiplicity data to enumerate".into(),
        ))
    }

    pub fn has_compact_resolvent(&self) -> bool {
        self.compact_resolvent
    }
}
