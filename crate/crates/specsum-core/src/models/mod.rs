//! Operator models usable as coordinates of a countable direct sum. Every
//! model answers the same spectral questions (membership by part, resolvent
//! norm, truncation, counting) through the [`Coordinate`] dispatch type.

mod declared;
mod diagonal;
mod matrix;
mod multipoint;
mod ode;
mod shift;

pub use declared::DeclaredOperator;
pub(crate) use diagonal::IndexBand;
pub use diagonal::{DiagonalOperator, EntryRule, GrowthDeclaration};
pub use matrix::FiniteMatrixOperator;
pub use multipoint::MultipointOperator;
pub use ode::VectorOdeOperator;
pub use shift::ShiftOperator;

use nalgebra::DMatrix;

use crate::error::Result;
use crate::spectral::{ComplexPoint, NormValue, Tolerance};

/// Distance from a point to a finite point set; infinite for an empty set.
pub(crate) fn distance_to_points(lambda: ComplexPoint, points: &[ComplexPoint]) -> f64 {
    points
        .iter()
        .map(|p| (lambda - p).norm())
        .fold(f64::INFINITY, f64::min)
}

/// One coordinate operator of a direct sum.
#[derive(Debug, Clone, PartialEq)]
pub enum Coordinate {
    Multipoint(MultipointOperator),
    Diagonal(DiagonalOperator),
    Ode(VectorOdeOperator),
    Shift(ShiftOperator),
    Matrix(FiniteMatrixOperator),
    Declared(DeclaredOperator),
}

impl Coordinate {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Coordinate::Multipoint(_) => "multipoint",
            Coordinate::Diagonal(_) => "diagonal",
            Coordinate::Ode(_) => "ode",
            Coordinate::Shift(_) => "shift",
            Coordinate::Matrix(_) => "matrix",
            Coordinate::Declared(_) => "declared",
        }
    }

    pub fn point_spectrum_contains(&self, lambda: ComplexPoint, tol: &Tolerance) -> bool {
        match self {
            Coordinate::Multipoint(op) => op.point_contains(lambda, tol),
            Coordinate::Diagonal(op) => op.point_contains(lambda, tol),
            Coordinate::Ode(op) => op.point_contains(lambda, tol),
            Coordinate::Shift(op) => op.point_contains(lambda, tol),
            Coordinate::Matrix(op) => op.point_contains(lambda, tol),
            Coordinate::Declared(op) => op.point_contains(lambda, tol),
        }
    }

    pub fn residual_spectrum_contains(&self, lambda: ComplexPoint, tol: &Tolerance) -> bool {
        match self {
            Coordinate::Shift(op) => op.residual_contains(lambda, tol),
            Coordinate::Declared(op) => op.residual_contains(lambda, tol),
            _ => false,
        }
    }

    pub fn continuous_spectrum_contains(&self, lambda: ComplexPoint, tol: &Tolerance) -> bool {
        match self {
            Coordinate::Diagonal(op) => op.continuous_contains(lambda, tol),
            Coordinate::Shift(op) => op.continuous_contains(lambda, tol),
            Coordinate::Declared(op) => op.continuous_contains(lambda, tol),
            _ => false,
        }
    }

    /// Exact or model-exact resolvent norm at lambda; None when lambda sits
    /// in (or within eps of) this coordinate's spectrum.
    pub fn resolvent_norm(&self, lambda: ComplexPoint, tol: &Tolerance) -> Option<f64> {
        match self {
            Coordinate::Multipoint(op) => op.resolvent_norm(lambda, tol),
            Coordinate::Diagonal(op) => op.resolvent_norm_exact(lambda, tol),
            Coordinate::Ode(op) => op.resolvent_norm(lambda, tol),
            Coordinate::Shift(op) => op.resolvent_norm(lambda, tol),
            Coordinate::Matrix(op) => op.resolvent_norm(lambda, tol),
            Coordinate::Declared(op) => op.resolvent_norm(lambda, tol),
        }
    }

    pub fn operator_norm(&self) -> NormValue {
        match self {
            Coordinate::Multipoint(_) | Coordinate::Ode(_) => NormValue::Infinite,
            Coordinate::Diagonal(op) => op.operator_norm(),
            Coordinate::Shift(op) => NormValue::Finite(op.operator_norm()),
            Coordinate::Matrix(op) => NormValue::Finite(op.operator_norm()),
            Coordinate::Declared(_) => NormValue::Unknown,
        }
    }

    /// None when the model gives no verdict.
    pub fn is_compact(&self) -> Option<bool> {
        match self {
            Coordinate::Multipoint(_) | Coordinate::Ode(_) | Coordinate::Shift(_) => Some(false),
            Coordinate::Diagonal(op) => Some(op.is_compact()),
            Coordinate::Matrix(_) => Some(true),
            Coordinate::Declared(_) => None,
        }
    }

    pub fn has_compact_resolvent(&self) -> Option<bool> {
        match self {
            Coordinate::Multipoint(_) | Coordinate::Ode(_) => Some(true),
            Coordinate::Diagonal(op) => Some(op.has_compact_resolvent()),
            Coordinate::Shift(_) => Some(false),
            Coordinate::Matrix(_) => Some(true),
            Coordinate::Declared(op) => Some(op.has_compact_resolvent()),
        }
    }

    pub fn truncate(&self, n: usize) -> Result<DMatrix<ComplexPoint>> {
        match self {
            Coordinate::Multipoint(op) => op.truncate(n),
            Coordinate::Diagonal(op) => op.truncate(n),
            Coordinate::Ode(op) => op.truncate(n),
            Coordinate::Shift(op) => op.truncate(n),
            Coordinate::Matrix(op) => op.truncate(n),
            Coordinate::Declared(op) => op.truncate(n),
        }
    }

    /// Eigenvalues with modulus <= lambda, boundary inclusive, counted with
    /// multiplicity. Errors on models without enumerable point spectra.
    pub fn counting(&self, lambda: f64) -> Result<u64> {
        match self {
            Coordinate::Multipoint(op) => Ok(op.counting(lambda)),
            Coordinate::Diagonal(op) => op.counting(lambda),
            Coordinate::Ode(op) => Ok(op.counting(lambda)),
            Coordinate::Shift(op) => op.counting(lambda),
            Coordinate::Matrix(op) => op.counting(lambda),
            Coordinate::Declared(op) => op.counting(lambda),
        }
    }

    pub fn eigenvalues_up_to(&self, lambda: f64) -> Result<Vec<ComplexPoint>> {
        match self {
            Coordinate::Multipoint(op) => Ok(op.eigenvalues_up_to(lambda)),
            Coordinate::Diagonal(op) => op.eigenvalues_up_to(lambda),
            Coordinate::Ode(op) => Ok(op.eigenvalues_up_to(lambda)),
            Coordinate::Shift(op) => op.eigenvalues_up_to(lambda),
            Coordinate::Matrix(op) => op.eigenvalues_up_to(lambda),
            Coordinate::Declared(op) => op.eigenvalues_up_to(lambda),
        }
    }

    /// Whether a size-n truncation captures every eigenvalue with modulus
    /// <= lambda.
    pub fn covers_counting(&self, lambda: f64, n: usize) -> Result<bool> {
        match self {
            Coordinate::Multipoint(op) => Ok(op.covers_counting(lambda, n)),
            Coordinate::Diagonal(op) => op.covers_counting(lambda, n),
            Coordinate::Ode(op) => Ok(op.covers_counting(lambda, n)),
            Coordinate::Matrix(op) => Ok(op.covers_counting(lambda, n)),
            Coordinate::Shift(_) | Coordinate::Declared(_) => {
                self.counting(lambda).map(|_| true)
            }
        }
    }

    /// Smallest eigenvalue modulus, where the model knows its eigenvalues.
    pub fn min_eigenvalue_modulus(&self) -> Option<f64> {
        match self {
            Coordinate::Multipoint(op) => Some(op.min_eigenvalue_modulus()),
            Coordinate::Diagonal(op) => Some(op.min_eigenvalue_modulus()),
            Coordinate::Ode(op) => Some(op.min_eigenvalue_modulus()),
            Coordinate::Matrix(op) => Some(op.min_eigenvalue_modulus()),
            Coordinate::Shift(_) | Coordinate::Declared(_) => None,
        }
    }
}
