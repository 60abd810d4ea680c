//! First-order differentiation on an interval with a multipoint condition
//! identifying the endpoint values. The operator is normal and unbounded;
//! its spectrum is the pure point lattice {2k*pi*i / (b - a) : k integer},
//! each eigenvalue simple with eigenfunction t -> exp(lambda_k (t - a)).

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::spectral::{ComplexPoint, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct MultipointOperator {
    a: f64,
    b: f64,
    amplitude: ComplexPoint,
}

impl MultipointOperator {
    pub fn new(a: f64, b: f64, amplitude: ComplexPoint) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || !amplitude.is_finite() {
            return Err(Error::InvalidInput(
                "multipoint: parameters must be finite".into(),
            ));
        }
        if b <= a {
            return Err(Error::InvalidInput(format!(
                "multipoint: interval end {b} must exceed start {a}"
            )));
        }
        if amplitude.norm() == 0.0 {
            return Err(Error::InvalidInput(
                "multipoint: eigenfunction amplitude must be nonzero".into(),
            ));
        }
        Ok(MultipointOperator { a, b, amplitude })
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn amplitude(&self) -> ComplexPoint {
        self.amplitude
    }

    /// The k-th lattice eigenvalue 2*k*pi*i / (b - a).
    pub fn eigenvalue(&self, k: i64) -> ComplexPoint {
        ComplexPoint::new(0.0, 2.0 * k as f64 * PI / self.length())
    }

    /// Eigenfunction for the k-th eigenvalue evaluated at `t`.
    pub fn eigenfunction(&self, k: i64, t: f64) -> ComplexPoint {
        self.amplitude * (self.eigenvalue(k) * (t - self.a)).exp()
    }

    /// Distance from `lambda` to the eigenvalue lattice.
    pub fn lattice_distance(&self, lambda: ComplexPoint) -> f64 {
        let step = 2.0 * PI / self.length();
        let k = (lambda.im / step).round();
        let mut best = f64::INFINITY;
        for dk in [-1.0, 0.0, 1.0] {
            let node = ComplexPoint::new(0.0, (k + dk) * step);
            best = best.min((lambda - node).norm());
        }
        best
    }

    pub fn point_contains(&self, lambda: ComplexPoint, tol: &Tolerance) -> bool {
        self.lattice_distance(lambda) <= tol.eps_membership
    }

    /// Exact resolvent norm 1 / dist(lambda, lattice); None inside the
    /// membership band around the spectrum.
    pub fn resolvent_norm(&self, lambda: ComplexPoint, tol: &Tolerance) -> Option<f64> {
        let d = self.lattice_distance(lambda);
        (d > tol.eps_membership).then(|| 1.0 / d)
    }

    /// Lattice indices in truncation order 0, 1, -1, 2, -2, ...
    pub(crate) fn truncation_order(n: usize) -> impl Iterator<Item = i64> {
        (0..n as i64).map(|j| if j % 2 == 1 { (j + 1) / 2 } else { -j / 2 })
    }

    /// Spectrally faithful truncation: the first `n` lattice eigenvalues in
    /// truncation order, as a diagonal matrix.
    pub fn truncate(&self, n: usize) -> Result<DMatrix<ComplexPoint>> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "multipoint: truncation size must be positive".into(),
            ));
        }
        let diag: Vec<ComplexPoint> = Self::truncation_order(n)
            .map(|k| self.eigenvalue(k))
            .collect();
        Ok(DMatrix::from_diagonal(&DVector::from_vec(diag)))
    }

    /// Largest k >= 0 with 2*k*pi / (b - a) <= lambda; -1 when even the
    /// zero eigenvalue exceeds the threshold (negative lambda).
    fn max_lattice_index(&self, lambda: f64) -> i64 {
        if lambda < 0.0 {
            return -1;
        }
        let step = 2.0 * PI / self.length();
        let mut k = (lambda / step).floor().max(0.0) as i64;
        while (k + 1) as f64 * step <= lambda {
            k += 1;
        }
        while k > 0 && k as f64 * step > lambda {
            k -= 1;
        }
        k
    }

    /// Number of eigenvalues with modulus <= lambda, boundary inclusive.
    pub fn counting(&self, lambda: f64) -> u64 {
        let k = self.max_lattice_index(lambda);
        if k < 0 {
            0
        } else {
            (1 + 2 * k) as u64
        }
    }

    pub fn eigenvalues_up_to(&self, lambda: f64) -> Vec<ComplexPoint> {
        let k = self.max_lattice_index(lambda);
        if k < 0 {
            return Vec::new();
        }
        (-k..=k).map(|j| self.eigenvalue(j)).collect()
    }

    /// Whether a truncation of size `n` contains every eigenvalue with
    /// modulus <= lambda.
    pub fn covers_counting(&self, lambda: f64, n: usize) -> bool {
        let need = self.max_lattice_index(lambda);
        // size n includes k in [-(n-1)/2 .. n/2] along the truncation order
        need <= (n.saturating_sub(1) / 2) as i64
    }

    pub fn min_eigenvalue_modulus(&self) -> f64 {
        0.0
    }
}
