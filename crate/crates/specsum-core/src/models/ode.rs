//! First-order vector ODE block on an interval (a, b): differentiation
//! plus a positive damping s, closed under a rotated boundary condition
//! u(a) = exp(i*theta) u(b). The block is normal and unbounded with the
//! simple eigenvalue lattice s + i (theta + 2*k*pi) / (b - a).

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::spectral::{ComplexPoint, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct VectorOdeOperator {
    s: f64,
    a: f64,
    b: f64,
    theta: f64,
}

impl VectorOdeOperator {
    pub fn new(s: f64, a: f64, b: f64, theta: f64) -> Result<Self> {
        if !s.is_finite() || !a.is_finite() || !b.is_finite() || !theta.is_finite() {
            return Err(Error::InvalidInput("ode: parameters must be finite".into()));
        }
        if s <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "ode: damping s = {s} must be positive"
            )));
        }
        if b <= a {
            return Err(Error::InvalidInput(format!(
                "ode: interval end {b} must exceed start {a}"
            )));
        }
        if !(0.0..2.0 * PI).contains(&theta) {
            return Err(Error::InvalidInput(format!(
                "ode: boundary phase theta = {theta} must lie in [0, 2*pi)"
            )));
        }
        Ok(VectorOdeOperator { s, a, b, theta })
    }

    pub fn damping(&self) -> f64 {
        self.s
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The k-th eigenvalue s + i (theta + 2*k*pi) / (b - a).
    pub fn eigenvalue(&self, k: i64) -> ComplexPoint {
        ComplexPoint::new(self.s, (self.theta + 2.0 * k as f64 * PI) / self.length())
    }

    /// Distance from `lambda` to the eigenvalue lattice.
    pub fn lattice_distance(&self, lambda: ComplexPoint) -> f64 {
        let dy = self.imaginary_lattice_distance(lambda.im);
        ((lambda.re - self.s).powi(2) + dy * dy).sqrt()
    }

    /// Distance from `im` to the imaginary parts (theta + 2*k*pi) / (b - a).
    pub(crate) fn imaginary_lattice_distance(&self, im: f64) -> f64 {
        let len = self.length();
        let k = ((im * len - self.theta) / (2.0 * PI)).round();
        let mut best = f64::INFINITY;
        for dk in [-1.0, 0.0, 1.0] {
            let y = (self.theta + 2.0 * (k + dk) * PI) / len;
            best = best.min((im - y).abs());
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

    /// Closed-form Hilbert-Schmidt bound on the resolvent norm at a real
    /// shift, valid for shift < s and shift != 0. The two addends under the
    /// root are the squared kernel mass of the causal part and of the
    /// boundary coupling.
    pub fn resolvent_hs_bound(&self, shift: f64) -> Result<f64> {
        if !shift.is_finite() {
            return Err(Error::InvalidInput("ode: shift must be finite".into()));
        }
        if shift >= self.s {
            return Err(Error::InvalidInput(format!(
                "ode: resolvent bound needs shift {shift} < damping {}",
                self.s
            )));
        }
        if shift == 0.0 {
            return Err(Error::InvalidInput(
                "ode: resolvent bound is singular at shift 0".into(),
            ));
        }
        let len = self.length();
        let mu = shift - self.s;
        let causal = (2.0 * mu * (-len) - 1.0 + (2.0 * mu * len).exp()) / (4.0 * mu * mu);
        let boundary = ((2.0 * shift * len).exp() - 1.0) / (1.0 - (mu * len).exp())
            * ((2.0 * mu * len).exp() - 1.0)
            / (4.0 * shift * mu);
        Ok((causal + boundary).sqrt())
    }

    /// Spectrally faithful truncation: the first `n` lattice eigenvalues in
    /// truncation order 0, 1, -1, 2, -2, ... as a diagonal matrix.
    pub fn truncate(&self, n: usize) -> Result<DMatrix<ComplexPoint>> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "ode: truncation size must be positive".into(),
            ));
        }
        let diag: Vec<ComplexPoint> = (0..n as i64)
            .map(|j| if j % 2 == 1 { (j + 1) / 2 } else { -j / 2 })
            .map(|k| self.eigenvalue(k))
            .collect();
        Ok(DMatrix::from_diagonal(&DVector::from_vec(diag)))
    }

    /// Lattice index range [k_lo, k_hi] of eigenvalues with modulus
    /// <= lambda, or None when there are none.
    fn index_band(&self, lambda: f64) -> Option<(i64, i64)> {
        if lambda < self.s {
            return None;
        }
        // |s + i y|^2 <= lambda^2 iff |y| <= sqrt(lambda^2 - s^2)
        let y_max = (lambda * lambda - self.s * self.s).max(0.0).sqrt();
        let len = self.length();
        let modulus = |k: i64| self.eigenvalue(k).norm();
        let mut lo = (((-y_max) * len - self.theta) / (2.0 * PI)).ceil() as i64;
        let mut hi = ((y_max * len - self.theta) / (2.0 * PI)).floor() as i64;
        while modulus(lo - 1) <= lambda {
            lo -= 1;
        }
        while lo <= hi && modulus(lo) > lambda {
            lo += 1;
        }
        while modulus(hi + 1) <= lambda {
            hi += 1;
        }
        while hi >= lo && modulus(hi) > lambda {
            hi -= 1;
        }
        (lo <= hi).then_some((lo, hi))
    }

    /// Number of eigenvalues with modulus <= lambda, boundary inclusive.
    pub fn counting(&self, lambda: f64) -> u64 {
        match self.index_band(lambda) {
            Some((lo, hi)) => (hi - lo + 1) as u64,
            None => 0,
        }
    }

    pub fn eigenvalues_up_to(&self, lambda: f64) -> Vec<ComplexPoint> {
        match self.index_band(lambda) {
            Some((lo, hi)) => (lo..=hi).map(|k| self.eigenvalue(k)).collect(),
            None => Vec::new(),
        }
    }

    /// Whether a truncation of size `n` contains every eigenvalue with
    /// modulus <= lambda.
    pub fn covers_counting(&self, lambda: f64, n: usize) -> bool {
        match self.index_band(lambda) {
            Some((lo, hi)) => {
                let max_pos = (n / 2) as i64;
                let max_neg = (n.saturating_sub(1) / 2) as i64;
                hi <= max_pos && -lo <= max_neg
            }
            None => true,
        }
    }

    pub fn min_eigenvalue_modulus(&self) -> f64 {
        let k = (-self.theta / (2.0 * PI)).round() as i64;
        (k - 1..=k + 1)
            .map(|j| self.eigenvalue(j).norm())
            .fold(f64::INFINITY, f64::min)
    }
}
