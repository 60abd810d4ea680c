//! Shared spectral-domain types: classification verdicts, suprema,
//! norms, tolerances, and declared limits.

use std::fmt;

/// A point of the complex plane.
pub type ComplexPoint = num_complex::Complex64;

/// Where a point of the complex plane sits relative to a direct sum.
///
/// The four settled classes partition the plane: eigenvalues, continuous
/// spectrum, residual spectrum, and the resolvent set. `Inconclusive` is
/// reported when a family's declared tail limits are too weak to decide
/// between the continuous-spectrum and resolvent branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralClass {
    PointSpectrum,
    ContinuousSpectrum,
    ResidualSpectrum,
    Resolvent,
    Inconclusive,
}

impl SpectralClass {
    pub fn as_str(self) -> &'static str {
        match self {
            SpectralClass::PointSpectrum => "PointSpectrum",
            SpectralClass::ContinuousSpectrum => "ContinuousSpectrum",
            SpectralClass::ResidualSpectrum => "ResidualSpectrum",
            SpectralClass::Resolvent => "Resolvent",
            SpectralClass::Inconclusive => "Inconclusive",
        }
    }
}

impl fmt::Display for SpectralClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Supremum of per-coordinate resolvent norms.
///
/// `LowerBound(v)` means the coordinates inspected so far reach `v` but an
/// Unknown tail limit leaves the true supremum undetermined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SupResult {
    Finite(f64),
    Infinite,
    LowerBound(f64),
}

impl SupResult {
    /// Combine with another partial supremum. Divergence dominates;
    /// any undetermined side keeps the result a lower bound.
    pub fn join(self, other: SupResult) -> SupResult {
        use SupResult::*;
        match (self, other) {
            (Infinite, _) | (_, Infinite) => Infinite,
            (Finite(a), Finite(b)) => Finite(a.max(b)),
            (LowerBound(a), Finite(b)) | (Finite(a), LowerBound(b)) => LowerBound(a.max(b)),
            (LowerBound(a), LowerBound(b)) => LowerBound(a.max(b)),
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, SupResult::Infinite)
    }

    /// The settled value, if the supremum is finite and fully determined.
    pub fn finite(self) -> Option<f64> {
        match self {
            SupResult::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for SupResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupResult::Finite(v) => write!(f, "{v}"),
            SupResult::Infinite => f.write_str("inf"),
            SupResult::LowerBound(v) => write!(f, ">={v}"),
        }
    }
}

/// An operator norm, possibly infinite (unbounded operator) or unknown
/// (models that declare spectra without norm data).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormValue {
    Finite(f64),
    Infinite,
    Unknown,
}

impl NormValue {
    /// Supremum of two norm values. Unboundedness dominates; an unknown
    /// contribution poisons any finite result.
    pub fn join(self, other: NormValue) -> NormValue {
        use NormValue::*;
        match (self, other) {
            (Infinite, _) | (_, Infinite) => Infinite,
            (Unknown, _) | (_, Unknown) => Unknown,
            (Finite(a), Finite(b)) => Finite(a.max(b)),
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            NormValue::Finite(v) => Some(v),
            _ => None,
        }
    }
}

/// Numerical tolerances shared across the engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Distance below which a point is considered to lie in a spectral set.
    pub eps_membership: f64,
    /// Resolved tail limits at or above this value count as divergent.
    pub eps_div: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_membership: 1e-8,
            eps_div: 1e12,
        }
    }
}

/// A limit declared for a scalar quantity along the tail of a family
/// (coordinate norms, first eigenvalue moduli).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeclaredLimit {
    Zero,
    Infinity,
    BoundedBy(f64),
    Unknown,
}

/// Verdict for one point of the complex plane against a whole family.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectSumClassification {
    pub point: ComplexPoint,
    pub class: SpectralClass,
    /// 1-based index of a coordinate witnessing the class, when a single
    /// coordinate does (an eigenvalue holder, a residual-range holder, a
    /// coordinate whose continuous spectrum contains the point). Divergent
    /// resolvent suprema have no single witness.
    pub witness: Option<usize>,
    /// Supremum of the coordinate resolvent norms at this point. Infinite
    /// whenever the point lies in the spectrum.
    pub resolvent_sup: SupResult,
}
