//! Pointwise spectral classification of a direct sum. A point lands in the
//! point spectrum as soon as one coordinate owns it as an eigenvalue; in
//! the residual spectrum when some coordinate's residual set covers it and
//! no eigenvalue does; in the continuous spectrum when a coordinate's
//! continuous set covers it or the coordinate resolvent norms diverge; and
//! in the resolvent set when the supremum of those norms is finite. An
//! undeclared tail limit blocks the final dichotomy and the verdict is
//! inconclusive.

use crate::error::{Error, Result};
use crate::family::OperatorFamily;
use crate::spectral::{
    ComplexPoint, DirectSumClassification, SpectralClass, SupResult, Tolerance,
};

/// Classify one point of the complex plane against the family's spectrum.
pub fn classify_direct_sum_point(
    family: &OperatorFamily,
    lambda: ComplexPoint,
    tol: &Tolerance,
) -> DirectSumClassification {
    if let Some(n) = family.point_witness(lambda, tol) {
        return DirectSumClassification {
            point: lambda,
            class: SpectralClass::PointSpectrum,
            witness: Some(n as usize),
            resolvent_sup: SupResult::Infinite,
        };
    }
    if let Some(n) = family.residual_witness(lambda, tol) {
        return DirectSumClassification {
            point: lambda,
            class: SpectralClass::ResidualSpectrum,
            witness: Some(n as usize),
            resolvent_sup: SupResult::Infinite,
        };
    }
    if let Some(n) = family.continuous_witness(lambda, tol) {
        return DirectSumClassification {
            point: lambda,
            class: SpectralClass::ContinuousSpectrum,
            witness: Some(n as usize),
            resolvent_sup: SupResult::Infinite,
        };
    }
    match family.resolvent_norm_sup(lambda, tol) {
        SupResult::Finite(v) => DirectSumClassification {
            point: lambda,
            class: SpectralClass::Resolvent,
            witness: None,
            resolvent_sup: SupResult::Finite(v),
        },
        // divergent coordinate resolvents mark continuous spectrum of the
        // sum even though no single coordinate's spectrum is met
        SupResult::Infinite => DirectSumClassification {
            point: lambda,
            class: SpectralClass::ContinuousSpectrum,
            witness: None,
            resolvent_sup: SupResult::Infinite,
        },
        SupResult::LowerBound(v) => DirectSumClassification {
            point: lambda,
            class: SpectralClass::Inconclusive,
            witness: None,
            resolvent_sup: SupResult::LowerBound(v),
        },
    }
}

/// Rectangular grid of classification points, iterated row-major: the real
/// axis is the outer loop, the imaginary axis the inner one, endpoints
/// included. A single-sample axis stays at its start.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRegion {
    pub re_start: f64,
    pub re_end: f64,
    pub im_start: f64,
    pub im_end: f64,
    pub re_samples: usize,
    pub im_samples: usize,
}

impl ScanRegion {
    pub fn new(
        re_start: f64,
        re_end: f64,
        im_start: f64,
        im_end: f64,
        re_samples: usize,
        im_samples: usize,
    ) -> Result<Self> {
        if !(re_start.is_finite() && re_end.is_finite() && im_start.is_finite() && im_end.is_finite())
        {
            return Err(Error::InvalidInput(
                "scan: region bounds must be finite".into(),
            ));
        }
        if re_start > re_end || im_start > im_end {
            return Err(Error::InvalidInput(
                "scan: region bounds must be ordered".into(),
            ));
        }
        if re_samples == 0 || im_samples == 0 {
            return Err(Error::InvalidInput(
                "scan: need at least one sample per axis".into(),
            ));
        }
        Ok(ScanRegion {
            re_start,
            re_end,
            im_start,
            im_end,
            re_samples,
            im_samples,
        })
    }

    fn axis(start: f64, end: f64, samples: usize, i: usize) -> f64 {
        if samples == 1 {
            start
        } else {
            start + (end - start) * i as f64 / (samples - 1) as f64
        }
    }

    /// Grid points in emission order.
    pub fn points(&self) -> impl Iterator<Item = ComplexPoint> + '_ {
        (0..self.re_samples).flat_map(move |i| {
            (0..self.im_samples).map(move |j| {
                ComplexPoint::new(
                    Self::axis(self.re_start, self.re_end, self.re_samples, i),
                    Self::axis(self.im_start, self.im_end, self.im_samples, j),
                )
            })
        })
    }
}

/// Classify every grid point of the region, in emission order.
pub fn spectral_scan(
    family: &OperatorFamily,
    region: &ScanRegion,
    tol: &Tolerance,
) -> Vec<DirectSumClassification> {
    region
        .points()
        .map(|lambda| classify_direct_sum_point(family, lambda, tol))
        .collect()
}
