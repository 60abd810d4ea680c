//! Family-level analysis: boundedness, compactness, discreteness
//! certification, and finite resolvent truncations with tail error bounds.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::family::OperatorFamily;
use crate::oracle::block_diag;
use crate::spectral::{ComplexPoint, NormValue, SupResult, Tolerance};

/// Operator norm of the direct sum: the supremum of coordinate norms.
pub fn direct_sum_norm(family: &OperatorFamily) -> NormValue {
    family.operator_norm_sup()
}

/// Whether the direct sum is a bounded operator.
pub fn is_bounded(family: &OperatorFamily) -> NormValue {
    direct_sum_norm(family)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Compactness {
    Compact,
    NotCompact,
    /// Some coordinate or tail limit gives no verdict.
    Unknown,
}

/// A direct sum is compact exactly when every coordinate is compact and the
/// coordinate norms vanish along the family.
pub fn is_compact(family: &OperatorFamily) -> Compactness {
    match family.all_compact() {
        Some(false) => return Compactness::NotCompact,
        None => return Compactness::Unknown,
        Some(true) => {}
    }
    match family.norms_vanish() {
        Some(true) => Compactness::Compact,
        Some(false) => Compactness::NotCompact,
        None => Compactness::Unknown,
    }
}

/// Discreteness certification is one-sided: failing the sufficient
/// conditions withholds the certificate, it does not refute discreteness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Discreteness {
    Discrete,
    NotCertified,
}

/// Certify a discrete spectrum: every coordinate has a compact resolvent,
/// the reference point lies in the common resolvent set, and the tail's
/// resolvent norms vanish so only finitely many coordinates matter near
/// any bounded region.
pub fn has_discrete_spectrum(
    family: &OperatorFamily,
    lambda: ComplexPoint,
    tol: &Tolerance,
) -> Discreteness {
    if family.all_compact_resolvent() != Some(true) {
        return Discreteness::NotCertified;
    }
    if !matches!(family.resolvent_norm_sup(lambda, tol), SupResult::Finite(_)) {
        return Discreteness::NotCertified;
    }
    if family.tail_resolvent_vanishes() != Some(true) {
        return Discreteness::NotCertified;
    }
    Discreteness::Discrete
}

/// Finite section of the direct-sum resolvent: the block diagonal of the
/// first m coordinate resolvents, each inverted from an N-point truncation,
/// together with a bound on the norm of the omitted tail.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolventTruncation {
    pub matrix: DMatrix<ComplexPoint>,
    pub block_dims: Vec<usize>,
    pub lambda: ComplexPoint,
    /// sup of resolvent norms over the coordinates beyond the first m; the
    /// truncation approximates the full resolvent to within this value.
    pub tail_bound: SupResult,
}

pub fn assemble_resolvent_truncation(
    family: &OperatorFamily,
    lambda: ComplexPoint,
    m: u64,
    n: usize,
    tol: &Tolerance,
) -> Result<ResolventTruncation> {
    if m == 0 {
        return Err(Error::InvalidInput(
            "truncation: need at least one block".into(),
        ));
    }
    let mut blocks = Vec::with_capacity(m as usize);
    for i in 1..=m {
        let coord = family.coordinate(i)?;
        let mut shifted = coord.truncate(n)?;
        for d in 0..shifted.nrows() {
            shifted[(d, d)] -= lambda;
        }
        let inv = shifted.try_inverse().ok_or_else(|| {
            Error::SingularTruncation(format!(
                "coordinate {i} truncated at {n} is singular at {lambda}"
            ))
        })?;
        blocks.push(inv);
    }
    let block_dims = blocks.iter().map(|b| b.nrows()).collect();
    let matrix = block_diag(&blocks)?;
    let tail_bound = family.resolvent_norm_sup_from(m + 1, lambda, tol);
    Ok(ResolventTruncation {
        matrix,
        block_dims,
        lambda,
        tail_bound,
    })
}

/// Norm bound on the resolvent tail past the first m coordinates.
pub fn resolvent_tail_norm(
    family: &OperatorFamily,
    lambda: ComplexPoint,
    m: u64,
    tol: &Tolerance,
) -> SupResult {
    family.resolvent_norm_sup_from(m + 1, lambda, tol)
}
