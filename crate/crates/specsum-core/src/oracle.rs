//! Brute-force cross-checks on finite truncations. Everything here goes
//! through dense linear algebra on the assembled block-diagonal matrix,
//! deliberately ignoring the closed-form structure the engine exploits, so
//! agreement between the two is meaningful evidence.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counting::merged_counting;
use crate::engine::assemble_resolvent_truncation;
use crate::error::{Error, Result};
use crate::family::OperatorFamily;
use crate::models::{Coordinate, FiniteMatrixOperator};
use crate::spectral::{ComplexPoint, Tolerance};

/// Largest dense dimension the brute-force paths accept.
pub const DIM_CAP: usize = 2000;

/// Assemble square blocks into one block-diagonal matrix.
pub fn block_diag(blocks: &[DMatrix<ComplexPoint>]) -> Result<DMatrix<ComplexPoint>> {
    if blocks.is_empty() {
        return Err(Error::InvalidInput("oracle: no blocks to assemble".into()));
    }
    for b in blocks {
        if b.nrows() == 0 || b.nrows() != b.ncols() {
            return Err(Error::InvalidInput(
                "oracle: blocks must be nonempty squares".into(),
            ));
        }
    }
    let total: usize = blocks.iter().map(|b| b.nrows()).sum();
    if total > DIM_CAP {
        return Err(Error::DimensionCap {
            dim: total,
            cap: DIM_CAP,
        });
    }
    let mut out = DMatrix::zeros(total, total);
    let mut at = 0;
    for b in blocks {
        out.view_mut((at, at), (b.nrows(), b.ncols())).copy_from(b);
        at += b.nrows();
    }
    Ok(out)
}

/// Every eigenvalue with algebraic multiplicity, sorted by (re, im).
pub fn brute_spectrum(matrix: &DMatrix<ComplexPoint>) -> Result<Vec<ComplexPoint>> {
    if matrix.nrows() == 0 || matrix.nrows() != matrix.ncols() {
        return Err(Error::InvalidInput(
            "oracle: need a nonempty square matrix".into(),
        ));
    }
    if matrix.nrows() > DIM_CAP {
        return Err(Error::DimensionCap {
            dim: matrix.nrows(),
            cap: DIM_CAP,
        });
    }
    let eig = matrix
        .clone()
        .eigenvalues()
        .ok_or(Error::EigensolveFailure(matrix.nrows()))?;
    let mut values: Vec<ComplexPoint> = eig.iter().copied().collect();
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(values)
}

/// Largest singular value.
pub fn brute_norm(matrix: &DMatrix<ComplexPoint>) -> f64 {
    matrix
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Resolvent norm 1 / sigma_min(A - lambda I) of a finite matrix. Errors
/// when lambda sits within eps of an eigenvalue, where the resolvent does
/// not exist to working precision.
pub fn brute_resolvent_norm(
    matrix: &DMatrix<ComplexPoint>,
    lambda: ComplexPoint,
    tol: &Tolerance,
) -> Result<f64> {
    let spectrum = brute_spectrum(matrix)?;
    if let Some(e) = spectrum
        .iter()
        .find(|e| (lambda - *e).norm() <= tol.eps_membership)
    {
        return Err(Error::InvalidInput(format!(
            "oracle: {lambda} is within eps of the eigenvalue {e}"
        )));
    }
    let mut shifted = matrix.clone();
    for i in 0..shifted.nrows() {
        shifted[(i, i)] -= lambda;
    }
    let sigma_min = shifted
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if sigma_min <= 0.0 {
        return Err(Error::SingularTruncation(format!(
            "oracle: shifted matrix is numerically singular at {lambda}"
        )));
    }
    Ok(1.0 / sigma_min)
}

/// Greedily pair two complex multisets by nearest distance and return the
/// worst pair distance. Errors on a size mismatch. Quadratic, meant for
/// test-sized inputs.
pub fn match_multisets(left: &[ComplexPoint], right: &[ComplexPoint]) -> Result<f64> {
    if left.len() != right.len() {
        return Err(Error::InvalidInput(format!(
            "oracle: multiset sizes {} and {} differ",
            left.len(),
            right.len()
        )));
    }
    let mut taken = vec![false; right.len()];
    let mut worst = 0.0f64;
    for a in left {
        let mut best: Option<(usize, f64)> = None;
        for (j, b) in right.iter().enumerate() {
            if taken[j] {
                continue;
            }
            let d = (a - b).norm();
            let better = match best {
                None => true,
                Some((bj, bd)) => {
                    d < bd
                        || (d == bd
                            && (right[j].re, right[j].im) < (right[bj].re, right[bj].im))
                }
            };
            if better {
                best = Some((j, d));
            }
        }
        let (j, d) = best.expect("equal sizes leave a candidate");
        taken[j] = true;
        worst = worst.max(d);
    }
    Ok(worst)
}

/// The first m coordinates truncated to size n, kept both separately and
/// assembled.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteTruncation {
    pub blocks: Vec<DMatrix<ComplexPoint>>,
    pub assembled: DMatrix<ComplexPoint>,
    pub dims: Vec<usize>,
}

pub fn truncate_family(family: &OperatorFamily, m: u64, n: usize) -> Result<FiniteTruncation> {
    if m == 0 {
        return Err(Error::InvalidInput(
            "oracle: need at least one block".into(),
        ));
    }
    let mut blocks = Vec::with_capacity(m as usize);
    for i in 1..=m {
        blocks.push(family.coordinate(i)?.truncate(n)?);
    }
    let assembled = block_diag(&blocks)?;
    let dims = blocks.iter().map(|b| b.nrows()).collect();
    Ok(FiniteTruncation {
        blocks,
        assembled,
        dims,
    })
}

/// One verified property of one truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationReport {
    pub property: String,
    pub blocks: u64,
    pub block_size: usize,
    pub engine_value: f64,
    pub oracle_value: f64,
    pub discrepancy: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifySuite {
    All,
    Norm,
    Union,
    Resolvent,
    Counting,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    /// Coordinates included in the truncation.
    pub blocks: u64,
    /// Per-coordinate truncation size.
    pub block_size: usize,
    /// Resolvent evaluation point.
    pub lambda: ComplexPoint,
    /// Radius for the counting comparison.
    pub counting_lambda: f64,
    /// Seed recorded in reports for reproducibility, if any.
    pub seed: Option<u64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            blocks: 4,
            block_size: 12,
            lambda: ComplexPoint::new(-1.0, 0.0),
            counting_lambda: 10.0,
            seed: None,
        }
    }
}

/// Run the selected truncation checks against the brute-force oracle.
pub fn verify_family(
    family: &OperatorFamily,
    suite: VerifySuite,
    cfg: &VerifyConfig,
    tol: &Tolerance,
) -> Result<Vec<TruncationReport>> {
    let truncation = truncate_family(family, cfg.blocks, cfg.block_size)?;
    let mut reports = Vec::new();
    let report = |property: &str, engine: f64, oracle: f64, discrepancy: f64, tolerance: f64| {
        TruncationReport {
            property: property.to_string(),
            blocks: cfg.blocks,
            block_size: cfg.block_size,
            engine_value: engine,
            oracle_value: oracle,
            discrepancy,
            tolerance,
            pass: discrepancy <= tolerance,
            seed: cfg.seed,
        }
    };

    if matches!(suite, VerifySuite::All | VerifySuite::Norm) {
        // block-diagonal norm identity: the assembled norm is the max of
        // the per-block norms
        let engine = truncation.blocks.iter().map(brute_norm).fold(0.0, f64::max);
        let oracle = brute_norm(&truncation.assembled);
        reports.push(report("norm", engine, oracle, (engine - oracle).abs(), 1e-10));
    }

    if matches!(suite, VerifySuite::All | VerifySuite::Union) {
        // the assembled eigenvalue multiset is the disjoint union of the
        // block multisets
        let mut union: Vec<ComplexPoint> = Vec::new();
        for b in &truncation.blocks {
            union.extend(brute_spectrum(b)?);
        }
        let assembled = brute_spectrum(&truncation.assembled)?;
        let distance = match_multisets(&union, &assembled)?;
        reports.push(report(
            "union",
            union.len() as f64,
            assembled.len() as f64,
            distance,
            tol.eps_membership,
        ));
    }

    if matches!(suite, VerifySuite::All | VerifySuite::Resolvent) {
        // blockwise-inverted resolvent against the assembled shift, in both
        // product orders
        let k = assemble_resolvent_truncation(family, cfg.lambda, cfg.blocks, cfg.block_size, tol)?;
        let mut shifted = truncation.assembled.clone();
        for i in 0..shifted.nrows() {
            shifted[(i, i)] -= cfg.lambda;
        }
        let identity = DMatrix::<ComplexPoint>::identity(shifted.nrows(), shifted.ncols());
        let left = brute_norm(&(&k.matrix * &shifted - &identity));
        let right = brute_norm(&(&shifted * &k.matrix - &identity));
        reports.push(report("resolvent", left, right, left.max(right), 1e-8));
    }

    if matches!(suite, VerifySuite::All | VerifySuite::Counting) {
        // merged counting of the full family against a brute count on the
        // truncation; a truncation that misses eigenvalues fails honestly
        let engine = merged_counting(family, cfg.counting_lambda, tol)?.count;
        let oracle = brute_spectrum(&truncation.assembled)?
            .iter()
            .filter(|e| e.norm() <= cfg.counting_lambda)
            .count() as u64;
        let discrepancy = engine.abs_diff(oracle) as f64;
        reports.push(report("counting", engine as f64, oracle as f64, discrepancy, 0.0));
    }

    Ok(reports)
}

/// Seeded family of small dense blocks with entries uniform on the complex
/// unit square: 2 to 8 blocks of dimension 1 to 6.
pub fn random_matrix_family(seed: u64) -> Result<OperatorFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks = rng.gen_range(2..=8usize);
    let mut coords = Vec::with_capacity(blocks);
    for _ in 0..blocks {
        let dim = rng.gen_range(1..=6usize);
        let matrix = DMatrix::from_fn(dim, dim, |_, _| {
            ComplexPoint::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
        });
        coords.push(Coordinate::Matrix(FiniteMatrixOperator::new(matrix)?));
    }
    OperatorFamily::finite(coords)
}
