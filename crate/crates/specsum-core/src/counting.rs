//! Eigenvalue counting across a direct sum: merged counting functions with
//! overlap detection, closed-form asymptotic upper bounds from declared
//! growth, and log-log fitting of the observed growth exponent.

use crate::error::{Error, Result};
use crate::family::{OperatorFamily, TailGenerator, TailRule};
use crate::models::Coordinate;
use crate::spectral::{ComplexPoint, Tolerance};

/// Cap on eigenvalues materialized while checking cross-coordinate overlap.
const MERGE_CAP: u64 = 2_000_000;

/// Number of eigenvalues of one coordinate with modulus at most lambda,
/// boundary inclusive, counted with multiplicity.
pub fn counting_function(coordinate: &Coordinate, lambda: f64) -> Result<u64> {
    coordinate.counting(lambda)
}

/// Merged counting value for the whole family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergedCount {
    pub count: u64,
    /// True when two different coordinates contribute eigenvalues within
    /// the membership tolerance of each other, so the merged count double
    /// counts a shared point.
    pub overlap: bool,
}

/// Sum of the coordinate counting functions at lambda, with an overlap
/// check across coordinates.
pub fn merged_counting(
    family: &OperatorFamily,
    lambda: f64,
    tol: &Tolerance,
) -> Result<MergedCount> {
    let mut count = 0u64;
    for coord in family.prefix() {
        count += coord.counting(lambda)?;
    }
    count += family.tail_counting(lambda)?;
    if count > MERGE_CAP {
        return Err(Error::InvalidInput(format!(
            "counting: {count} eigenvalues below {lambda} exceed the merge cap"
        )));
    }
    let tagged = tagged_eigenvalues(family, lambda)?;
    Ok(MergedCount {
        count,
        overlap: has_cross_overlap(tagged, tol.eps_membership),
    })
}

/// All family eigenvalues with modulus <= lambda, tagged with the owning
/// coordinate's absolute index.
fn tagged_eigenvalues(family: &OperatorFamily, lambda: f64) -> Result<Vec<(u64, ComplexPoint)>> {
    let mut out = Vec::new();
    for (i, coord) in family.prefix().iter().enumerate() {
        let origin = i as u64 + 1;
        out.extend(coord.eigenvalues_up_to(lambda)?.into_iter().map(|e| (origin, e)));
    }
    out.extend(family.tail_eigenvalues_up_to(lambda)?);
    Ok(out)
}

/// Detect two eigenvalues from different coordinates within eps. Sorting by
/// modulus bounds the scan window: close points have close moduli.
fn has_cross_overlap(mut tagged: Vec<(u64, ComplexPoint)>, eps: f64) -> bool {
    tagged.sort_by(|a, b| a.1.norm().total_cmp(&b.1.norm()));
    for i in 0..tagged.len() {
        let (origin_i, e_i) = tagged[i];
        let norm_i = e_i.norm();
        for &(origin_j, e_j) in tagged.iter().skip(i + 1) {
            if e_j.norm() - norm_i > eps {
                break;
            }
            if origin_i != origin_j && (e_i - e_j).norm() <= eps {
                return true;
            }
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountingRow {
    pub lambda: f64,
    pub count: u64,
    pub overlap: bool,
}

/// Merged counting evaluated over a grid of radii.
pub fn counting_table(
    family: &OperatorFamily,
    radii: &[f64],
    tol: &Tolerance,
) -> Result<Vec<CountingRow>> {
    radii
        .iter()
        .map(|&lambda| {
            merged_counting(family, lambda, tol).map(|m| CountingRow {
                lambda,
                count: m.count,
                overlap: m.overlap,
            })
        })
        .collect()
}

/// One declared growth floor |eigenvalue m| >= coefficient * m^exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthTerm {
    pub coefficient: f64,
    pub exponent: f64,
}

/// Infinitely many further coordinates with geometrically growing
/// coefficients and a common exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GrowthTail {
    None,
    Geometric {
        base: f64,
        ratio: f64,
        exponent: f64,
        start: u64,
    },
}

/// Declared growth data for an entire family, one term per coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticBoundSpec {
    prefix: Vec<GrowthTerm>,
    tail: GrowthTail,
}

/// Closed-form upper bound on the merged counting function at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountingBound {
    pub lambda: f64,
    /// Slowest declared growth exponent; the bound grows like lambda^(1/alpha).
    pub alpha: f64,
    /// 1-based index of the coordinate achieving that exponent.
    pub lead_index: usize,
    /// Value of the coefficient series at this radius.
    pub series: f64,
    pub value: f64,
}

impl AsymptoticBoundSpec {
    pub fn new(prefix: Vec<GrowthTerm>, tail: GrowthTail) -> Result<Self> {
        if prefix.is_empty() && matches!(tail, GrowthTail::None) {
            return Err(Error::InvalidInput(
                "growth: need at least one declared term".into(),
            ));
        }
        for (i, t) in prefix.iter().enumerate() {
            if !(t.coefficient.is_finite() && t.coefficient > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "growth: coefficient of term {} must be positive",
                    i + 1
                )));
            }
            if !(t.exponent.is_finite() && t.exponent >= 1.0) {
                return Err(Error::InvalidInput(format!(
                    "growth: exponent of term {} must be at least 1",
                    i + 1
                )));
            }
        }
        if let GrowthTail::Geometric {
            base,
            ratio,
            exponent,
            start,
        } = tail
        {
            if !(base.is_finite() && base > 0.0) {
                return Err(Error::InvalidInput("growth: tail base must be positive".into()));
            }
            if !(ratio.is_finite() && ratio > 1.0) {
                return Err(Error::InvalidInput("growth: tail ratio must exceed 1".into()));
            }
            if !(exponent.is_finite() && exponent >= 1.0) {
                return Err(Error::InvalidInput(
                    "growth: tail exponent must be at least 1".into(),
                ));
            }
            if start as usize != prefix.len() + 1 {
                return Err(Error::InvalidInput(format!(
                    "growth: tail must start at coordinate {}, got {start}",
                    prefix.len() + 1
                )));
            }
        }
        Ok(AsymptoticBoundSpec { prefix, tail })
    }

    pub fn prefix(&self) -> &[GrowthTerm] {
        &self.prefix
    }

    pub fn tail(&self) -> GrowthTail {
        self.tail
    }

    /// Slowest growth exponent across all declared terms and the 1-based
    /// coordinate index achieving it (first occurrence wins).
    pub fn min_exponent(&self) -> (usize, f64) {
        let mut lead = 0usize;
        let mut alpha = f64::INFINITY;
        for (i, t) in self.prefix.iter().enumerate() {
            if t.exponent < alpha {
                alpha = t.exponent;
                lead = i + 1;
            }
        }
        if let GrowthTail::Geometric {
            exponent, start, ..
        } = self.tail
        {
            if exponent < alpha {
                alpha = exponent;
                lead = start as usize;
            }
        }
        (lead, alpha)
    }

    /// The coefficient series sum_n c_n^(-1/alpha_n) lambda^((alpha - alpha_n)
    /// / (alpha alpha_n)), including the closed-form geometric tail.
    pub fn series(&self, lambda: f64) -> f64 {
        let (_, alpha) = self.min_exponent();
        let mut sum = 0.0;
        for t in &self.prefix {
            let decay = (alpha - t.exponent) / (alpha * t.exponent);
            sum += t.coefficient.powf(-1.0 / t.exponent) * lambda.powf(decay);
        }
        if let GrowthTail::Geometric {
            base,
            ratio,
            exponent,
            start,
        } = self.tail
        {
            let r = ratio.powf(-1.0 / exponent);
            let decay = (alpha - exponent) / (alpha * exponent);
            sum += lambda.powf(decay) * base.powf(-1.0 / exponent) * r.powi(start as i32)
                / (1.0 - r);
        }
        sum
    }

    /// Counting bound N(lambda) <= lambda^(1/alpha) * series(lambda).
    pub fn bound(&self, lambda: f64) -> Result<CountingBound> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidInput(
                "growth: bound radius must be positive".into(),
            ));
        }
        let (lead_index, alpha) = self.min_exponent();
        let series = self.series(lambda);
        Ok(CountingBound {
            lambda,
            alpha,
            lead_index,
            series,
            value: lambda.powf(1.0 / alpha) * series,
        })
    }

    /// When every exponent is the common value alpha, the normalized bound
    /// N(lambda) / lambda^(1/alpha) converges to this constant.
    pub fn limit_constant(&self) -> Option<f64> {
        let (_, alpha) = self.min_exponent();
        let uniform = self.prefix.iter().all(|t| t.exponent == alpha)
            && match self.tail {
                GrowthTail::None => true,
                GrowthTail::Geometric { exponent, .. } => exponent == alpha,
            };
        uniform.then(|| self.series(1.0))
    }

    /// Assemble the declared growth of a family: every prefix coordinate
    /// must carry a growth declaration and the tail must be geometric.
    pub fn from_family(family: &OperatorFamily) -> Result<Self> {
        let mut prefix = Vec::with_capacity(family.prefix().len());
        for (i, coord) in family.prefix().iter().enumerate() {
            let g = match coord {
                Coordinate::Diagonal(op) => op.growth(),
                _ => None,
            };
            match g {
                Some(g) => prefix.push(GrowthTerm {
                    coefficient: g.coefficient,
                    exponent: g.exponent,
                }),
                None => {
                    return Err(Error::InsufficientData(format!(
                        "growth: coordinate {} declares no eigenvalue growth",
                        i + 1
                    )))
                }
            }
        }
        let tail = match family.tail() {
            TailRule::Finite => GrowthTail::None,
            TailRule::Parametric(tail) => match tail.generator() {
                TailGenerator::DiagonalGeometric {
                    base,
                    ratio,
                    exponent,
                } => GrowthTail::Geometric {
                    base: *base,
                    ratio: *ratio,
                    exponent: *exponent,
                    start: family.prefix().len() as u64 + 1,
                },
                _ => {
                    return Err(Error::InsufficientData(
                        "growth: only a geometric diagonal tail declares growth".into(),
                    ))
                }
            },
        };
        AsymptoticBoundSpec::new(prefix, tail)
    }
}

/// Convenience wrapper over [`AsymptoticBoundSpec::bound`].
pub fn counting_bound(spec: &AsymptoticBoundSpec, lambda: f64) -> Result<CountingBound> {
    spec.bound(lambda)
}

/// The `count` smallest eigenvalue moduli of the family, ascending, with
/// multiplicity, found by doubling the enumeration radius.
pub fn collect_moduli(family: &OperatorFamily, count: usize, tol: &Tolerance) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::InvalidInput("counting: need a positive count".into()));
    }
    let mut lambda = 1.0f64;
    loop {
        let merged = merged_counting(family, lambda, tol)?;
        if merged.count >= count as u64 {
            break;
        }
        lambda *= 4.0;
        if lambda > 1e300 {
            return Err(Error::InsufficientData(format!(
                "counting: family holds fewer than {count} eigenvalues"
            )));
        }
    }
    let mut moduli: Vec<f64> = tagged_eigenvalues(family, lambda)?
        .into_iter()
        .map(|(_, e)| e.norm())
        .collect();
    moduli.sort_by(f64::total_cmp);
    moduli.truncate(count);
    Ok(moduli)
}

/// Power-law fit lambda_n ~ gamma * n^alpha obtained by least squares on
/// (ln n, ln lambda_n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticFit {
    pub gamma: f64,
    pub alpha: f64,
    /// Root-mean-square log residual over the fitted window.
    pub residual: f64,
    /// 1-based inclusive index window the fit used.
    pub fit_range: (usize, usize),
}

impl AsymptoticFit {
    /// Fitted modulus at 1-based index n.
    pub fn predict(&self, n: usize) -> f64 {
        self.gamma * (n as f64).powf(self.alpha)
    }
}

/// Fit the growth exponent of ascending eigenvalue moduli over a 1-based
/// inclusive index window.
pub fn fit_asymptotic_exponent(moduli: &[f64], range: (usize, usize)) -> Result<AsymptoticFit> {
    let (lo, hi) = range;
    if lo < 1 || hi > moduli.len() || lo >= hi {
        return Err(Error::InvalidInput(format!(
            "fit: window ({lo}, {hi}) does not sit inside 1..={}",
            moduli.len()
        )));
    }
    let points: Vec<(f64, f64)> = (lo..=hi)
        .map(|n| {
            let v = moduli[n - 1];
            if v <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "fit: modulus {v} at index {n} is not positive"
                )));
            }
            Ok(((n as f64).ln(), v.ln()))
        })
        .collect::<Result<_>>()?;
    let len = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / len;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.0 - mean_x)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let alpha = sxy / sxx;
    let intercept = mean_y - alpha * mean_x;
    let ss: f64 = points
        .iter()
        .map(|p| {
            let r = p.1 - (intercept + alpha * p.0);
            r * r
        })
        .sum();
    Ok(AsymptoticFit {
        gamma: intercept.exp(),
        alpha,
        residual: (ss / len).sqrt(),
        fit_range: (lo, hi),
    })
}

/// An index where the observed modulus undercuts the claimed growth floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundViolation {
    pub index: usize,
    pub value: f64,
    pub bound: f64,
}

/// Check moduli[n-1] >= gamma * n^alpha for every n >= from.
pub fn verify_eigenvalue_bound(
    moduli: &[f64],
    gamma: f64,
    alpha: f64,
    from: usize,
) -> Vec<BoundViolation> {
    let mut violations = Vec::new();
    for n in from.max(1)..=moduli.len() {
        let bound = gamma * (n as f64).powf(alpha);
        let value = moduli[n - 1];
        if value < bound {
            violations.push(BoundViolation {
                index: n,
                value,
                bound,
            });
        }
    }
    violations
}
