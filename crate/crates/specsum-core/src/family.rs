//! Countable direct sums of coordinate operators. A family is a finite
//! prefix of explicit coordinates, optionally followed by a parametric tail
//! that generates every later coordinate from a closed-form rule.
//!
//! Per-coordinate quantities (membership, resolvent norms, truncations) are
//! always computed from the generating rule. Statements about the tail as a
//! whole, such as suprema and limits, additionally require a declared limit:
//! an `Unknown` declaration downgrades the answer to a lower bound or an
//! undeclared-limit error rather than silently passing to the limit.

use crate::error::{Error, Result};
use crate::models::{
    distance_to_points, Coordinate, DiagonalOperator, FiniteMatrixOperator, GrowthDeclaration,
    IndexBand, VectorOdeOperator,
};
use crate::spectral::{ComplexPoint, DeclaredLimit, NormValue, SupResult, Tolerance};

/// Indices stay below 2^53 so they are exact in f64 arithmetic.
const INDEX_CAP: u64 = 1 << 53;

/// Hard cap on the number of tail blocks swept by counting queries.
const TAIL_BLOCK_CAP: u64 = 1_000_000;

/// Closed-form rule producing the tail coordinate at absolute index n.
#[derive(Debug, Clone, PartialEq)]
pub enum TailGenerator {
    /// 1-by-1 block (c(n)) with c(n) = scale * n^exponent + offset.
    ScalarPower {
        scale: f64,
        exponent: f64,
        offset: f64,
    },
    /// First-order system block with damping s(n) = scale * n^exponent and
    /// fixed interval and boundary phase.
    Ode {
        scale: f64,
        exponent: f64,
        a: f64,
        b: f64,
        theta: f64,
    },
    /// Diagonal block diag((base * ratio^n) * m^exponent, m = 1, 2, ...).
    DiagonalGeometric { base: f64, ratio: f64, exponent: f64 },
    /// The same coordinate repeated forever.
    Constant(Box<Coordinate>),
}

/// Declared limit of the per-coordinate resolvent norms along the tail.
#[derive(Debug, Clone, PartialEq)]
pub enum ResolventTailLimit {
    /// Norms vanish: the tail contributes nothing to the supremum.
    Zero,
    /// Norms converge to a fixed value independent of lambda.
    Constant(f64),
    /// Norms converge to 1 / dist(lambda, points): the coordinate spectra
    /// collapse onto the given accumulation points.
    InverseDistance(Vec<ComplexPoint>),
    Unknown,
}

/// Tail descriptor: a generator plus declared limits that license passing
/// from per-coordinate values to suprema and limits.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricTail {
    generator: TailGenerator,
    norm_limit: DeclaredLimit,
    resolvent_limit: ResolventTailLimit,
    first_eigenvalue_limit: DeclaredLimit,
}

/// What implied limit a generator forces, used to validate declarations.
enum ImpliedLimit {
    Value(f64),
    Infinite,
    Unknown,
}

impl ParametricTail {
    pub fn new(
        generator: TailGenerator,
        norm_limit: DeclaredLimit,
        resolvent_limit: ResolventTailLimit,
        first_eigenvalue_limit: DeclaredLimit,
    ) -> Result<Self> {
        match &generator {
            TailGenerator::ScalarPower {
                scale,
                exponent,
                offset,
            } => {
                if !scale.is_finite() || !exponent.is_finite() || !offset.is_finite() {
                    return Err(Error::InvalidInput(
                        "tail: scalar rule parameters must be finite".into(),
                    ));
                }
                if *scale == 0.0 || *exponent == 0.0 {
                    return Err(Error::InvalidInput(
                        "tail: scalar rule needs nonzero scale and exponent".into(),
                    ));
                }
                let entry_limit = if *exponent > 0.0 {
                    ImpliedLimit::Infinite
                } else {
                    ImpliedLimit::Value(offset.abs())
                };
                check_limit("norm_limit", &norm_limit, &entry_limit)?;
                check_limit("first_eigenvalue_limit", &first_eigenvalue_limit, &entry_limit)?;
                match (&resolvent_limit, *exponent > 0.0) {
                    (ResolventTailLimit::Unknown, _) => {}
                    (ResolventTailLimit::Zero, true) => {}
                    (ResolventTailLimit::InverseDistance(pts), false)
                        if pts.len() == 1
                            && (pts[0] - ComplexPoint::new(*offset, 0.0)).norm() <= 1e-12 => {}
                    _ => {
                        return Err(Error::InvalidInput(
                            "tail: resolvent_limit contradicts the scalar rule's entry limit"
                                .into(),
                        ))
                    }
                }
            }
            TailGenerator::Ode {
                scale,
                exponent,
                a,
                b,
                theta,
            } => {
                if !(scale.is_finite() && *scale > 0.0) || !(exponent.is_finite() && *exponent > 0.0)
                {
                    return Err(Error::InvalidInput(
                        "tail: damping rule needs positive scale and exponent".into(),
                    ));
                }
                // constructing the first block validates interval and phase
                VectorOdeOperator::new(*scale, *a, *b, *theta)?;
                check_limit("norm_limit", &norm_limit, &ImpliedLimit::Infinite)?;
                check_limit(
                    "first_eigenvalue_limit",
                    &first_eigenvalue_limit,
                    &ImpliedLimit::Infinite,
                )?;
                if !matches!(
                    resolvent_limit,
                    ResolventTailLimit::Zero | ResolventTailLimit::Unknown
                ) {
                    return Err(Error::InvalidInput(
                        "tail: growing damping drives resolvent norms to zero".into(),
                    ));
                }
            }
            TailGenerator::DiagonalGeometric {
                base,
                ratio,
                exponent,
            } => {
                if !(base.is_finite() && *base > 0.0) {
                    return Err(Error::InvalidInput("tail: base must be positive".into()));
                }
                if !(ratio.is_finite() && *ratio > 1.0) {
                    return Err(Error::InvalidInput(
                        "tail: ratio must exceed 1 for a growing geometric tail".into(),
                    ));
                }
                if !(exponent.is_finite() && *exponent >= 1.0) {
                    return Err(Error::InvalidInput(
                        "tail: diagonal exponent must be at least 1".into(),
                    ));
                }
                check_limit("norm_limit", &norm_limit, &ImpliedLimit::Infinite)?;
                check_limit(
                    "first_eigenvalue_limit",
                    &first_eigenvalue_limit,
                    &ImpliedLimit::Infinite,
                )?;
                if !matches!(
                    resolvent_limit,
                    ResolventTailLimit::Zero | ResolventTailLimit::Unknown
                ) {
                    return Err(Error::InvalidInput(
                        "tail: geometric growth drives resolvent norms to zero".into(),
                    ));
                }
            }
            TailGenerator::Constant(block) => {
                let implied_norm = match block.operator_norm() {
                    NormValue::Finite(v) => ImpliedLimit::Value(v),
                    NormValue::Infinite => ImpliedLimit::Infinite,
                    NormValue::Unknown => ImpliedLimit::Unknown,
                };
                check_limit("norm_limit", &norm_limit, &implied_norm)?;
                let implied_first = match block.min_eigenvalue_modulus() {
                    Some(v) => ImpliedLimit::Value(v),
                    None => ImpliedLimit::Unknown,
                };
                check_limit("first_eigenvalue_limit", &first_eigenvalue_limit, &implied_first)?;
                if !matches!(resolvent_limit, ResolventTailLimit::Unknown) {
                    return Err(Error::InvalidInput(
                        "tail: a constant tail computes its resolvent limit from the block; declare unknown"
                            .into(),
                    ));
                }
            }
        }
        Ok(ParametricTail {
            generator,
            norm_limit,
            resolvent_limit,
            first_eigenvalue_limit,
        })
    }

    pub fn generator(&self) -> &TailGenerator {
        &self.generator
    }

    pub fn norm_limit(&self) -> &DeclaredLimit {
        &self.norm_limit
    }

    pub fn resolvent_limit(&self) -> &ResolventTailLimit {
        &self.resolvent_limit
    }

    pub fn first_eigenvalue_limit(&self) -> &DeclaredLimit {
        &self.first_eigenvalue_limit
    }
}

/// Validate one declared limit against what the generator implies. Unknown
/// always passes; anything else must be consistent.
fn check_limit(field: &str, declared: &DeclaredLimit, implied: &ImpliedLimit) -> Result<()> {
    let ok = match (declared, implied) {
        (DeclaredLimit::Unknown, _) => true,
        (DeclaredLimit::Zero, ImpliedLimit::Value(v)) => *v == 0.0,
        (DeclaredLimit::Infinity, ImpliedLimit::Infinite) => true,
        (DeclaredLimit::BoundedBy(bound), ImpliedLimit::Value(v)) => {
            bound.is_finite() && *bound >= 0.0 && v <= bound
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "tail: declared {field} contradicts the generated coordinates"
        )))
    }
}

/// How a family continues past its explicit prefix.
#[derive(Debug, Clone, PartialEq)]
pub enum TailRule {
    /// No further coordinates.
    Finite,
    Parametric(ParametricTail),
}

/// A countable direct sum: explicit prefix coordinates, then the tail rule.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorFamily {
    prefix: Vec<Coordinate>,
    tail: TailRule,
}

impl OperatorFamily {
    pub fn new(prefix: Vec<Coordinate>, tail: TailRule) -> Result<Self> {
        if prefix.is_empty() && matches!(tail, TailRule::Finite) {
            return Err(Error::InvalidInput(
                "family: need at least one coordinate".into(),
            ));
        }
        Ok(OperatorFamily { prefix, tail })
    }

    pub fn finite(coordinates: Vec<Coordinate>) -> Result<Self> {
        OperatorFamily::new(coordinates, TailRule::Finite)
    }

    pub fn prefix(&self) -> &[Coordinate] {
        &self.prefix
    }

    pub fn tail(&self) -> &TailRule {
        &self.tail
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.tail, TailRule::Finite)
    }

    /// Number of coordinates; None for an infinite family.
    pub fn coordinate_count(&self) -> Option<u64> {
        self.is_finite().then_some(self.prefix.len() as u64)
    }

    /// First absolute index generated by the tail.
    fn tail_start(&self) -> u64 {
        self.prefix.len() as u64 + 1
    }

    /// The coordinate at 1-based absolute index n, materializing tail
    /// coordinates from the generator.
    pub fn coordinate(&self, n: u64) -> Result<Coordinate> {
        if n == 0 {
            return Err(Error::InvalidInput("family: indices are 1-based".into()));
        }
        if n <= self.prefix.len() as u64 {
            return Ok(self.prefix[n as usize - 1].clone());
        }
        match &self.tail {
            TailRule::Finite => Err(Error::InvalidInput(format!(
                "family: index {n} exceeds the {} coordinates",
                self.prefix.len()
            ))),
            TailRule::Parametric(tail) => materialize(&tail.generator, n),
        }
    }

    /// Smallest coordinate index whose point spectrum contains lambda.
    pub fn point_witness(&self, lambda: ComplexPoint, tol: &Tolerance) -> Option<u64> {
        for (i, c) in self.prefix.iter().enumerate() {
            if c.point_spectrum_contains(lambda, tol) {
                return Some(i as u64 + 1);
            }
        }
        match &self.tail {
            TailRule::Finite => None,
            TailRule::Parametric(tail) => {
                tail_point_witness(&tail.generator, self.tail_start(), lambda, tol)
            }
        }
    }

    pub fn residual_witness(&self, lambda: ComplexPoint, tol: &Tolerance) -> Option<u64> {
        for (i, c) in self.prefix.iter().enumerate() {
            if c.residual_spectrum_contains(lambda, tol) {
                return Some(i as u64 + 1);
            }
        }
        match &self.tail {
            TailRule::Parametric(tail) => match &tail.generator {
                TailGenerator::Constant(block)
                    if block.residual_spectrum_contains(lambda, tol) =>
                {
                    Some(self.tail_start())
                }
                _ => None,
            },
            TailRule::Finite => None,
        }
    }

    pub fn continuous_witness(&self, lambda: ComplexPoint, tol: &Tolerance) -> Option<u64> {
        for (i, c) in self.prefix.iter().enumerate() {
            if c.continuous_spectrum_contains(lambda, tol) {
                return Some(i as u64 + 1);
            }
        }
        match &self.tail {
            TailRule::Parametric(tail) => match &tail.generator {
                TailGenerator::Constant(block)
                    if block.continuous_spectrum_contains(lambda, tol) =>
                {
                    Some(self.tail_start())
                }
                _ => None,
            },
            TailRule::Finite => None,
        }
    }

    /// sup over all coordinates of the resolvent norm at lambda. Infinite
    /// when lambda meets any coordinate's spectrum or the tail diverges; a
    /// lower bound when the tail's limit is undeclared.
    pub fn resolvent_norm_sup(&self, lambda: ComplexPoint, tol: &Tolerance) -> SupResult {
        self.resolvent_norm_sup_from(1, lambda, tol)
    }

    /// Same supremum restricted to coordinate indices >= from, used for
    /// truncation tail bounds.
    pub(crate) fn resolvent_norm_sup_from(
        &self,
        from: u64,
        lambda: ComplexPoint,
        tol: &Tolerance,
    ) -> SupResult {
        let mut sup = SupResult::Finite(0.0);
        for (i, c) in self.prefix.iter().enumerate() {
            if (i as u64 + 1) < from {
                continue;
            }
            match c.resolvent_norm(lambda, tol) {
                Some(v) => sup = sup.join(SupResult::Finite(v)),
                None => return SupResult::Infinite,
            }
        }
        match &self.tail {
            TailRule::Finite => sup,
            TailRule::Parametric(tail) => {
                let start = self.tail_start().max(from);
                sup.join(tail_resolvent_sup(tail, start, lambda, tol))
            }
        }
    }

    /// sup over all coordinates of the operator norm.
    pub fn operator_norm_sup(&self) -> NormValue {
        let mut sup = NormValue::Finite(0.0);
        for c in &self.prefix {
            sup = sup.join(c.operator_norm());
        }
        match &self.tail {
            TailRule::Finite => sup,
            TailRule::Parametric(tail) => sup.join(tail_norm_sup(tail, self.tail_start())),
        }
    }

    /// Do the coordinate norms tend to zero along the family? Trivially
    /// true for finite families; None when the tail's norm limit is
    /// undeclared or unknowable.
    pub fn norms_vanish(&self) -> Option<bool> {
        match &self.tail {
            TailRule::Finite => Some(true),
            TailRule::Parametric(tail) => match (&tail.generator, &tail.norm_limit) {
                (_, DeclaredLimit::Unknown) => match &tail.generator {
                    // a single unbounded block already refutes vanishing
                    TailGenerator::Ode { .. } | TailGenerator::DiagonalGeometric { .. } => {
                        Some(false)
                    }
                    TailGenerator::Constant(block) => match block.operator_norm() {
                        NormValue::Finite(v) => Some(v == 0.0),
                        NormValue::Infinite => Some(false),
                        NormValue::Unknown => None,
                    },
                    TailGenerator::ScalarPower { .. } => None,
                },
                (TailGenerator::ScalarPower { exponent, offset, .. }, _) => {
                    Some(*exponent < 0.0 && *offset == 0.0)
                }
                (TailGenerator::Ode { .. } | TailGenerator::DiagonalGeometric { .. }, _) => {
                    Some(false)
                }
                (TailGenerator::Constant(block), _) => match block.operator_norm() {
                    NormValue::Finite(v) => Some(v == 0.0),
                    NormValue::Infinite => Some(false),
                    NormValue::Unknown => None,
                },
            },
        }
    }

    /// Conjunction of per-coordinate compactness; None when any coordinate
    /// gives no verdict.
    pub fn all_compact(&self) -> Option<bool> {
        for c in &self.prefix {
            match c.is_compact() {
                Some(true) => {}
                Some(false) => return Some(false),
                None => return None,
            }
        }
        if let TailRule::Parametric(tail) = &self.tail {
            match &tail.generator {
                TailGenerator::ScalarPower { .. } => {}
                TailGenerator::Ode { .. } | TailGenerator::DiagonalGeometric { .. } => {
                    return Some(false)
                }
                TailGenerator::Constant(block) => match block.is_compact() {
                    Some(true) => {}
                    Some(false) => return Some(false),
                    None => return None,
                },
            }
        }
        Some(true)
    }

    pub fn all_compact_resolvent(&self) -> Option<bool> {
        for c in &self.prefix {
            match c.has_compact_resolvent() {
                Some(true) => {}
                Some(false) => return Some(false),
                None => return None,
            }
        }
        if let TailRule::Parametric(tail) = &self.tail {
            match &tail.generator {
                TailGenerator::ScalarPower { .. }
                | TailGenerator::Ode { .. }
                | TailGenerator::DiagonalGeometric { .. } => {}
                TailGenerator::Constant(block) => match block.has_compact_resolvent() {
                    Some(true) => {}
                    Some(false) => return Some(false),
                    None => return None,
                },
            }
        }
        Some(true)
    }

    /// Whether the tail's resolvent norms tend to zero; Some(true) for
    /// finite families (an empty tail imposes nothing).
    pub fn tail_resolvent_vanishes(&self) -> Option<bool> {
        match &self.tail {
            TailRule::Finite => Some(true),
            TailRule::Parametric(tail) => match &tail.resolvent_limit {
                ResolventTailLimit::Zero => Some(true),
                ResolventTailLimit::Constant(_) | ResolventTailLimit::InverseDistance(_) => {
                    Some(false)
                }
                ResolventTailLimit::Unknown => match &tail.generator {
                    // a constant tail's limit is the block value, never zero
                    TailGenerator::Constant(_) => Some(false),
                    _ => None,
                },
            },
        }
    }

    /// Sum of coordinate counting functions over the tail, gated by the
    /// declared first-eigenvalue limit.
    pub(crate) fn tail_counting(&self, lambda: f64) -> Result<u64> {
        match &self.tail {
            TailRule::Finite => Ok(0),
            TailRule::Parametric(tail) => tail_counting(tail, self.tail_start(), lambda),
        }
    }

    /// Tail eigenvalues with modulus <= lambda, tagged with the absolute
    /// index of the block owning each one.
    pub(crate) fn tail_eigenvalues_up_to(&self, lambda: f64) -> Result<Vec<(u64, ComplexPoint)>> {
        match &self.tail {
            TailRule::Finite => Ok(Vec::new()),
            TailRule::Parametric(tail) => tail_eigenvalues(tail, self.tail_start(), lambda),
        }
    }
}

/// Build the tail coordinate at absolute index n.
fn materialize(generator: &TailGenerator, n: u64) -> Result<Coordinate> {
    match generator {
        TailGenerator::ScalarPower {
            scale,
            exponent,
            offset,
        } => {
            let c = scale * (n as f64).powf(*exponent) + offset;
            Ok(Coordinate::Matrix(FiniteMatrixOperator::from_rows(vec![
                vec![ComplexPoint::new(c, 0.0)],
            ])?))
        }
        TailGenerator::Ode {
            scale,
            exponent,
            a,
            b,
            theta,
        } => {
            let s = scale * (n as f64).powf(*exponent);
            Ok(Coordinate::Ode(VectorOdeOperator::new(s, *a, *b, *theta)?))
        }
        TailGenerator::DiagonalGeometric {
            base,
            ratio,
            exponent,
        } => {
            let coeff = base * ratio.powi(n as i32);
            Ok(Coordinate::Diagonal(DiagonalOperator::power_with_growth(
                coeff,
                *exponent,
                0.0,
                GrowthDeclaration {
                    coefficient: coeff,
                    exponent: *exponent,
                },
            )?))
        }
        TailGenerator::Constant(block) => Ok((**block).clone()),
    }
}

/// Integer indices n >= start whose tail value c(n) could be nearest to x.
fn power_candidates(scale: f64, exponent: f64, offset: f64, x: f64, start: u64) -> Vec<u64> {
    let mut cands = vec![start];
    let u = (x - offset) / scale;
    if u > 0.0 {
        let r = u.powf(1.0 / exponent);
        if r.is_finite() && r >= 1.0 && r < INDEX_CAP as f64 {
            let f = (r.floor() as u64).max(1);
            for n in [f.saturating_sub(1).max(1), f, f + 1, f + 2] {
                if n >= start && !cands.contains(&n) {
                    cands.push(n);
                }
            }
        }
    }
    cands
}

/// Largest tail index worth probing for a geometric diagonal tail: blocks
/// beyond it have every entry modulus above x.
fn geometric_reach(base: f64, ratio: f64, x: f64, start: u64) -> Option<u64> {
    if x < base * ratio.powi(start as i32) {
        return None;
    }
    let n = ((x / base).ln() / ratio.ln()).floor();
    if !n.is_finite() || n < start as f64 {
        return Some(start);
    }
    Some((n as u64 + 1).min(start + TAIL_BLOCK_CAP))
}

fn tail_point_witness(
    generator: &TailGenerator,
    start: u64,
    lambda: ComplexPoint,
    tol: &Tolerance,
) -> Option<u64> {
    match generator {
        TailGenerator::ScalarPower {
            scale,
            exponent,
            offset,
        } => {
            let mut best: Option<(u64, f64)> = None;
            for n in power_candidates(*scale, *exponent, *offset, lambda.re, start) {
                let c = ComplexPoint::new(scale * (n as f64).powf(*exponent) + offset, 0.0);
                let d = (lambda - c).norm();
                if d <= tol.eps_membership && best.is_none_or(|(_, bd)| d < bd) {
                    best = Some((n, d));
                }
            }
            best.map(|(n, _)| n)
        }
        TailGenerator::Ode {
            scale,
            exponent,
            a,
            b,
            theta,
        } => {
            for n in power_candidates(*scale, *exponent, 0.0, lambda.re, start) {
                let s = scale * (n as f64).powf(*exponent);
                if let Ok(op) = VectorOdeOperator::new(s, *a, *b, *theta) {
                    if op.point_contains(lambda, tol) {
                        return Some(n);
                    }
                }
            }
            None
        }
        TailGenerator::DiagonalGeometric {
            base,
            ratio,
            exponent,
        } => {
            let reach = geometric_reach(*base, *ratio, lambda.re + tol.eps_membership, start)?;
            for n in start..=reach {
                let coeff = base * ratio.powi(n as i32);
                if let Ok(op) = DiagonalOperator::power(coeff, *exponent, 0.0) {
                    if op.point_contains(lambda, tol) {
                        return Some(n);
                    }
                }
            }
            None
        }
        TailGenerator::Constant(block) => {
            block.point_spectrum_contains(lambda, tol).then_some(start)
        }
    }
}

/// Supremum of tail resolvent norms for indices >= start: the best explicit
/// candidate joined with the declared-limit contribution.
fn tail_resolvent_sup(
    tail: &ParametricTail,
    start: u64,
    lambda: ComplexPoint,
    tol: &Tolerance,
) -> SupResult {
    let mut best = 0.0f64;
    match &tail.generator {
        TailGenerator::ScalarPower {
            scale,
            exponent,
            offset,
        } => {
            for n in power_candidates(*scale, *exponent, *offset, lambda.re, start) {
                let c = ComplexPoint::new(scale * (n as f64).powf(*exponent) + offset, 0.0);
                let d = (lambda - c).norm();
                if d <= tol.eps_membership {
                    return SupResult::Infinite;
                }
                best = best.max(1.0 / d);
            }
        }
        TailGenerator::Ode {
            scale,
            exponent,
            a,
            b,
            theta,
        } => {
            for n in power_candidates(*scale, *exponent, 0.0, lambda.re, start) {
                let s = scale * (n as f64).powf(*exponent);
                match VectorOdeOperator::new(s, *a, *b, *theta) {
                    Ok(op) => match op.resolvent_norm(lambda, tol) {
                        Some(v) => best = best.max(v),
                        None => return SupResult::Infinite,
                    },
                    Err(_) => return SupResult::Infinite,
                }
            }
        }
        TailGenerator::DiagonalGeometric {
            base,
            ratio,
            exponent,
        } => {
            // blocks within reach can approach lambda; later blocks sit above
            // it and their values only shrink, one extra block bounds them
            let reach = geometric_reach(*base, *ratio, lambda.re.abs() + 1.0, start)
                .unwrap_or(start)
                .max(start);
            for n in start..=(reach + 1) {
                let coeff = base * ratio.powi(n as i32);
                match DiagonalOperator::power(coeff, *exponent, 0.0) {
                    Ok(op) => match op.resolvent_norm_exact(lambda, tol) {
                        Some(v) => best = best.max(v),
                        None => return SupResult::Infinite,
                    },
                    Err(_) => return SupResult::Infinite,
                }
            }
        }
        TailGenerator::Constant(block) => {
            return match block.resolvent_norm(lambda, tol) {
                Some(v) if v >= tol.eps_div => SupResult::Infinite,
                Some(v) => SupResult::Finite(v),
                None => SupResult::Infinite,
            };
        }
    }
    match &tail.resolvent_limit {
        ResolventTailLimit::Zero => SupResult::Finite(best),
        ResolventTailLimit::Constant(v) => {
            if *v >= tol.eps_div {
                SupResult::Infinite
            } else {
                SupResult::Finite(best.max(*v))
            }
        }
        ResolventTailLimit::InverseDistance(points) => {
            let d = distance_to_points(lambda, points);
            if d <= tol.eps_membership || 1.0 / d >= tol.eps_div {
                SupResult::Infinite
            } else {
                SupResult::Finite(best.max(1.0 / d))
            }
        }
        ResolventTailLimit::Unknown => SupResult::LowerBound(best),
    }
}

fn tail_norm_sup(tail: &ParametricTail, start: u64) -> NormValue {
    match &tail.generator {
        // a single block of these kinds is already unbounded
        TailGenerator::Ode { .. } | TailGenerator::DiagonalGeometric { .. } => NormValue::Infinite,
        TailGenerator::Constant(block) => block.operator_norm(),
        TailGenerator::ScalarPower {
            scale,
            exponent,
            offset,
        } => {
            if matches!(tail.norm_limit, DeclaredLimit::Unknown) {
                return NormValue::Unknown;
            }
            if *exponent > 0.0 {
                NormValue::Infinite
            } else {
                let first = (scale * (start as f64).powf(*exponent) + offset).abs();
                NormValue::Finite(first.max(offset.abs()))
            }
        }
    }
}

/// Cross-block eigenvalue counting for the tail, gated by the declared
/// first-eigenvalue limit: without it the count's finiteness is not
/// established.
fn tail_counting(tail: &ParametricTail, start: u64, lambda: f64) -> Result<u64> {
    if !matches!(tail.generator, TailGenerator::Constant(_))
        && matches!(tail.first_eigenvalue_limit, DeclaredLimit::Unknown)
    {
        return Err(Error::UndeclaredLimit(
            "tail: counting needs a declared first-eigenvalue limit".into(),
        ));
    }
    match &tail.generator {
        TailGenerator::ScalarPower {
            scale,
            exponent,
            offset,
        } => match DiagonalOperator::power_band(*scale, *exponent, *offset, -lambda, lambda) {
            IndexBand::Empty => Ok(0),
            IndexBand::Range(a, b) => Ok(if b < start { 0 } else { b - a.max(start) + 1 }),
            IndexBand::From(_) => Err(Error::InvalidInput(format!(
                "tail: infinitely many scalar blocks have modulus <= {lambda}"
            ))),
        },
        TailGenerator::Ode {
            scale, exponent, a, b, theta,
        } => {
            // blocks with damping above lambda contribute nothing
            let mut total = 0u64;
            let mut n = start;
            loop {
                let s = scale * (n as f64).powf(*exponent);
                if s > lambda {
                    break;
                }
                total += VectorOdeOperator::new(s, *a, *b, *theta)?.counting(lambda);
                n += 1;
                if n - start > TAIL_BLOCK_CAP {
                    return Err(Error::InvalidInput(
                        "tail: counting sweep exceeds the block cap".into(),
                    ));
                }
            }
            Ok(total)
        }
        TailGenerator::DiagonalGeometric {
            base,
            ratio,
            exponent,
        } => {
            let mut total = 0u64;
            if let Some(reach) = geometric_reach(*base, *ratio, lambda, start) {
                for n in start..=reach {
                    let coeff = base * ratio.powi(n as i32);
                    total += DiagonalOperator::power(coeff, *exponent, 0.0)?.counting(lambda)?;
                }
            }
            Ok(total)
        }
        TailGenerator::Constant(block) => match block.counting(lambda)? {
            0 => Ok(0),
            _ => Err(Error::InvalidInput(format!(
                "tail: a repeated block with eigenvalues below {lambda} yields an infinite count"
            ))),
        },
    }
}

fn tail_eigenvalues(
    tail: &ParametricTail,
    start: u64,
    lambda: f64,
) -> Result<Vec<(u64, ComplexPoint)>> {
    // establishes finiteness (and the gate) before any enumeration
    let total = tail_counting(tail, start, lambda)?;
    if total > 10_000_000 {
        return Err(Error::InvalidInput(format!(
            "tail: {total} eigenvalues below {lambda} exceed the enumeration cap"
        )));
    }
    let mut out = Vec::with_capacity(total as usize);
    match &tail.generator {
        TailGenerator::ScalarPower {
            scale,
            exponent,
            offset,
        } => match DiagonalOperator::power_band(*scale, *exponent, *offset, -lambda, lambda) {
            IndexBand::Empty => {}
            IndexBand::Range(a, b) => {
                for n in a.max(start)..=b {
                    out.push((
                        n,
                        ComplexPoint::new(scale * (n as f64).powf(*exponent) + offset, 0.0),
                    ));
                }
            }
            IndexBand::From(_) => unreachable!("tail_counting rejects infinite bands"),
        },
        TailGenerator::Ode {
            scale, exponent, a, b, theta,
        } => {
            let mut n = start;
            loop {
                let s = scale * (n as f64).powf(*exponent);
                if s > lambda {
                    break;
                }
                let block = VectorOdeOperator::new(s, *a, *b, *theta)?;
                out.extend(block.eigenvalues_up_to(lambda).into_iter().map(|e| (n, e)));
                n += 1;
            }
        }
        TailGenerator::DiagonalGeometric {
            base,
            ratio,
            exponent,
        } => {
            if let Some(reach) = geometric_reach(*base, *ratio, lambda, start) {
                for n in start..=reach {
                    let coeff = base * ratio.powi(n as i32);
                    let block = DiagonalOperator::power(coeff, *exponent, 0.0)?;
                    out.extend(block.eigenvalues_up_to(lambda)?.into_iter().map(|e| (n, e)));
                }
            }
        }
        TailGenerator::Constant(_) => {}
    }
    Ok(out)
}
