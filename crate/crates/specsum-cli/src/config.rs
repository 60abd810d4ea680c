//! TOML description of an operator family plus run defaults. The schema is
//! strict: unknown keys are rejected so typos surface as config errors
//! instead of silently changing a run.

use serde::Deserialize;
use specsum_core::{
    ComplexPoint, Coordinate, DeclaredLimit, DeclaredOperator, DiagonalOperator, EntryRule,
    FiniteMatrixOperator, GrowthDeclaration, MultipointOperator, OperatorFamily, ParametricTail,
    ResolventTailLimit, ShiftOperator, TailGenerator, TailRule, Tolerance, VectorOdeOperator,
};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub operators: Vec<OperatorSpec>,
    #[serde(default)]
    pub tail: Option<TailSpec>,
    #[serde(default)]
    pub tolerances: ToleranceSpec,
    #[serde(default)]
    pub defaults: DefaultsSpec,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OperatorSpec {
    Multipoint(MultipointSpec),
    Diagonal(DiagonalSpec),
    Ode(OdeSpec),
    Shift(ShiftSpec),
    Matrix(MatrixSpec),
    Declared(DeclaredSpec),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultipointSpec {
    pub a: f64,
    pub b: f64,
    pub amplitude: [f64; 2],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagonalSpec {
    #[serde(default)]
    pub scale: Option<f64>,
    #[serde(default)]
    pub exponent: Option<f64>,
    #[serde(default)]
    pub offset: Option<f64>,
    #[serde(default)]
    pub entries: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub growth: Option<GrowthSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthSpec {
    pub coefficient: f64,
    pub exponent: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OdeSpec {
    pub s: f64,
    pub a: f64,
    pub b: f64,
    #[serde(default)]
    pub theta: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftSpec {}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub rows: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeclaredSpec {
    #[serde(default)]
    pub point: Vec<[f64; 2]>,
    #[serde(default)]
    pub residual: Vec<[f64; 2]>,
    #[serde(default)]
    pub continuous: Vec<[f64; 2]>,
    #[serde(default)]
    pub compact_resolvent: bool,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "generator", rename_all = "snake_case")]
pub enum TailSpec {
    ScalarPower(ScalarPowerTailSpec),
    Ode(OdeTailSpec),
    DiagonalGeometric(DiagonalGeometricTailSpec),
    Constant(ConstantTailSpec),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarPowerTailSpec {
    pub scale: f64,
    pub exponent: f64,
    #[serde(default)]
    pub offset: f64,
    #[serde(default)]
    pub norm_limit: LimitSpec,
    #[serde(default)]
    pub resolvent_limit: ResolventLimitSpec,
    #[serde(default)]
    pub first_eigenvalue_limit: LimitSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OdeTailSpec {
    pub scale: f64,
    pub exponent: f64,
    pub a: f64,
    pub b: f64,
    #[serde(default)]
    pub theta: f64,
    #[serde(default)]
    pub norm_limit: LimitSpec,
    #[serde(default)]
    pub resolvent_limit: ResolventLimitSpec,
    #[serde(default)]
    pub first_eigenvalue_limit: LimitSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagonalGeometricTailSpec {
    pub base: f64,
    pub ratio: f64,
    pub exponent: f64,
    #[serde(default)]
    pub norm_limit: LimitSpec,
    #[serde(default)]
    pub resolvent_limit: ResolventLimitSpec,
    #[serde(default)]
    pub first_eigenvalue_limit: LimitSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantTailSpec {
    pub operator: Box<OperatorSpec>,
    #[serde(default)]
    pub norm_limit: LimitSpec,
    #[serde(default)]
    pub resolvent_limit: ResolventLimitSpec,
    #[serde(default)]
    pub first_eigenvalue_limit: LimitSpec,
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitSpec {
    Zero,
    Infinity,
    #[default]
    Unknown,
    #[serde(untagged)]
    BoundedBy {
        bounded_by: f64,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResolventLimitSpec {
    Zero,
    #[default]
    Unknown,
    #[serde(untagged)]
    Constant { constant: f64 },
    #[serde(untagged)]
    InverseDistance { inverse_distance: Vec<[f64; 2]> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceSpec {
    #[serde(default = "default_eps_membership")]
    pub eps_membership: f64,
    #[serde(default = "default_eps_div")]
    pub eps_div: f64,
}

impl Default for ToleranceSpec {
    fn default() -> Self {
        ToleranceSpec {
            eps_membership: default_eps_membership(),
            eps_div: default_eps_div(),
        }
    }
}

fn default_eps_membership() -> f64 {
    Tolerance::default().eps_membership
}

fn default_eps_div() -> f64 {
    Tolerance::default().eps_div
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefaultsSpec {
    #[serde(default = "default_blocks")]
    pub blocks: u64,
    #[serde(default = "default_size")]
    pub size: usize,
    #[serde(default = "default_fit_lo")]
    pub fit_lo: usize,
    #[serde(default = "default_fit_hi")]
    pub fit_hi: usize,
    #[serde(default = "default_counting_lambda")]
    pub counting_lambda: f64,
}

impl Default for DefaultsSpec {
    fn default() -> Self {
        DefaultsSpec {
            blocks: default_blocks(),
            size: default_size(),
            fit_lo: default_fit_lo(),
            fit_hi: default_fit_hi(),
            counting_lambda: default_counting_lambda(),
        }
    }
}

fn default_blocks() -> u64 {
    4
}

fn default_size() -> usize {
    12
}

fn default_fit_lo() -> usize {
    50
}

fn default_fit_hi() -> usize {
    200
}

fn default_counting_lambda() -> f64 {
    10.0
}

fn point(pair: [f64; 2]) -> ComplexPoint {
    ComplexPoint::new(pair[0], pair[1])
}

fn points(pairs: &[[f64; 2]]) -> Vec<ComplexPoint> {
    pairs.iter().copied().map(point).collect()
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, CliError> {
        let config: Config = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        if config.operators.is_empty() && config.tail.is_none() {
            return Err(CliError::Config(
                "config declares no operators and no tail".into(),
            ));
        }
        if config.defaults.fit_lo >= config.defaults.fit_hi {
            return Err(CliError::Config(format!(
                "defaults: fit_lo {} must be below fit_hi {}",
                config.defaults.fit_lo, config.defaults.fit_hi
            )));
        }
        Ok(config)
    }

    pub fn tolerance(&self) -> Tolerance {
        Tolerance {
            eps_membership: self.tolerances.eps_membership,
            eps_div: self.tolerances.eps_div,
        }
    }

    pub fn family(&self) -> Result<OperatorFamily, CliError> {
        let prefix: Vec<Coordinate> = self
            .operators
            .iter()
            .enumerate()
            .map(|(i, spec)| {
                build_coordinate(spec).map_err(|e| {
                    CliError::Config(format!("operators[{i}]: {e}"))
                })
            })
            .collect::<Result<_, _>>()?;
        let tail = match &self.tail {
            None => TailRule::Finite,
            Some(spec) => TailRule::Parametric(
                build_tail(spec).map_err(|e| CliError::Config(format!("tail: {e}")))?,
            ),
        };
        OperatorFamily::new(prefix, tail).map_err(|e| CliError::Config(e.to_string()))
    }
}

fn build_coordinate(spec: &OperatorSpec) -> Result<Coordinate, specsum_core::Error> {
    match spec {
        OperatorSpec::Multipoint(m) => Ok(Coordinate::Multipoint(MultipointOperator::new(
            m.a,
            m.b,
            point(m.amplitude),
        )?)),
        OperatorSpec::Diagonal(d) => Ok(Coordinate::Diagonal(build_diagonal(d)?)),
        OperatorSpec::Ode(o) => Ok(Coordinate::Ode(VectorOdeOperator::new(
            o.s, o.a, o.b, o.theta,
        )?)),
        OperatorSpec::Shift(_) => Ok(Coordinate::Shift(ShiftOperator::new())),
        OperatorSpec::Matrix(m) => {
            let rows = m.rows.iter().map(|row| points(row)).collect();
            Ok(Coordinate::Matrix(FiniteMatrixOperator::from_rows(rows)?))
        }
        OperatorSpec::Declared(d) => Ok(Coordinate::Declared(DeclaredOperator::new(
            points(&d.point),
            points(&d.residual),
            points(&d.continuous),
            d.compact_resolvent,
        )?)),
    }
}

fn build_diagonal(spec: &DiagonalSpec) -> Result<DiagonalOperator, specsum_core::Error> {
    let growth = spec.growth.as_ref().map(|g| GrowthDeclaration {
        coefficient: g.coefficient,
        exponent: g.exponent,
    });
    match (&spec.entries, spec.scale, spec.exponent) {
        (Some(entries), None, None) => {
            if spec.offset.is_some() {
                return Err(specsum_core::Error::InvalidInput(
                    "diagonal: offset applies to the power rule, not explicit entries".into(),
                ));
            }
            DiagonalOperator::new(EntryRule::List(points(entries)), None, growth)
        }
        (None, Some(scale), Some(exponent)) => {
            let offset = spec.offset.unwrap_or(0.0);
            match growth {
                Some(g) => DiagonalOperator::power_with_growth(scale, exponent, offset, g),
                None => DiagonalOperator::power(scale, exponent, offset),
            }
        }
        _ => Err(specsum_core::Error::InvalidInput(
            "diagonal: give either entries or both scale and exponent".into(),
        )),
    }
}

fn build_limit(spec: &LimitSpec) -> DeclaredLimit {
    match spec {
        LimitSpec::Zero => DeclaredLimit::Zero,
        LimitSpec::Infinity => DeclaredLimit::Infinity,
        LimitSpec::Unknown => DeclaredLimit::Unknown,
        LimitSpec::BoundedBy { bounded_by } => DeclaredLimit::BoundedBy(*bounded_by),
    }
}

fn build_resolvent_limit(spec: &ResolventLimitSpec) -> ResolventTailLimit {
    match spec {
        ResolventLimitSpec::Zero => ResolventTailLimit::Zero,
        ResolventLimitSpec::Unknown => ResolventTailLimit::Unknown,
        ResolventLimitSpec::Constant { constant } => ResolventTailLimit::Constant(*constant),
        ResolventLimitSpec::InverseDistance { inverse_distance } => {
            ResolventTailLimit::InverseDistance(points(inverse_distance))
        }
    }
}

fn build_tail(spec: &TailSpec) -> Result<ParametricTail, specsum_core::Error> {
    let (generator, norm, resolvent, first) = match spec {
        TailSpec::ScalarPower(t) => (
            TailGenerator::ScalarPower {
                scale: t.scale,
                exponent: t.exponent,
                offset: t.offset,
            },
            &t.norm_limit,
            &t.resolvent_limit,
            &t.first_eigenvalue_limit,
        ),
        TailSpec::Ode(t) => (
            TailGenerator::Ode {
                scale: t.scale,
                exponent: t.exponent,
                a: t.a,
                b: t.b,
                theta: t.theta,
            },
            &t.norm_limit,
            &t.resolvent_limit,
            &t.first_eigenvalue_limit,
        ),
        TailSpec::DiagonalGeometric(t) => (
            TailGenerator::DiagonalGeometric {
                base: t.base,
                ratio: t.ratio,
                exponent: t.exponent,
            },
            &t.norm_limit,
            &t.resolvent_limit,
            &t.first_eigenvalue_limit,
        ),
        TailSpec::Constant(t) => (
            TailGenerator::Constant(Box::new(build_coordinate(&t.operator)?)),
            &t.norm_limit,
            &t.resolvent_limit,
            &t.first_eigenvalue_limit,
        ),
    };
    ParametricTail::new(
        generator,
        build_limit(norm),
        build_resolvent_limit(resolvent),
        build_limit(first),
    )
}
