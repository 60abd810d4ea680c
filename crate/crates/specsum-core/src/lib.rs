//! Spectral calculus for countable direct sums of Hilbert-space operators.
//!
//! A direct sum is described by a finite prefix of explicit coordinate
//! operators plus an optional closed-form tail. The crate classifies points
//! of the complex plane into point, continuous, and residual spectrum or
//! the resolvent set, computes resolvent-norm suprema with tail bounds,
//! certifies boundedness, compactness, and discreteness where the declared
//! data suffices, counts eigenvalues across coordinates, and fits observed
//! eigenvalue growth. A brute-force oracle over dense truncations
//! cross-checks the closed forms.

mod classify;
mod counting;
mod engine;
mod error;
mod family;
mod models;
mod oracle;
mod spectral;

pub use classify::{classify_direct_sum_point, spectral_scan, ScanRegion};
pub use counting::{
    collect_moduli, counting_bound, counting_function, counting_table, fit_asymptotic_exponent,
    merged_counting, verify_eigenvalue_bound, AsymptoticBoundSpec, AsymptoticFit, BoundViolation,
    CountingBound, CountingRow, GrowthTail, GrowthTerm, MergedCount,
};
pub use engine::{
    assemble_resolvent_truncation, direct_sum_norm, has_discrete_spectrum, is_bounded, is_compact,
    resolvent_tail_norm, Compactness, Discreteness, ResolventTruncation,
};
pub use error::{Error, Result};
pub use family::{
    OperatorFamily, ParametricTail, ResolventTailLimit, TailGenerator, TailRule,
};
pub use models::{
    Coordinate, DeclaredOperator, DiagonalOperator, EntryRule, FiniteMatrixOperator,
    GrowthDeclaration, MultipointOperator, ShiftOperator, VectorOdeOperator,
};
pub use oracle::{
    block_diag, brute_norm, brute_resolvent_norm, brute_spectrum, match_multisets,
    random_matrix_family, truncate_family, verify_family, FiniteTruncation, TruncationReport,
    VerifyConfig, VerifySuite, DIM_CAP,
};
pub use spectral::{
    ComplexPoint, DeclaredLimit, DirectSumClassification, NormValue, SpectralClass, SupResult,
    Tolerance,
};
