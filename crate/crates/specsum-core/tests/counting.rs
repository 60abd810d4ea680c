use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use specsum_core::{
    collect_moduli, counting_bound, counting_table, fit_asymptotic_exponent, merged_counting,
    verify_eigenvalue_bound, AsymptoticBoundSpec, ComplexPoint, Coordinate, DeclaredLimit,
    DiagonalOperator, Error, GrowthDeclaration, GrowthTail, GrowthTerm, MultipointOperator,
    OperatorFamily, ParametricTail, ResolventTailLimit, ShiftOperator, TailGenerator, TailRule,
    Tolerance,
};

fn c(re: f64, im: f64) -> ComplexPoint {
    ComplexPoint::new(re, im)
}

/// diag(pi^n m^2) for n = 1..=blocks, with growth declarations attached.
fn quadratic_pi_family(blocks: usize) -> OperatorFamily {
    let coords = (1..=blocks)
        .map(|n| {
            let coeff = PI.powi(n as i32);
            Coordinate::Diagonal(
                DiagonalOperator::power_with_growth(
                    coeff,
                    2.0,
                    0.0,
                    GrowthDeclaration {
                        coefficient: coeff,
                        exponent: 2.0,
                    },
                )
                .unwrap(),
            )
        })
        .collect();
    OperatorFamily::finite(coords).unwrap()
}

#[test]
fn merged_counting_adds_coordinate_counts() {
    // two coordinates: diag(pi^1 m^2) and diag(pi^2 m^2); radius 40 catches
    // pi, 4 pi, 9 pi, 4 pi^2 wait: pi^2 m^2 gives pi^2, 4 pi^2 and
    // pi m^2 gives pi, 4 pi, 9 pi, 12 pi > 40; exact count is 5
    let family = quadratic_pi_family(2);
    let tol = Tolerance::default();
    let merged = merged_counting(&family, 40.0, &tol).unwrap();
    assert_eq!(merged.count, 5);
    assert!(!merged.overlap);
}

#[test]
fn merged_counting_flags_cross_coordinate_overlap() {
    let shared = DiagonalOperator::from_list(vec![c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
    let other = DiagonalOperator::from_list(vec![c(2.0, 0.0), c(5.0, 0.0)]).unwrap();
    let family = OperatorFamily::finite(vec![
        Coordinate::Diagonal(shared),
        Coordinate::Diagonal(other),
    ])
    .unwrap();
    let tol = Tolerance::default();
    let merged = merged_counting(&family, 3.0, &tol).unwrap();
    // 2 shows up in both coordinates: counted twice, flagged
    assert_eq!(merged.count, 3);
    assert!(merged.overlap);
    // below the shared point no overlap is visible
    let merged = merged_counting(&family, 1.5, &tol).unwrap();
    assert_eq!(merged.count, 1);
    assert!(!merged.overlap);
}

#[test]
fn merged_counting_multiplicity_within_one_block_is_not_overlap() {
    let repeated = DiagonalOperator::from_list(vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
    let family = OperatorFamily::finite(vec![Coordinate::Diagonal(repeated)]).unwrap();
    let tol = Tolerance::default();
    let merged = merged_counting(&family, 2.0, &tol).unwrap();
    assert_eq!(merged.count, 2);
    assert!(!merged.overlap);
}

#[test]
fn merged_counting_rejects_non_enumerable_coordinates() {
    let family = OperatorFamily::finite(vec![Coordinate::Shift(ShiftOperator::new())]).unwrap();
    let tol = Tolerance::default();
    assert!(matches!(
        merged_counting(&family, 1.0, &tol),
        Err(Error::UnsupportedModel(_))
    ));
}

#[test]
fn tail_counting_needs_declared_first_eigenvalue_limit() {
    let tail = ParametricTail::new(
        TailGenerator::ScalarPower {
            scale: 1.0,
            exponent: 2.0,
            offset: 0.0,
        },
        DeclaredLimit::Infinity,
        ResolventTailLimit::Zero,
        DeclaredLimit::Unknown,
    )
    .unwrap();
    let family = OperatorFamily::new(vec![], TailRule::Parametric(tail)).unwrap();
    let tol = Tolerance::default();
    assert!(matches!(
        merged_counting(&family, 10.0, &tol),
        Err(Error::UndeclaredLimit(_))
    ));
    // with the limit declared the band is counted exactly: n^2 <= 10
    let tail = ParametricTail::new(
        TailGenerator::ScalarPower {
            scale: 1.0,
            exponent: 2.0,
            offset: 0.0,
        },
        DeclaredLimit::Infinity,
        ResolventTailLimit::Zero,
        DeclaredLimit::Infinity,
    )
    .unwrap();
    let family = OperatorFamily::new(vec![], TailRule::Parametric(tail)).unwrap();
    assert_eq!(merged_counting(&family, 10.0, &tol).unwrap().count, 3);
}

#[test]
fn counting_table_walks_the_grid() {
    let family = quadratic_pi_family(1);
    let tol = Tolerance::default();
    let rows = counting_table(&family, &[1.0, 10.0, 100.0], &tol).unwrap();
    let counts: Vec<u64> = rows.iter().map(|r| r.count).collect();
    // pi m^2 <= 1: none; <= 10: m = 1; <= 100: m <= 5
    assert_eq!(counts, vec![0, 1, 5]);
    assert!(rows.iter().all(|r| !r.overlap));
}

#[test]
fn multipoint_and_diagonal_merge() {
    let family = OperatorFamily::finite(vec![
        Coordinate::Multipoint(MultipointOperator::new(0.0, 1.0, c(1.0, 0.0)).unwrap()),
        Coordinate::Diagonal(DiagonalOperator::power(1.0, 2.0, 0.0).unwrap()),
    ])
    .unwrap();
    let tol = Tolerance::default();
    // radius 7: lattice contributes k in {-1, 0, 1}, squares contribute 1, 4
    let merged = merged_counting(&family, 7.0, &tol).unwrap();
    assert_eq!(merged.count, 5);
}

#[test]
fn collected_moduli_merge_in_ascending_order() {
    let family = quadratic_pi_family(5);
    let tol = Tolerance::default();
    let moduli = collect_moduli(&family, 8, &tol).unwrap();
    let expected = [
        PI,
        PI * PI,
        4.0 * PI,
        9.0 * PI,
        PI.powi(3),
        4.0 * PI * PI,
        16.0 * PI,
        25.0 * PI,
    ];
    assert_eq!(moduli.len(), 8);
    for (got, want) in moduli.iter().zip(expected) {
        assert_abs_diff_eq!(*got, want, epsilon = 1e-10);
    }
    // deeper into the merge: the 200th smallest value
    let moduli = collect_moduli(&family, 200, &tol).unwrap();
    assert_abs_diff_eq!(moduli[199], 27723.718762660006, epsilon = 1e-6);
}

#[test]
fn fit_recovers_synthetic_power_law_exactly() {
    let gamma = 2.5;
    let alpha = 1.75;
    let moduli: Vec<f64> = (1..=100)
        .map(|n| gamma * (n as f64).powf(alpha))
        .collect();
    let fit = fit_asymptotic_exponent(&moduli, (1, 100)).unwrap();
    assert_abs_diff_eq!(fit.alpha, alpha, epsilon = 1e-10);
    assert_abs_diff_eq!(fit.gamma, gamma, epsilon = 1e-9);
    assert!(fit.residual < 1e-12);
}

#[test]
fn fit_on_merged_quadratic_family_recovers_exponent_two() {
    let family = quadratic_pi_family(5);
    let tol = Tolerance::default();
    let moduli = collect_moduli(&family, 200, &tol).unwrap();
    let fit = fit_asymptotic_exponent(&moduli, (50, 200)).unwrap();
    assert_abs_diff_eq!(fit.alpha, 1.9592953514078, epsilon = 1e-9);
    assert_abs_diff_eq!(fit.gamma, 0.845420382949332, epsilon = 1e-9);
    assert!((fit.alpha - 2.0).abs() / 2.0 < 0.05);
    // a 10 percent slack on the fitted floor holds from index 10 onward
    let violations = verify_eigenvalue_bound(&moduli, fit.gamma * 0.9, fit.alpha, 10);
    assert!(violations.is_empty(), "violations: {violations:?}");
}

#[test]
fn fit_rejects_degenerate_windows() {
    let moduli = [1.0, 2.0, 3.0];
    assert!(fit_asymptotic_exponent(&moduli, (2, 2)).is_err());
    assert!(fit_asymptotic_exponent(&moduli, (1, 4)).is_err());
    assert!(fit_asymptotic_exponent(&[0.0, 1.0], (1, 2)).is_err());
}

#[test]
fn counting_bound_dominates_merged_count() {
    let family = quadratic_pi_family(5);
    let tol = Tolerance::default();
    let spec = AsymptoticBoundSpec::from_family(&family).unwrap();
    for lambda in [10.0, 100.0, 1000.0, 1e4, 1e5, 1e6] {
        let bound = counting_bound(&spec, lambda).unwrap();
        let merged = merged_counting(&family, lambda, &tol).unwrap();
        assert!(
            bound.value >= merged.count as f64,
            "bound {} undercuts count {} at {lambda}",
            bound.value,
            merged.count
        );
    }
    // frozen counts along the way
    assert_eq!(merged_counting(&family, 100.0, &tol).unwrap().count, 10);
    assert_eq!(merged_counting(&family, 1e4, &tol).unwrap().count, 119);
    assert_eq!(merged_counting(&family, 1e6, &tol).unwrap().count, 1219);
}

#[test]
fn bound_spec_series_and_limit_constant() {
    // five explicit coefficients pi^n at exponent 2, then the geometric
    // rest of the ladder
    let prefix: Vec<GrowthTerm> = (1..=5)
        .map(|n| GrowthTerm {
            coefficient: PI.powi(n),
            exponent: 2.0,
        })
        .collect();
    let spec = AsymptoticBoundSpec::new(
        prefix,
        GrowthTail::Geometric {
            base: 1.0,
            ratio: PI,
            exponent: 2.0,
            start: 6,
        },
    )
    .unwrap();
    let (lead, alpha) = spec.min_exponent();
    assert_eq!(lead, 1);
    assert_abs_diff_eq!(alpha, 2.0);
    // every exponent equal: the normalized bound has a limit constant
    let constant = spec.limit_constant().unwrap();
    assert_abs_diff_eq!(constant, 1.2945757197374845, epsilon = 1e-12);
    // the series at any radius equals that constant
    assert_abs_diff_eq!(spec.series(1e6), constant, epsilon = 1e-12);
    // bound value = sqrt(lambda) * constant
    let bound = spec.bound(1e6).unwrap();
    assert_abs_diff_eq!(bound.value, 1e3 * constant, epsilon = 1e-9);
}

#[test]
fn mixed_exponents_have_no_limit_constant() {
    let spec = AsymptoticBoundSpec::new(
        vec![
            GrowthTerm {
                coefficient: 1.0,
                exponent: 1.5,
            },
            GrowthTerm {
                coefficient: 2.0,
                exponent: 2.0,
            },
        ],
        GrowthTail::None,
    )
    .unwrap();
    let (lead, alpha) = spec.min_exponent();
    assert_eq!(lead, 1);
    assert_abs_diff_eq!(alpha, 1.5);
    assert!(spec.limit_constant().is_none());
}

#[test]
fn bound_spec_validation() {
    assert!(AsymptoticBoundSpec::new(vec![], GrowthTail::None).is_err());
    assert!(AsymptoticBoundSpec::new(
        vec![GrowthTerm {
            coefficient: 0.0,
            exponent: 2.0
        }],
        GrowthTail::None
    )
    .is_err());
    assert!(AsymptoticBoundSpec::new(
        vec![GrowthTerm {
            coefficient: 1.0,
            exponent: 0.5
        }],
        GrowthTail::None
    )
    .is_err());
    // tail must start right after the prefix
    assert!(AsymptoticBoundSpec::new(
        vec![GrowthTerm {
            coefficient: 1.0,
            exponent: 2.0
        }],
        GrowthTail::Geometric {
            base: 1.0,
            ratio: 2.0,
            exponent: 2.0,
            start: 5
        }
    )
    .is_err());
}

#[test]
fn from_family_requires_growth_declarations() {
    // the helper family carries declarations: accepted
    assert!(AsymptoticBoundSpec::from_family(&quadratic_pi_family(2)).is_ok());
    // a bare diagonal without declarations: refused
    let family = OperatorFamily::finite(vec![Coordinate::Diagonal(
        DiagonalOperator::power(1.0, 2.0, 0.0).unwrap(),
    )])
    .unwrap();
    assert!(matches!(
        AsymptoticBoundSpec::from_family(&family),
        Err(Error::InsufficientData(_))
    ));
}

#[test]
fn from_family_reads_geometric_tail() {
    let tail = ParametricTail::new(
        TailGenerator::DiagonalGeometric {
            base: 1.0,
            ratio: PI,
            exponent: 2.0,
        },
        DeclaredLimit::Infinity,
        ResolventTailLimit::Zero,
        DeclaredLimit::Infinity,
    )
    .unwrap();
    let family = OperatorFamily::new(vec![], TailRule::Parametric(tail)).unwrap();
    let spec = AsymptoticBoundSpec::from_family(&family).unwrap();
    match spec.tail() {
        GrowthTail::Geometric { ratio, start, .. } => {
            assert_abs_diff_eq!(ratio, PI);
            assert_eq!(start, 1);
        }
        GrowthTail::None => panic!("expected a geometric tail"),
    }
}
