//! End-to-end acceptance gates. Each test prints one PASS/FAIL line with the
//! measured quantity so a full run reads as a checklist. A failing gate is
//! left failing on purpose when the measured behavior genuinely falls short;
//! see the bound-decay gate below.

use std::f64::consts::PI;
use std::time::Instant;

use specsum_core::{
    assemble_resolvent_truncation, block_diag, brute_norm, brute_spectrum,
    classify_direct_sum_point, collect_moduli, fit_asymptotic_exponent,
    has_discrete_spectrum, is_compact, match_multisets, merged_counting, random_matrix_family,
    resolvent_tail_norm, truncate_family, AsymptoticBoundSpec, Compactness, ComplexPoint,
    Coordinate, DeclaredLimit, DiagonalOperator, Discreteness, FiniteMatrixOperator,
    GrowthDeclaration, MultipointOperator, NormValue, OperatorFamily, ParametricTail,
    ResolventTailLimit, ShiftOperator, SpectralClass, SupResult, TailGenerator, TailRule,
    Tolerance, VectorOdeOperator,
};

fn c(re: f64, im: f64) -> ComplexPoint {
    ComplexPoint::new(re, im)
}

fn gate(name: &str, pass: bool, detail: &str) {
    println!(
        "[acceptance {name}] {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "acceptance gate {name} failed: {detail}");
}

/// 1x1 blocks with entries 1/n and every tail limit declared.
fn reciprocal_family() -> OperatorFamily {
    let tail = ParametricTail::new(
        TailGenerator::ScalarPower {
            scale: 1.0,
            exponent: -1.0,
            offset: 0.0,
        },
        DeclaredLimit::Zero,
        ResolventTailLimit::InverseDistance(vec![c(0.0, 0.0)]),
        DeclaredLimit::Zero,
    )
    .unwrap();
    OperatorFamily::new(vec![], TailRule::Parametric(tail)).unwrap()
}

/// diag(coeff^n m^p) for n = 1..=5 with growth declarations attached.
fn power_family(coeff: f64, p: f64) -> OperatorFamily {
    let coords = (1..=5)
        .map(|n| {
            let scale = coeff.powi(n);
            Coordinate::Diagonal(
                DiagonalOperator::power_with_growth(
                    scale,
                    p,
                    0.0,
                    GrowthDeclaration {
                        coefficient: scale,
                        exponent: p,
                    },
                )
                .unwrap(),
            )
        })
        .collect();
    OperatorFamily::finite(coords).unwrap()
}

#[test]
fn acceptance_01_norm_supremum_matches_brute_force() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for seed in 0..50 {
        let family = random_matrix_family(seed).unwrap();
        let engine = match specsum_core::direct_sum_norm(&family) {
            NormValue::Finite(v) => v,
            other => panic!("seed {seed}: expected a finite norm, got {other:?}"),
        };
        let blocks = family.coordinate_count().unwrap();
        let finite = truncate_family(&family, blocks, 8).unwrap();
        let oracle = brute_norm(&finite.assembled);
        worst = worst.max((engine - oracle).abs());
    }
    let elapsed = start.elapsed();
    let pass = worst <= 1e-10 && elapsed.as_secs_f64() < 10.0;
    gate(
        "01 norm supremum",
        pass,
        &format!("50 seeded families, max |engine - oracle| = {worst:.3e}, {elapsed:?}"),
    );
}

#[test]
fn acceptance_02_spectrum_union_matches_block_eigenvalues() {
    let mut worst: f64 = 0.0;
    for seed in 0..50 {
        let family = random_matrix_family(seed).unwrap();
        let blocks = family.coordinate_count().unwrap();
        let finite = truncate_family(&family, blocks, 8).unwrap();
        let mut union = Vec::new();
        for block in &finite.blocks {
            union.extend(brute_spectrum(block).unwrap());
        }
        let assembled = brute_spectrum(&finite.assembled).unwrap();
        let mismatch = match_multisets(&union, &assembled).unwrap();
        worst = worst.max(mismatch);
    }
    let pass = worst <= 1e-8;
    gate(
        "02 spectrum union",
        pass,
        &format!("50 seeded families, worst eigenvalue pairing distance = {worst:.3e}"),
    );
}

#[test]
fn acceptance_03a_lattice_points_and_midpoints() {
    let family = OperatorFamily::finite(vec![Coordinate::Multipoint(
        MultipointOperator::new(0.0, 1.0, c(1.0, 0.0)).unwrap(),
    )])
    .unwrap();
    let tol = Tolerance::default();
    let mut pass = true;
    for k in -10..=10 {
        let on = classify_direct_sum_point(&family, c(0.0, 2.0 * PI * k as f64), &tol);
        pass &= on.class == SpectralClass::PointSpectrum && on.witness == Some(1);
        let off = classify_direct_sum_point(&family, c(0.0, (2 * k + 1) as f64 * PI), &tol);
        let sup_ok = match off.resolvent_sup {
            SupResult::Finite(v) => (v * PI - 1.0).abs() <= 1e-10,
            _ => false,
        };
        pass &= off.class == SpectralClass::Resolvent && sup_ok;
    }
    gate(
        "03a lattice classification",
        pass,
        "eigenvalues 2k*pi*i identified for |k| <= 10, midpoints resolve with sup 1/pi",
    );
}

#[test]
fn acceptance_03b_accumulation_point_is_continuous() {
    let family = reciprocal_family();
    let tol = Tolerance::default();
    let at_zero = classify_direct_sum_point(&family, c(0.0, 0.0), &tol);
    let at_quarter = classify_direct_sum_point(&family, c(0.25, 0.0), &tol);
    let pass = at_zero.class == SpectralClass::ContinuousSpectrum
        && at_zero.witness.is_none()
        && at_zero.resolvent_sup.is_infinite()
        && at_quarter.class == SpectralClass::PointSpectrum
        && at_quarter.witness == Some(4);
    gate(
        "03b accumulation point",
        pass,
        &format!(
            "0 -> {} (witness {:?}), 1/4 -> {} (witness {:?})",
            at_zero.class, at_zero.witness, at_quarter.class, at_quarter.witness
        ),
    );
}

#[test]
fn acceptance_03c_shift_block_contributes_residual_spectrum() {
    let family = OperatorFamily::finite(vec![
        Coordinate::Shift(ShiftOperator::new()),
        Coordinate::Diagonal(DiagonalOperator::power(1.0, 1.0, 0.0).unwrap()),
    ])
    .unwrap();
    let tol = Tolerance::default();
    let at_zero = classify_direct_sum_point(&family, c(0.0, 0.0), &tol);
    let at_one = classify_direct_sum_point(&family, c(1.0, 0.0), &tol);
    let pass = at_zero.class == SpectralClass::ResidualSpectrum
        && at_zero.witness == Some(1)
        && at_one.class == SpectralClass::PointSpectrum
        && at_one.witness == Some(2);
    gate(
        "03c residual spectrum",
        pass,
        &format!(
            "0 -> {} (witness {:?}), 1 -> {} (witness {:?})",
            at_zero.class, at_zero.witness, at_one.class, at_one.witness
        ),
    );
}

#[test]
fn acceptance_04_compactness_follows_vanishing_norms() {
    let vanishing = is_compact(&reciprocal_family());
    let constant = {
        let block = Coordinate::Matrix(FiniteMatrixOperator::from_rows(vec![vec![c(1.0, 0.0)]]).unwrap());
        let tail = ParametricTail::new(
            TailGenerator::Constant(Box::new(block)),
            DeclaredLimit::BoundedBy(1.0),
            ResolventTailLimit::Unknown,
            DeclaredLimit::BoundedBy(1.0),
        )
        .unwrap();
        is_compact(&OperatorFamily::new(vec![], TailRule::Parametric(tail)).unwrap())
    };
    let pass = vanishing == Compactness::Compact && constant == Compactness::NotCompact;
    gate(
        "04 compactness",
        pass,
        &format!("norms 1/n -> {vanishing:?}, constant norms -> {constant:?}"),
    );
}

fn damping_bounds() -> Vec<f64> {
    [10.0, 100.0, 1000.0, 10000.0]
        .iter()
        .map(|&s| {
            VectorOdeOperator::new(s, 0.0, 1.0, 0.0)
                .unwrap()
                .resolvent_hs_bound(-1.0)
                .unwrap()
        })
        .collect()
}

#[test]
fn acceptance_05a_damping_shrinks_resolvent_bound() {
    let bounds = damping_bounds();
    let pass = bounds.windows(2).all(|w| w[1] < w[0]);
    gate(
        "05a bound decay",
        pass,
        &format!("bounds over s = 10..10^4: {bounds:?} strictly decreasing"),
    );
}

#[test]
fn acceptance_05b_bound_decay_reaches_three_orders() {
    // Measured decay of the Hilbert-Schmidt resolvent bound over three
    // decades of damping. The bound scales like s^(-1/2), so three decades
    // of damping buy a factor ~10^(-1.5), well short of 10^(-3). The gate
    // states the three-order target and records the honest shortfall.
    let bounds = damping_bounds();
    let ratio = bounds[3] / bounds[0];
    println!(
        "[acceptance 05b bound decay magnitude] measured bounds: s=10 -> {:.6}, s=100 -> {:.6}, s=1000 -> {:.6}, s=10000 -> {:.6}",
        bounds[0], bounds[1], bounds[2], bounds[3]
    );
    println!(
        "[acceptance 05b bound decay magnitude] final/first = {ratio:.6e}, target < 1e-3 (observed scaling ~ s^(-1/2))"
    );
    gate(
        "05b bound decay magnitude",
        ratio < 1e-3,
        &format!("final/first = {ratio:.6e}, target < 1e-3"),
    );
}

fn ode_ladder_family() -> OperatorFamily {
    let tail = ParametricTail::new(
        TailGenerator::Ode {
            scale: 1.0,
            exponent: 1.0,
            a: 0.0,
            b: 1.0,
            theta: 0.0,
        },
        DeclaredLimit::Infinity,
        ResolventTailLimit::Zero,
        DeclaredLimit::Infinity,
    )
    .unwrap();
    OperatorFamily::new(vec![], TailRule::Parametric(tail)).unwrap()
}

#[test]
fn acceptance_05c_growing_damping_certifies_discreteness() {
    let family = ode_ladder_family();
    let tol = Tolerance::default();
    let verdict = has_discrete_spectrum(&family, c(-1.0, 0.0), &tol);
    gate(
        "05c discreteness",
        verdict == Discreteness::Discrete,
        &format!("damping ladder s(n) = n at lambda = -1 -> {verdict:?}"),
    );
}

#[test]
fn acceptance_05d_blockwise_truncation_inverts() {
    let family = ode_ladder_family();
    let tol = Tolerance::default();
    let lambda = c(-1.0, 0.0);
    let mut worst: f64 = 0.0;
    for (m, n) in [(1u64, 10usize), (3, 25), (5, 50)] {
        let truncation = assemble_resolvent_truncation(&family, lambda, m, n, &tol).unwrap();
        let finite = truncate_family(&family, m, n).unwrap();
        let mut shifted = finite.assembled.clone();
        for d in 0..shifted.nrows() {
            shifted[(d, d)] -= lambda;
        }
        let eye = nalgebra::DMatrix::<ComplexPoint>::identity(shifted.nrows(), shifted.ncols());
        worst = worst.max(brute_norm(&(&truncation.matrix * &shifted - &eye)));
        worst = worst.max(brute_norm(&(&shifted * &truncation.matrix - &eye)));
    }
    let tail = resolvent_tail_norm(&family, lambda, 5, &tol);
    let tail_ok = matches!(tail, SupResult::Finite(v) if v < 1.0);
    let pass = worst <= 1e-8 && tail_ok;
    gate(
        "05d blockwise inversion",
        pass,
        &format!("max residual over (m, n) grids = {worst:.3e}, tail sup {tail}"),
    );
}

#[test]
fn acceptance_06_hs_bound_dominates_exact_resolvent() {
    let op = DiagonalOperator::power(1.0, 1.0, 0.0).unwrap();
    let tol = Tolerance::default();
    let mut dominated = true;
    for re in [-1.0, -0.5, 0.0] {
        for im in [-1.0, 0.0, 1.0] {
            let lambda = c(re, im);
            let exact = op.resolvent_norm_exact(lambda, &tol).unwrap();
            let bound = op.hs_resolvent_bound(lambda, 10_000, &tol).unwrap();
            dominated &= bound + 1e-12 >= exact;
        }
    }
    let at_zero = op.hs_resolvent_bound(c(0.0, 0.0), 1_000_000, &tol).unwrap();
    let reference = PI / 6.0f64.sqrt();
    let close = (at_zero - reference).abs() <= 1e-4;
    let pass = dominated && close;
    gate(
        "06 summable resolvent bound",
        pass,
        &format!(
            "bound >= exact on a 9-point grid; at 0: {at_zero:.12} vs pi/sqrt(6) = {reference:.12}"
        ),
    );
}

#[test]
fn acceptance_07_counting_fit_recovers_quadratic_growth() {
    let family = power_family(PI, 2.0);
    let tol = Tolerance::default();

    // merged counts agree with brute-force counts on a faithful truncation
    let merged = merged_counting(&family, 100.0, &tol).unwrap();
    let finite = truncate_family(&family, 5, 8).unwrap();
    let brute = brute_spectrum(&finite.assembled)
        .unwrap()
        .iter()
        .filter(|e| e.norm() <= 100.0 + tol.eps_membership)
        .count() as u64;
    let counts_agree = merged.count == brute && merged.count == 10;

    // the log-log fit over ranks 50..200 recovers the quadratic exponent
    let moduli = collect_moduli(&family, 200, &tol).unwrap();
    let fit = fit_asymptotic_exponent(&moduli, (50, 200)).unwrap();
    let alpha_ok = (fit.alpha - 2.0).abs() / 2.0 < 0.05;

    // the normalized count approaches the closed-form constant
    let spec = AsymptoticBoundSpec::from_family(&family).unwrap();
    let constant = spec.limit_constant().unwrap();
    let big = merged_counting(&family, 1e6, &tol).unwrap().count as f64;
    let normalized = big / 1e3;
    let constant_ok = (normalized - constant).abs() / constant < 0.01;

    let pass = counts_agree && alpha_ok && constant_ok;
    gate(
        "07 counting and fit",
        pass,
        &format!(
            "N(100) = {} (brute {brute}), fitted exponent = {:.6}, N(1e6)/1e3 = {normalized:.6} vs {constant:.6}",
            merged.count, fit.alpha
        ),
    );
}

#[test]
fn acceptance_08_normalized_counts_vanish_for_undershot_exponent() {
    let tol = Tolerance::default();
    // normalizing by lambda^(1/1.5) undershoots both families; the cubic
    // one decays past the 10x target inside the tested window
    let ratios = |family: &OperatorFamily| -> Vec<f64> {
        [1e2, 1e3, 1e4, 1e5, 1e6]
            .iter()
            .map(|&lambda| {
                let count = merged_counting(family, lambda, &tol).unwrap().count;
                count as f64 / lambda.powf(1.0 / 1.5)
            })
            .collect()
    };
    let cubic = ratios(&power_family(PI, 3.0));
    let quadratic = ratios(&power_family(PI, 2.0));
    println!("[acceptance 08] cubic ratios: {cubic:?}");
    println!("[acceptance 08] quadratic ratios: {quadratic:?}");
    let cubic_decreasing = cubic.windows(2).all(|w| w[1] < w[0]);
    let quadratic_decreasing = quadratic.windows(2).all(|w| w[1] < w[0]);
    let drop = cubic[4] / cubic[0];
    let pass = cubic_decreasing && quadratic_decreasing && drop < 0.1;
    gate(
        "08 undershot normalization",
        pass,
        &format!("cubic drop over four decades = {drop:.6}, target < 0.1; both sequences decreasing"),
    );
}

#[test]
fn acceptance_10_resolvent_identity_on_sample_grids() {
    let tol = Tolerance::default();
    let mut worst: f64 = 0.0;

    let multipoint = MultipointOperator::new(0.0, 1.0, c(1.0, 0.0)).unwrap();
    for i in 0..5 {
        for j in 0..5 {
            let lambda = c(0.3 + 0.5 * i as f64, -5.0 + 2.3 * j as f64);
            let norm = multipoint.resolvent_norm(lambda, &tol).unwrap();
            let dist = multipoint.lattice_distance(lambda);
            worst = worst.max((norm * dist - 1.0).abs());
        }
    }

    let diagonal = DiagonalOperator::power(1.0, 1.0, 0.0).unwrap();
    for i in 0..5 {
        for j in 0..5 {
            let lambda = c(0.4 + 1.0 * i as f64, 0.3 + 0.7 * j as f64);
            let norm = diagonal.resolvent_norm_exact(lambda, &tol).unwrap();
            let dist = diagonal.spectrum_distance(lambda);
            worst = worst.max((norm * dist - 1.0).abs());
        }
    }

    let pass = worst <= 1e-8;
    gate(
        "10 resolvent identity",
        pass,
        &format!("max |norm * distance - 1| over 50 sample points = {worst:.3e}"),
    );
}

#[test]
fn acceptance_suite_assembles_mixed_models() {
    // A smoke check that every model kind participates in one family and
    // the classifier stays consistent on it.
    let family = OperatorFamily::finite(vec![
        Coordinate::Multipoint(MultipointOperator::new(0.0, 1.0, c(1.0, 0.0)).unwrap()),
        Coordinate::Diagonal(DiagonalOperator::power(2.0, 1.0, 0.0).unwrap()),
        Coordinate::Shift(ShiftOperator::new()),
        Coordinate::Matrix(
            FiniteMatrixOperator::from_rows(vec![
                vec![c(0.0, 0.0), c(1.0, 0.0)],
                vec![c(-1.0, 0.0), c(0.0, 0.0)],
            ])
            .unwrap(),
        ),
    ])
    .unwrap();
    let tol = Tolerance::default();
    // 0 lies on the lattice of the first coordinate
    let at_zero = classify_direct_sum_point(&family, c(0.0, 0.0), &tol);
    assert_eq!(at_zero.class, SpectralClass::PointSpectrum);
    assert_eq!(at_zero.witness, Some(1));
    // +i is an eigenvalue of the rotation block
    let at_i = classify_direct_sum_point(&family, c(0.0, 1.0), &tol);
    assert_eq!(at_i.class, SpectralClass::PointSpectrum);
    assert_eq!(at_i.witness, Some(4));
    let assembled = block_diag(&truncate_family(&family, 4, 6).unwrap().blocks).unwrap();
    assert_eq!(assembled.nrows(), 6 + 6 + 6 + 2);
}
