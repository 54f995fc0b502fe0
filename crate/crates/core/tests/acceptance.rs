//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `cargo test --test acceptance -- --nocapture` to see the lines
//! for passing criteria too).
//!
//! Criteria 2-4 run at 200 decimal digits; oracle-style checks (1, 6, 8) run
//! against the 50-digit quadrature oracle. Thresholds marked "frozen" were
//! fixed from pre-build oracle runs and are asserted as exact constants here.

use galbox_core::basis::{
    coeff_dirichlet, coeff_neumann, coeff_periodic, expand_state, AugmentKind, BasisSpec,
    BoundaryCondition, SpectralData,
};
use galbox_core::evolution::{exact_phase, Propagator, TimeValue};
use galbox_core::experiment::{run_sweep, ExperimentSpec};
use galbox_core::legendre::{
    eval_assoc_legendre, eval_assoc_legendre_derivative, norm_assoc_legendre, AssocLegendreIndex,
};
use galbox_core::numerics::{
    integrate_adaptive, integrate_adaptive_complex, BigComplex, BigReal, PrecisionContext,
};
use galbox_core::operator::{
    galerkin_projection_residual, normalized_matrix_element, truncated_hamiltonian,
    truncated_hamiltonian_via_quadrature,
};

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn ctx200() -> PrecisionContext {
    PrecisionContext::new(200).unwrap()
}

/// Criterion 1: closed-form matrix elements and expansion coefficients match
/// the 50-digit quadrature oracle to relative 1e-30 for m in {4, 6},
/// l, k <= m + 8, |j| <= 5.
#[test]
fn criterion_1_oracle_equivalence() {
    let digits = 50;
    let ctx = PrecisionContext::new(digits + 20).unwrap();
    let rel_tol = ctx.pow10(-30);
    let one = ctx.one();
    let half_pi = ctx.pi() * ctx.from_rational(&rug::Rational::from((1, 2)));
    let mut checked = 0usize;
    let mut worst = ctx.zero();

    for m in [4u32, 6] {
        let indices: Vec<AssocLegendreIndex> = (m..=m + 8)
            .map(|l| AssocLegendreIndex::new(l, m).unwrap())
            .collect();
        let norms: Vec<BigReal> = indices
            .iter()
            .map(|&idx| norm_assoc_legendre(idx, &ctx))
            .collect();

        // matrix elements <p_l, -(p_k)''>
        for i in 0..indices.len() {
            for k in 0..=i {
                let l_deg = m + i as u32;
                let k_deg = m + k as u32;
                let closed = normalized_matrix_element(l_deg, k_deg, m, &ctx).unwrap();
                let oracle = integrate_adaptive(
                    &|x| {
                        -(eval_assoc_legendre(indices[i], x, &ctx)
                            * eval_assoc_legendre_derivative(indices[k], 2, x, &ctx))
                    },
                    digits,
                )
                .unwrap()
                    / (&norms[i] * &norms[k]);
                let rel = (closed - &oracle).abs() / oracle.abs().max(&one);
                worst = worst.max(&rel);
                checked += 1;
                assert!(rel < rel_tol, "matrix element ({l_deg}, {k_deg}, {m})");
            }
        }

        // expansion coefficients
        for &idx in &indices {
            let l = idx.l();
            let p = idx;
            for j in 1..=5u32 {
                let freq = ctx.from_i64(i64::from(j)) * &half_pi;
                let oracle = integrate_adaptive(
                    &|x| {
                        let (s, _) = ((x + ctx.one()) * &freq).sin_cos();
                        eval_assoc_legendre(p, x, &ctx) * s
                    },
                    digits,
                )
                .unwrap();
                let closed = coeff_dirichlet(l, m, j, &ctx).unwrap();
                let rel = (closed - &oracle).abs() / oracle.abs().max(&one);
                worst = worst.max(&rel);
                checked += 1;
                assert!(rel < rel_tol, "dirichlet coefficient ({l}, {m}, {j})");
            }
            for j in 0..=5u32 {
                let freq = ctx.from_i64(i64::from(j)) * &half_pi;
                let oracle = integrate_adaptive(
                    &|x| {
                        let (_, c) = ((x + ctx.one()) * &freq).sin_cos();
                        eval_assoc_legendre(p, x, &ctx) * c
                    },
                    digits,
                )
                .unwrap();
                let closed = coeff_neumann(l, m, j, &ctx).unwrap();
                let rel = (closed - &oracle).abs() / oracle.abs().max(&one);
                worst = worst.max(&rel);
                checked += 1;
                assert!(rel < rel_tol, "neumann coefficient ({l}, {m}, {j})");
            }
            for j in -5i64..=5 {
                let freq = ctx.from_i64(j) * ctx.pi();
                let oracle = integrate_adaptive_complex(
                    &|x| {
                        BigComplex::unit_phase(&((x + ctx.one()) * &freq))
                            .scale(&eval_assoc_legendre(p, x, &ctx))
                    },
                    digits,
                )
                .unwrap();
                let closed = coeff_periodic(l, m, j, &ctx).unwrap();
                let rel = (&closed - &oracle).abs() / oracle.abs().max(&one);
                worst = worst.max(&rel);
                checked += 1;
                assert!(rel < rel_tol, "periodic coefficient ({l}, {m}, {j})");
            }
        }
    }
    report(
        "1 (oracle equivalence)",
        true,
        &format!(
            "{checked} closed forms vs quadrature, worst relative deviation {}",
            worst.to_scientific(3)
        ),
    );
}

/// Criterion 2: Dirichlet convergence for Legendre(4), psi_0 the j = 5
/// Dirichlet eigenvector, t in {0.1, 1, 4/pi}: error(40) < 0.1 and
/// error(40) < error(8)/5, with a decreasing step-8 trend
/// (error(n+8) <= error(n) + 1e-3).
#[test]
fn criterion_2_dirichlet_convergence() {
    let ctx = ctx200();
    let spec = ExperimentSpec {
        basis: BasisSpec::legendre(4).unwrap(),
        bc: BoundaryCondition::Dirichlet,
        j: 5,
        n_values: vec![8, 16, 24, 32, 40],
        t_values: vec![
            TimeValue::parse("0.1").unwrap(),
            TimeValue::from_i64(1),
            TimeValue::four_over_pi(),
        ],
        digits: 200,
    };
    let rows = run_sweep(&spec).unwrap();
    let tenth = ctx.from_rational(&rug::Rational::from((1, 10)));
    let fifth = ctx.from_rational(&rug::Rational::from((1, 5)));
    let slack = ctx.from_rational(&rug::Rational::from((1, 1000)));

    let mut all_pass = true;
    let mut details = Vec::new();
    for (ti, t) in spec.t_values.iter().enumerate() {
        let errs: Vec<&BigReal> = rows
            .iter()
            .filter(|r| r.t == *t)
            .map(|r| &r.error)
            .collect();
        assert_eq!(errs.len(), 5);
        let absolute = errs[4] < &tenth;
        let ratio = *errs[4] < errs[0] * &fifth;
        let trend = errs.windows(2).all(|w| *w[1] <= w[0] + &slack);
        let ok = absolute && ratio && trend;
        all_pass &= ok;
        details.push(format!(
            "t={} error(8)={:.4} error(40)={:.4} [<0.1:{} ratio:{} trend:{}]",
            spec.t_values[ti],
            errs[0].to_f64(),
            errs[4].to_f64(),
            absolute,
            ratio,
            trend
        ));
    }
    report("2 (Dirichlet convergence)", all_pass, &details.join("; "));
}

/// Criterion 3: periodic non-convergence at the mirror time. Legendre(4),
/// psi_0 = 1/sqrt(2), t = 4/pi: error(n) >= 0.5 at every integer n in
/// [8, 40], non-decreasing on the step-8 grid from n = 16 (1e-3 slack), and
/// error(40) > 1.9 (frozen from the pre-build oracle run; the exact limit
/// is 2).
#[test]
fn criterion_3_periodic_nonconvergence() {
    let spec = ExperimentSpec {
        basis: BasisSpec::legendre(4).unwrap(),
        bc: BoundaryCondition::periodic(),
        j: 0,
        n_values: (8..=40).collect(),
        t_values: vec![TimeValue::four_over_pi()],
        digits: 200,
    };
    let ctx = ctx200();
    let rows = run_sweep(&spec).unwrap();
    let half = ctx.from_rational(&rug::Rational::from((1, 2)));
    let slack = ctx.from_rational(&rug::Rational::from((1, 1000)));
    let frozen_threshold = ctx.from_rational(&rug::Rational::from((19, 10)));

    let floor_ok = rows.iter().all(|r| r.error >= half);
    let err_at = |n: usize| &rows.iter().find(|r| r.n == n).unwrap().error;
    let trend_ok = [16usize, 24, 32]
        .iter()
        .all(|&n| *err_at(n + 8) >= err_at(n) - &slack);
    let limit_ok = *err_at(40) > frozen_threshold;
    let pass = floor_ok && trend_ok && limit_ok;
    report(
        "3 (periodic non-convergence)",
        pass,
        &format!(
            "min error {:.4}, error(40) = {:.6} (frozen threshold 1.9, exact limit 2) [floor:{} trend:{} limit:{}]",
            rows.iter()
                .map(|r| r.error.to_f64())
                .fold(f64::INFINITY, f64::min),
            err_at(40).to_f64(),
            floor_ok,
            trend_ok,
            limit_ok
        ),
    );
}

/// Criterion 4: augmented-basis repair. GS(1/sqrt(2), p_l^4) propagates the
/// periodic ground state with error(40) < 0.1 at t = 1, and
/// GS(cos(pi(x+1)/2), p_l^4) the anti-periodic cosine likewise.
#[test]
fn criterion_4_augmented_repair() {
    let ctx = ctx200();
    let t = TimeValue::from_i64(1);
    let tenth = ctx.from_rational(&rug::Rational::from((1, 10)));
    let cases = [
        (
            BasisSpec::augmented(AugmentKind::ConstantPeriodic, 4).unwrap(),
            BoundaryCondition::periodic(),
        ),
        (
            BasisSpec::augmented(AugmentKind::CosineAntiperiodic, 4).unwrap(),
            BoundaryCondition::antiperiodic(),
        ),
    ];
    let mut details = Vec::new();
    let mut pass = true;
    for (basis, bc) in cases {
        let e = galbox_core::experiment::approximation_error(&basis, &bc, 0, 40, &t, &ctx).unwrap();
        pass &= e < tenth;
        details.push(format!("{} error(40) = {}", basis.tag(), e.to_scientific(3)));
    }
    report("4 (augmented-basis repair)", pass, &details.join("; "));
}

/// Criterion 5: exact mirror-time identities. In the Dirichlet eigenbasis,
/// propagating psi_j to t = 4/pi multiplies the coefficient by (-1)^j to
/// 1e-(digits-15); the maximal Dirichlet/periodic distance for a symmetric
/// unit state equals 2 to the same tolerance.
#[test]
fn criterion_5_special_time_identities() {
    let ctx = ctx200();
    let tol = ctx.eps(15);
    let bc = BoundaryCondition::Dirichlet;
    let spec = BasisSpec::EigenBasis(bc.clone());
    let n = 8;
    let ham = truncated_hamiltonian(&spec, n, &ctx).unwrap();
    let eig = ham.eigendecompose(&ctx).unwrap();
    let t = TimeValue::four_over_pi();
    let prop = Propagator::from_eigensystem(&ham, &eig, &t, &ctx);
    let mut worst = ctx.zero();
    for j in 1..=n as i64 {
        let state = expand_state(&spec, &bc, j, n, &ctx).unwrap();
        let out = prop.apply(&state, &ctx).unwrap();
        let expected = ctx.from_i64(if j % 2 == 0 { 1 } else { -1 });
        let dev = (&out.c[(j - 1) as usize] - &ctx.complex_from_real(expected)).abs();
        worst = worst.max(&dev);
    }
    let phases_ok = worst <= tol;

    // Corollary distance: psi_0 = the symmetric j = 1 Dirichlet mode;
    // U_Dir(4/pi) psi_0 = -psi_0 while U_per(4/pi) psi_0 = psi_0, so the
    // distance is exactly 2.
    let state = expand_state(&spec, &bc, 1, n, &ctx).unwrap();
    let evolved = prop.apply(&state, &ctx).unwrap();
    let mut dist_sqr = ctx.zero();
    for (a, b) in evolved.c.iter().zip(&state.c) {
        dist_sqr += &(a - b).norm_sqr();
    }
    let distance = dist_sqr.sqrt();
    let distance_ok = (distance.clone() - ctx.from_i64(2)).abs() <= tol;
    report(
        "5 (exact mirror-time identities)",
        phases_ok && distance_ok,
        &format!(
            "worst phase deviation {}, |distance - 2| = {}",
            worst.to_scientific(3),
            (distance - ctx.from_i64(2)).abs().to_scientific(3)
        ),
    );
}

/// Criterion 6: Rayleigh-Ritz. For Legendre(4), lambda_min(Ĥ_n) >= pi²/4 for
/// every n <= 40 and non-increasing in n; the n = 40 gap equals the
/// oracle-confirmed value (frozen band: gap < 6e-3, confirmed against a
/// quadrature-built Ĥ_40).
#[test]
fn criterion_6_rayleigh_ritz() {
    let digits = 50;
    let ctx = PrecisionContext::new(digits + 20).unwrap();
    let spec = BasisSpec::legendre(4).unwrap();
    let floor = ctx.pi().square() * ctx.from_rational(&rug::Rational::from((1, 4)));
    let mut last: Option<BigReal> = None;
    let mut bound_ok = true;
    let mut monotone_ok = true;
    let mut lambda_40 = ctx.zero();
    for n in 1..=40usize {
        let ham = truncated_hamiltonian(&spec, n, &ctx).unwrap();
        let eig = ham.eigendecompose(&ctx).unwrap();
        let lmin = eig.lambda_min().clone();
        bound_ok &= lmin >= floor;
        if let Some(prev) = &last {
            monotone_ok &= lmin <= *prev;
        }
        if n == 40 {
            lambda_40 = lmin.clone();
        }
        last = Some(lmin);
    }
    let gap = &lambda_40 - &floor;
    let band_ok = gap < ctx.from_rational(&rug::Rational::from((6, 1000)));

    // Oracle confirmation of the n = 40 endpoint.
    let oracle = truncated_hamiltonian_via_quadrature(4, 40, digits).unwrap();
    let oracle_eig = oracle.eigendecompose(&ctx).unwrap();
    let oracle_gap = (oracle_eig.lambda_min() - &lambda_40).abs();
    let oracle_ok = oracle_gap < ctx.pow10(-25);

    report(
        "6 (Rayleigh-Ritz spectral check)",
        bound_ok && monotone_ok && band_ok && oracle_ok,
        &format!(
            "lambda_min(40) - pi²/4 = {:.4e} (frozen band 6e-3), closed-vs-quadrature deviation {} [bound:{} monotone:{}]",
            gap.to_f64(),
            oracle_gap.to_scientific(3),
            bound_ok,
            monotone_ok
        ),
    );
}

/// Criterion 7: unitarity and determinism. Every propagator used in
/// criteria 2-4 has unitarity defect < 1e-(digits-20), and repeated sweeps
/// produce bit-identical rows (hence byte-identical CSV).
#[test]
fn criterion_7_unitarity_and_determinism() {
    let ctx = ctx200();
    let defect_tol = ctx.eps(20);
    let mut worst = ctx.zero();
    let configs = [
        (
            BasisSpec::legendre(4).unwrap(),
            BoundaryCondition::Dirichlet,
            5i64,
            vec![
                TimeValue::parse("0.1").unwrap(),
                TimeValue::from_i64(1),
                TimeValue::four_over_pi(),
            ],
        ),
        (
            BasisSpec::legendre(4).unwrap(),
            BoundaryCondition::periodic(),
            0,
            vec![TimeValue::four_over_pi()],
        ),
        (
            BasisSpec::augmented(AugmentKind::ConstantPeriodic, 4).unwrap(),
            BoundaryCondition::periodic(),
            0,
            vec![TimeValue::from_i64(1)],
        ),
        (
            BasisSpec::augmented(AugmentKind::CosineAntiperiodic, 4).unwrap(),
            BoundaryCondition::antiperiodic(),
            0,
            vec![TimeValue::from_i64(1)],
        ),
    ];
    for (basis, bc, j, ts) in configs {
        let spec = ExperimentSpec {
            basis,
            bc,
            j,
            n_values: vec![8, 24, 40],
            t_values: ts,
            digits: 200,
        };
        let rows = run_sweep(&spec).unwrap();
        for r in &rows {
            worst = worst.max(&r.unitarity_defect);
        }
    }
    let defects_ok = worst < defect_tol;

    let small = ExperimentSpec {
        basis: BasisSpec::legendre(4).unwrap(),
        bc: BoundaryCondition::Dirichlet,
        j: 1,
        n_values: vec![4, 8],
        t_values: vec![TimeValue::parse("0.5").unwrap(), TimeValue::four_over_pi()],
        digits: 200,
    };
    let run1 = run_sweep(&small).unwrap();
    let run2 = run_sweep(&small).unwrap();
    let determinism_ok = run1.len() == run2.len()
        && run1.iter().zip(&run2).all(|(a, b)| {
            a.error == b.error
                && a.lambda_min == b.lambda_min
                && a.unitarity_defect == b.unitarity_defect
                && a.error.to_scientific(30) == b.error.to_scientific(30)
        });
    report(
        "7 (unitarity & determinism)",
        defects_ok && determinism_ok,
        &format!(
            "worst defect {} (tolerance {}), repeated sweeps bit-identical: {}",
            worst.to_scientific(3),
            defect_tol.to_scientific(3),
            determinism_ok
        ),
    );
}

/// Criterion 8: Galerkin-residual diagnostic. Legendre(4), Dirichlet j = 1:
/// residual decreasing on {8, 16, 24, 32} with residual(32) < residual(8)/5;
/// periodic j = 0: residual > 0.3 for all n <= 32 (it is exactly 1, frozen
/// from the oracle run).
#[test]
fn criterion_8_galerkin_residual() {
    let ctx = PrecisionContext::new(100).unwrap();
    let spec = BasisSpec::legendre(4).unwrap();
    let dir = BoundaryCondition::Dirichlet;
    let per = BoundaryCondition::periodic();
    let grid = [8usize, 16, 24, 32];
    let dir_res: Vec<BigReal> = grid
        .iter()
        .map(|&n| galerkin_projection_residual(&spec, &dir, 1, n, &ctx).unwrap())
        .collect();
    let decreasing = dir_res.windows(2).all(|w| w[1] < w[0]);
    let fifth = ctx.from_rational(&rug::Rational::from((1, 5)));
    let ratio_ok = dir_res[3] < &dir_res[0] * &fifth;

    let threshold = ctx.from_rational(&rug::Rational::from((3, 10)));
    let per_ok = grid.iter().all(|&n| {
        galerkin_projection_residual(&spec, &per, 0, n, &ctx).unwrap() > threshold
    });
    report(
        "8 (Galerkin residual diagnostic)",
        decreasing && ratio_ok && per_ok,
        &format!(
            "dirichlet residual(8) = {:.3e}, residual(32) = {:.3e} (ratio {:.1}); periodic residual > 0.3: {}",
            dir_res[0].to_f64(),
            dir_res[3].to_f64(),
            dir_res[0].to_f64() / dir_res[3].to_f64(),
            per_ok
        ),
    );
}

/// Reference energies are exactly the spectra the truncations converge to
/// (supporting check shared by several criteria).
#[test]
fn reference_spectra_sanity() {
    let ctx = ctx200();
    let pi_sqr = ctx.pi().square();
    let e1 = SpectralData::new(&BoundaryCondition::Dirichlet, 5)
        .unwrap()
        .energy(&ctx);
    let expected = &pi_sqr * ctx.from_rational(&rug::Rational::from((25, 4)));
    assert!((e1 - expected).abs() < ctx.eps(10));
    let p = exact_phase(
        &BoundaryCondition::periodic(),
        0,
        &TimeValue::four_over_pi(),
        &ctx,
    )
    .unwrap();
    assert!((&p - &ctx.complex_from_real(ctx.one())).abs() < ctx.eps(15));
}
