use super::*;
use crate::numerics::integrate_adaptive;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(60).unwrap()
}

#[test]
fn boundary_condition_tags_and_constructors() {
    assert_eq!(BoundaryCondition::periodic().tag(), "periodic");
    assert_eq!(BoundaryCondition::antiperiodic().tag(), "antiperiodic");
    assert!(BoundaryCondition::periodic().is_periodic());
    assert!(BoundaryCondition::antiperiodic().is_antiperiodic());
    assert!(BoundaryCondition::alpha_periodic(Rational::from(3)).is_err());
    assert!(BoundaryCondition::alpha_periodic(Rational::from((1, 2))).is_ok());
}

#[test]
fn spectral_energies() {
    let d = SpectralData::new(&BoundaryCondition::Dirichlet, 3).unwrap();
    assert_eq!(d.energy_over_pi_sqr(), Rational::from((9, 4)));
    let p = SpectralData::new(&BoundaryCondition::periodic(), -2).unwrap();
    assert_eq!(p.energy_over_pi_sqr(), Rational::from(4));
    let a = SpectralData::new(&BoundaryCondition::antiperiodic(), 0).unwrap();
    assert_eq!(a.energy_over_pi_sqr(), Rational::from((1, 4)));
    assert!(SpectralData::new(&BoundaryCondition::Dirichlet, 0).is_err());
    assert!(SpectralData::new(&BoundaryCondition::antiperiodic(), 1).is_err());
}

#[test]
fn eigenfunctions_satisfy_the_eigenvalue_equation() {
    // Probe -psi'' = E psi by a centered second difference.
    let ctx = ctx();
    let h = ctx.pow10(-(ctx.digits() as i64 / 4));
    let tol = ctx.pow10(-(ctx.digits() as i64 / 2 - 8));
    let x = ctx.from_rational(&Rational::from((3, 7)));
    let cases = [
        (BoundaryCondition::Dirichlet, 2i64),
        (BoundaryCondition::Neumann, 0),
        (BoundaryCondition::Neumann, 3),
        (BoundaryCondition::periodic(), -1),
        (BoundaryCondition::antiperiodic(), 0),
    ];
    for (bc, j) in cases {
        let mode = SpectralData::new(&bc, j).unwrap();
        let plus = mode.eval(&(&x + &h), &ctx);
        let mid = mode.eval(&x, &ctx);
        let minus = mode.eval(&(&x - &h), &ctx);
        let lap = -&(&(&plus - &mid.scale(&ctx.from_i64(2))) + &minus).scale(&h.square().recip());
        let expected = mid.scale(&mode.energy(&ctx));
        assert!(
            (&lap - &expected).abs() < tol,
            "eigen-equation failed for {} j = {j}",
            bc.tag()
        );
    }
}

#[test]
fn eigenbasis_ordering_roundtrip() {
    let per = BoundaryCondition::periodic();
    let expected_modes = [0i64, 1, -1, 2, -2, 3, -3];
    for (pos, &j) in expected_modes.iter().enumerate() {
        assert_eq!(eigenbasis_mode(&per, pos).unwrap().j(), j);
        assert_eq!(eigenbasis_position(&per, j).unwrap(), pos);
    }
    assert_eq!(eigenbasis_mode(&BoundaryCondition::Dirichlet, 0).unwrap().j(), 1);
    assert_eq!(eigenbasis_position(&BoundaryCondition::Dirichlet, 5).unwrap(), 4);
    assert_eq!(eigenbasis_mode(&BoundaryCondition::Neumann, 4).unwrap().j(), 4);
    // Energy never decreases along the periodic ordering.
    let mut last = Rational::from(-1);
    for pos in 0..9 {
        let e = eigenbasis_mode(&per, pos).unwrap().energy_over_pi_sqr();
        assert!(e >= last);
        last = e;
    }
}

#[test]
fn basis_element_legendre_has_zero_boundary_data() {
    let ctx = ctx();
    let spec = BasisSpec::legendre(4).unwrap();
    let el = basis_element(&spec, 0, &ctx).unwrap();
    assert!(el.boundary.value_neg.is_zero());
    assert!(el.boundary.value_pos.is_zero());
    assert!(el.boundary.deriv_neg.is_zero());
    assert!(el.boundary.deriv_pos.is_zero());
    // p_4^4(0) = 105/sqrt(8960)
    let v = el.eval(&ctx.zero(), &ctx);
    let expected = ctx.from_i64(105) / ctx.from_i64(8960).sqrt();
    assert!((v.re - expected).abs() < ctx.eps(10));
    assert!(v.im.is_zero());
}

#[test]
fn basis_element_dirichlet_mode() {
    let ctx = ctx();
    let spec = BasisSpec::EigenBasis(BoundaryCondition::Dirichlet);
    let el = basis_element(&spec, 0, &ctx).unwrap();
    assert!(el.boundary.value_neg.is_zero());
    assert!(el.boundary.value_pos.is_zero());
    // sin(pi (x+1)/2) at x = 0 is sin(pi/2) = 1
    let v = el.eval(&ctx.zero(), &ctx);
    assert!((v.re - ctx.one()).abs() < ctx.eps(10));
}

#[test]
fn basis_element_augmented_f0_is_the_constant() {
    let ctx = ctx();
    let spec = BasisSpec::augmented(AugmentKind::ConstantPeriodic, 4).unwrap();
    let el = basis_element(&spec, 0, &ctx).unwrap();
    let expected = ctx.from_rational(&Rational::from((1, 2))).sqrt();
    for x in [ctx.zero(), ctx.from_rational(&Rational::from((-3, 5)))] {
        let v = el.eval(&x, &ctx);
        assert!((v.re.clone() - &expected).abs() < ctx.eps(10));
    }
    assert!((el.boundary.value_pos.re.clone() - &expected).abs() < ctx.eps(10));
}

#[test]
fn augmented_elements_share_f0_boundary_ratio() {
    // Boundary blindness of the polynomial block: every phi_k has boundary
    // data beta^{(k)} times that of f0, and the evaluator agrees with the
    // recorded boundary data at the endpoints.
    let ctx = ctx();
    for f0 in [AugmentKind::ConstantPeriodic, AugmentKind::CosineAntiperiodic] {
        let spec = BasisSpec::augmented(f0, 4).unwrap();
        let coeffs = gram_schmidt_augmented(f0, 4, 6, &ctx).unwrap();
        for k in 1..6 {
            let el = basis_element(&spec, k, &ctx).unwrap();
            let beta = &coeffs.row(k)[0];
            let f0_el = basis_element(&spec, 0, &ctx).unwrap();
            let expect_pos = f0_el.boundary.value_pos.scale(beta);
            let expect_neg = f0_el.boundary.value_neg.scale(beta);
            assert!((&el.boundary.value_pos - &expect_pos).abs() < ctx.eps(12));
            assert!((&el.boundary.value_neg - &expect_neg).abs() < ctx.eps(12));
            // evaluator agreement at the endpoints
            let at_pos = el.eval(&ctx.one(), &ctx);
            let at_neg = el.eval(&ctx.from_i64(-1), &ctx);
            assert!((&at_pos - &el.boundary.value_pos).abs() < ctx.eps(12));
            assert!((&at_neg - &el.boundary.value_neg).abs() < ctx.eps(12));
        }
    }
}

#[test]
fn augmented_family_is_orthonormal_under_quadrature() {
    let digits = 50;
    let ctx = PrecisionContext::new(digits + 20).unwrap();
    let tol = ctx.pow10(-(digits as i64 - 15));
    for f0 in [AugmentKind::ConstantPeriodic, AugmentKind::CosineAntiperiodic] {
        let spec = BasisSpec::augmented(f0, 4).unwrap();
        let n = 4;
        let els: Vec<BasisElement> = (0..n)
            .map(|k| basis_element(&spec, k, &ctx).unwrap())
            .collect();
        for i in 0..n {
            for j in 0..=i {
                let v = integrate_adaptive(
                    &|x| {
                        let a = els[i].eval(x, &ctx);
                        let b = els[j].eval(x, &ctx);
                        (&a.conj() * &b).re
                    },
                    digits,
                )
                .unwrap();
                let expected = if i == j { ctx.one() } else { ctx.zero() };
                assert!(
                    (v - expected).abs() < tol,
                    "<phi_{i}, phi_{j}> != delta for {f0:?}"
                );
            }
        }
    }
}

#[test]
fn expand_state_in_own_eigenbasis_is_a_unit_vector() {
    let ctx = ctx();
    let spec = BasisSpec::EigenBasis(BoundaryCondition::Dirichlet);
    let st = expand_state(&spec, &BoundaryCondition::Dirichlet, 5, 10, &ctx).unwrap();
    for (k, z) in st.c.iter().enumerate() {
        if k == 4 {
            assert_eq!(z.re, ctx.one());
        } else {
            assert!(z.is_zero());
        }
    }
    assert!(st.tail_mass.is_zero());
    // Mode beyond the truncation: all mass in the tail.
    let st = expand_state(&spec, &BoundaryCondition::Dirichlet, 12, 10, &ctx).unwrap();
    assert!(st.head_mass(&ctx).is_zero());
    assert_eq!(st.tail_mass, ctx.one());
}

#[test]
fn expand_constant_over_legendre() {
    let ctx = ctx();
    let spec = BasisSpec::legendre(4).unwrap();
    let st = expand_state(&spec, &BoundaryCondition::periodic(), 0, 1, &ctx).unwrap();
    // c_0 = 112 / (sqrt(2) sqrt(8960)) ~ 0.83666, tail ~ 0.3
    assert!((st.c[0].re.to_f64() - 0.83666).abs() < 1e-5);
    assert!(st.c[0].im.is_zero());
    assert!((st.tail_mass.to_f64() - 0.3).abs() < 1e-5);
}

#[test]
fn parseval_head_mass_is_monotone_and_bounded() {
    let ctx = ctx();
    let spec = BasisSpec::legendre(4).unwrap();
    let bound = ctx.one() + ctx.eps(15);
    for (bc, j) in [
        (BoundaryCondition::Dirichlet, 5i64),
        (BoundaryCondition::periodic(), 1),
        (BoundaryCondition::Neumann, 2),
    ] {
        let mut last = ctx.zero();
        for n in [1usize, 4, 8, 16, 24] {
            let st = expand_state(&spec, &bc, j, n, &ctx).unwrap();
            let head = st.head_mass(&ctx);
            assert!(head >= last, "head mass decreased for {} j={j}", bc.tag());
            assert!(head <= bound);
            last = head;
        }
    }
}

#[test]
fn dirichlet_tail_vanishes_with_n() {
    let ctx = ctx();
    let spec = BasisSpec::legendre(4).unwrap();
    let tail_8 = expand_state(&spec, &BoundaryCondition::Dirichlet, 5, 8, &ctx)
        .unwrap()
        .tail_mass;
    let tail_32 = expand_state(&spec, &BoundaryCondition::Dirichlet, 5, 32, &ctx)
        .unwrap()
        .tail_mass;
    assert!(tail_32 < tail_8);
    assert!(tail_32.to_f64() < 1e-4);
}

#[test]
fn augmented_expansions() {
    let ctx = ctx();
    // The periodic constant in its own augmented family is exactly phi_0.
    let spec = BasisSpec::augmented(AugmentKind::ConstantPeriodic, 4).unwrap();
    let st = expand_state(&spec, &BoundaryCondition::periodic(), 0, 6, &ctx).unwrap();
    assert_eq!(st.c[0].re, ctx.one());
    for z in &st.c[1..] {
        assert!(z.abs() < ctx.eps(15));
    }
    assert!(st.tail_mass < ctx.eps(15));
    // Same for the anti-periodic cosine.
    let spec = BasisSpec::augmented(AugmentKind::CosineAntiperiodic, 4).unwrap();
    let st = expand_state(&spec, &BoundaryCondition::antiperiodic(), 0, 6, &ctx).unwrap();
    assert!((st.c[0].re.clone() - ctx.one()).abs() < ctx.eps(15));
    assert!(st.tail_mass < ctx.eps(15));
    // A nonzero periodic mode spreads over the polynomial block but keeps
    // zero overlap with f0.
    let spec = BasisSpec::augmented(AugmentKind::ConstantPeriodic, 4).unwrap();
    let st = expand_state(&spec, &BoundaryCondition::periodic(), 1, 8, &ctx).unwrap();
    assert!(st.c[0].abs() < ctx.eps(15));
    assert!(st.head_mass(&ctx) > ctx.from_f64(0.5));
}

#[test]
fn unsupported_pairs_are_rejected() {
    let ctx = ctx();
    let neumann_eigen = BasisSpec::EigenBasis(BoundaryCondition::Neumann);
    assert!(matches!(
        expand_state(&neumann_eigen, &BoundaryCondition::periodic(), 0, 4, &ctx),
        Err(Error::UnsupportedPair(_))
    ));
    let aug = BasisSpec::augmented(AugmentKind::ConstantPeriodic, 4).unwrap();
    assert!(matches!(
        expand_state(&aug, &BoundaryCondition::Dirichlet, 1, 4, &ctx),
        Err(Error::UnsupportedPair(_))
    ));
}

#[test]
fn legendre_expansion_matches_direct_quadrature() {
    // End-to-end oracle: coefficients produced by expand_state equal the
    // integrals <p_l^m, psi_j> computed numerically.
    let digits = 50;
    let ctx = PrecisionContext::new(digits + 20).unwrap();
    let spec = BasisSpec::legendre(4).unwrap();
    let bc = BoundaryCondition::Dirichlet;
    let st = expand_state(&spec, &bc, 3, 3, &ctx).unwrap();
    let mode = SpectralData::new(&bc, 3).unwrap();
    for (k, closed) in st.c.iter().enumerate() {
        let el = basis_element(&spec, k, &ctx).unwrap();
        let oracle = integrate_adaptive(
            &|x| (&el.eval(x, &ctx).conj() * &mode.eval(x, &ctx)).re,
            digits,
        )
        .unwrap();
        assert!(
            (closed.re.clone() - &oracle).abs() < ctx.pow10(-(digits as i64 - 15)),
            "coefficient {k} disagrees with quadrature"
        );
    }
}
