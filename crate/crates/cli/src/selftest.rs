//! Compact self-test: every closed-form family is checked against the
//! quadrature oracle, plus orthonormality, unitarity and the exact
//! mirror-time identity. Runs in seconds at the default 50 digits.

use galbox_core::basis::{
    basis_element, coeff_dirichlet, coeff_neumann, coeff_periodic, expand_state, AugmentKind,
    BasisSpec, BoundaryCondition,
};
use galbox_core::evolution::{exact_phase, Propagator, TimeValue};
use galbox_core::legendre::{eval_assoc_legendre, norm_assoc_legendre, AssocLegendreIndex};
use galbox_core::numerics::{
    integrate_adaptive, integrate_adaptive_complex, BigComplex, PrecisionContext,
};
use galbox_core::operator::{normalized_matrix_element, truncated_hamiltonian};

pub fn run(digits: u32) -> Result<(), String> {
    let ctx = PrecisionContext::new(digits + 20).map_err(|e| e.to_string())?;
    let rel_tol = ctx.pow10(-((digits as i64 - 20).max(25)));
    let mut failures = 0usize;

    let mut check = |name: &str, ok: bool| {
        if ok {
            println!("ok      {name}");
        } else {
            println!("FAILED  {name}");
            failures += 1;
        }
    };

    // quadrature moments
    {
        let mut ok = true;
        for k in [0u32, 1, 6, 15, 24] {
            let v = integrate_adaptive(
                &|x| {
                    let mut acc = ctx.one();
                    for _ in 0..k {
                        acc = acc * x;
                    }
                    acc
                },
                digits,
            )
            .map_err(|e| e.to_string())?;
            let expected = if k % 2 == 1 {
                ctx.zero()
            } else {
                ctx.from_rational(&rug::Rational::from((2, k + 1)))
            };
            ok &= (v - expected).abs() < ctx.pow10(-(digits as i64 - 10));
        }
        check("quadrature monomial moments", ok);
    }

    // matrix elements vs oracle
    {
        let m = 4u32;
        let mut ok = true;
        for l in m..=m + 4 {
            for k in (m..=l).step_by(2) {
                let closed = normalized_matrix_element(l, k, m, &ctx).map_err(|e| e.to_string())?;
                let il = AssocLegendreIndex::new(l, m).unwrap();
                let ik = AssocLegendreIndex::new(k, m).unwrap();
                let norm = norm_assoc_legendre(il, &ctx) * norm_assoc_legendre(ik, &ctx);
                let oracle = integrate_adaptive(
                    &|x| {
                        -(eval_assoc_legendre(il, x, &ctx)
                            * galbox_core::legendre::eval_assoc_legendre_derivative(
                                ik, 2, x, &ctx,
                            ))
                    },
                    digits,
                )
                .map_err(|e| e.to_string())?
                    / &norm;
                ok &= ((closed - &oracle) / oracle.abs().max(&ctx.one())).abs() < rel_tol;
            }
        }
        check("matrix elements vs quadrature", ok);
    }

    // expansion coefficients vs oracle
    {
        let m = 4u32;
        let half_pi = ctx.pi() * ctx.from_rational(&rug::Rational::from((1, 2)));
        let mut ok = true;
        for l in m..=m + 3 {
            let idx = AssocLegendreIndex::new(l, m).unwrap();
            for j in 1..=2u32 {
                let freq = ctx.from_i64(i64::from(j)) * &half_pi;
                let oracle = integrate_adaptive(
                    &|x| {
                        let (s, _) = ((x + ctx.one()) * &freq).sin_cos();
                        eval_assoc_legendre(idx, x, &ctx) * s
                    },
                    digits,
                )
                .map_err(|e| e.to_string())?;
                let closed = coeff_dirichlet(l, m, j, &ctx).map_err(|e| e.to_string())?;
                ok &= ((closed - &oracle) / oracle.abs().max(&ctx.one())).abs() < rel_tol;

                let oracle = integrate_adaptive(
                    &|x| {
                        let (_, c) = ((x + ctx.one()) * &freq).sin_cos();
                        eval_assoc_legendre(idx, x, &ctx) * c
                    },
                    digits,
                )
                .map_err(|e| e.to_string())?;
                let closed = coeff_neumann(l, m, j, &ctx).map_err(|e| e.to_string())?;
                ok &= ((closed - &oracle) / oracle.abs().max(&ctx.one())).abs() < rel_tol;
            }
            for j in [-1i64, 0, 2] {
                let freq = ctx.from_i64(j) * ctx.pi();
                let oracle = integrate_adaptive_complex(
                    &|x| {
                        BigComplex::unit_phase(&((x + ctx.one()) * &freq))
                            .scale(&eval_assoc_legendre(idx, x, &ctx))
                    },
                    digits,
                )
                .map_err(|e| e.to_string())?;
                let closed = coeff_periodic(l, m, j, &ctx).map_err(|e| e.to_string())?;
                ok &= ((&closed - &oracle).abs() / oracle.abs().max(&ctx.one())) < rel_tol;
            }
        }
        check("expansion coefficients vs quadrature", ok);
    }

    // augmented family orthonormality under quadrature
    {
        let spec = BasisSpec::augmented(AugmentKind::ConstantPeriodic, 4).map_err(|e| e.to_string())?;
        let els: Vec<_> = (0..3)
            .map(|k| basis_element(&spec, k, &ctx))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let mut ok = true;
        for i in 0..els.len() {
            for j in 0..=i {
                let v = integrate_adaptive(
                    &|x| (&els[i].eval(x, &ctx).conj() * &els[j].eval(x, &ctx)).re,
                    digits,
                )
                .map_err(|e| e.to_string())?;
                let expected = if i == j { ctx.one() } else { ctx.zero() };
                ok &= (v - expected).abs() < ctx.pow10(-(digits as i64 - 15));
            }
        }
        check("Gram-Schmidt orthonormality", ok);
    }

    // propagator unitarity and norm conservation
    {
        let spec = BasisSpec::legendre(4).map_err(|e| e.to_string())?;
        let ham = truncated_hamiltonian(&spec, 6, &ctx).map_err(|e| e.to_string())?;
        let eig = ham.eigendecompose(&ctx).map_err(|e| e.to_string())?;
        let prop = Propagator::from_eigensystem(&ham, &eig, &TimeValue::parse("0.7").unwrap(), &ctx);
        let state = expand_state(&spec, &BoundaryCondition::Dirichlet, 1, 6, &ctx)
            .map_err(|e| e.to_string())?;
        let out = prop.apply(&state, &ctx).map_err(|e| e.to_string())?;
        let drift = (out.head_mass(&ctx) + &out.tail_mass
            - (state.head_mass(&ctx) + &state.tail_mass))
            .abs();
        check(
            "propagator unitarity",
            prop.unitarity_defect < ctx.eps(20) && drift < ctx.eps(15),
        );
    }

    // exact mirror-time identity
    {
        let p = exact_phase(
            &BoundaryCondition::Dirichlet,
            1,
            &TimeValue::four_over_pi(),
            &ctx,
        )
        .map_err(|e| e.to_string())?;
        let minus_one = ctx.complex_from_real(-ctx.one());
        check("mirror-time phase", (&p - &minus_one).abs() < ctx.eps(15));
    }

    if failures == 0 {
        println!("selftest: all checks passed at {digits} digits");
        Ok(())
    } else {
        Err(format!("{failures} selftest check(s) failed"))
    }
}
