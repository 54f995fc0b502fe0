use std::time::Instant;

use galbox_core::basis::{AugmentKind, BasisSpec, BoundaryCondition};
use galbox_core::evolution::TimeValue;
use galbox_core::experiment::approximation_error;
use galbox_core::numerics::PrecisionContext;
use galbox_core::operator::{
    galerkin_projection_residual, truncated_hamiltonian, truncated_hamiltonian_via_quadrature,
};

fn main() {
    let digits: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(100);
    let ctx = PrecisionContext::new(digits).unwrap();
    let leg = BasisSpec::legendre(4).unwrap();
    let per = BoundaryCondition::periodic();
    let dir = BoundaryCondition::Dirichlet;

    println!("== criterion 3 probe: legendre(4), periodic j=0, t=4/pi ==");
    let t = TimeValue::four_over_pi();
    for n in (8..=40).step_by(4) {
        let start = Instant::now();
        let e = approximation_error(&leg, &per, 0, n, &t, &ctx).unwrap();
        println!("n={n:2}  error={:.10}  ({:.2?})", e.to_f64(), start.elapsed());
    }

    println!("== criterion 2 probe: legendre(4), dirichlet j=5 ==");
    for tt in ["0.1", "1", "4/1/pi"] {
        let t = TimeValue::parse(tt).unwrap();
        for n in [8usize, 16, 24, 32, 40] {
            let start = Instant::now();
            let e = approximation_error(&leg, &dir, 5, n, &t, &ctx).unwrap();
            println!("t={tt:7} n={n:2}  error={:.10}  ({:.2?})", e.to_f64(), start.elapsed());
        }
    }

    println!("== criterion 4 probe: augmented bases, t=1, n=40 ==");
    let t1 = TimeValue::from_i64(1);
    let aug_c = BasisSpec::augmented(AugmentKind::ConstantPeriodic, 4).unwrap();
    let aug_k = BasisSpec::augmented(AugmentKind::CosineAntiperiodic, 4).unwrap();
    for n in [8usize, 24, 40] {
        let e1 = approximation_error(&aug_c, &per, 0, n, &t1, &ctx).unwrap();
        let e2 = approximation_error(&aug_k, &BoundaryCondition::antiperiodic(), 0, n, &t1, &ctx).unwrap();
        println!("n={n:2}  const-periodic={:.8e}  cosine-antiperiodic={:.8e}", e1.to_f64(), e2.to_f64());
    }

    println!("== criterion 6 probe: lambda_min vs pi^2/4 ==");
    let pi24 = ctx.pi().square().to_f64() / 4.0;
    for n in [8usize, 20, 40] {
        let ham = truncated_hamiltonian(&leg, n, &ctx).unwrap();
        let eig = ham.eigendecompose(&ctx).unwrap();
        println!(
            "n={n:2}  lambda_min={:.12}  gap={:.3e}",
            eig.lambda_min().to_f64(),
            eig.lambda_min().to_f64() - pi24
        );
    }
    let start = Instant::now();
    let oracle = truncated_hamiltonian_via_quadrature(4, 40, 50).unwrap();
    let octx = PrecisionContext::new(70).unwrap();
    let eig = galbox_core::numerics::eigendecompose_hermitian(
        &oracle.matrix,
        &octx.eps(12),
        &octx,
    )
    .unwrap();
    println!(
        "quadrature-built n=40 at 50 digits: lambda_min={:.12} gap={:.3e} ({:.2?})",
        eig.lambda_min().to_f64(),
        eig.lambda_min().to_f64() - pi24,
        start.elapsed()
    );

    println!("== criterion 8 probe: residuals ==");
    for n in [8usize, 16, 24, 32] {
        let rd = galerkin_projection_residual(&leg, &dir, 1, n, &ctx).unwrap();
        let rp = galerkin_projection_residual(&leg, &per, 0, n, &ctx).unwrap();
        println!("n={n:2}  dirichlet-j1={:.8e}  periodic-j0={:.10}", rd.to_f64(), rp.to_f64());
    }
}
