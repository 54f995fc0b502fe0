use galbox_core::basis::{AugmentKind, BasisSpec, BoundaryCondition};
use galbox_core::evolution::TimeValue;
use galbox_core::experiment::approximation_error;
use galbox_core::numerics::PrecisionContext;

fn main() {
    let ctx = PrecisionContext::new(60).unwrap();
    let leg = BasisSpec::legendre(4).unwrap();
    let per = BoundaryCondition::periodic();
    let t = TimeValue::four_over_pi();
    println!("== all-n periodic j=0 t=4/pi ==");
    let mut last = 0.0f64;
    for n in 8..=40usize {
        let e = approximation_error(&leg, &per, 0, n, &t, &ctx).unwrap().to_f64();
        let mark = if e + 1e-12 < last { "  <-- DIP" } else { "" };
        println!("n={n:2} error={e:.12}{mark}");
        last = e;
    }
    println!("== augmented constant-periodic j=1, t=1 ==");
    let aug = BasisSpec::augmented(AugmentKind::ConstantPeriodic, 4).unwrap();
    let t1 = TimeValue::from_i64(1);
    for n in [8usize, 16, 24, 32, 40] {
        let e = approximation_error(&aug, &per, 1, n, &t1, &ctx).unwrap().to_f64();
        println!("n={n:2} error={e:.10}");
    }
}
