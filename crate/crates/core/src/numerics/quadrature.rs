//! Adaptive Gauss-Legendre quadrature on [-1, 1].
//!
//! This is the independent oracle used to validate every closed-form matrix
//! element and expansion coefficient: panels are integrated with a fixed-order
//! Gauss-Legendre rule and bisected until the whole/halves discrepancy falls
//! below the target, which for the analytic integrands of this crate gives
//! spectral accuracy per panel. Node/weight tables are computed once per
//! (order, precision) and cached.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{BigComplex, BigReal, PrecisionContext};
use crate::error::{Error, Result};

/// Nodes and weights of an order-n Gauss-Legendre rule on [-1, 1].
#[derive(Debug)]
pub struct QuadratureRule {
    pub nodes: Vec<BigReal>,
    pub weights: Vec<BigReal>,
}

/// Panel order. Exact for polynomials up to degree 2*ORDER - 1 = 95, so the
/// degree <= 100 integrands of this artifact converge within one bisection.
const ORDER: usize = 48;

/// Hard caps for the adaptive subdivision.
const MAX_DEPTH: u32 = 48;
const MAX_PANELS: usize = 100_000;

fn rule_cache() -> &'static Mutex<HashMap<(usize, u32), Arc<QuadratureRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<QuadratureRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Legendre P_n(x) and its derivative by the three-term recurrence, used only
/// for locating quadrature nodes.
fn legendre_value_deriv(n: usize, x: &BigReal, ctx: &PrecisionContext) -> (BigReal, BigReal) {
    let mut p_prev = ctx.one();
    let mut p = x.clone();
    if n == 0 {
        return (p_prev, ctx.zero());
    }
    for k in 1..n {
        let k_real = ctx.from_i64(k as i64);
        let next = (ctx.from_i64(2 * k as i64 + 1) * x * &p - &k_real * &p_prev)
            / ctx.from_i64(k as i64 + 1);
        p_prev = p;
        p = next;
    }
    // P'_n(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
    let dp = ctx.from_i64(n as i64) * (x * &p - &p_prev) / (x.square() - ctx.one());
    (p, dp)
}

/// Compute (and cache) the Gauss-Legendre rule of the given order at the
/// context precision. Nodes are Newton-refined from the Chebyshev-angle
/// starting guesses; weights are 2 / ((1 - x^2) P'_n(x)^2).
pub fn gauss_legendre_rule(order: usize, ctx: &PrecisionContext) -> Arc<QuadratureRule> {
    let key = (order, ctx.bits());
    if let Some(rule) = rule_cache().lock().unwrap().get(&key) {
        return Arc::clone(rule);
    }

    let mut nodes = Vec::with_capacity(order);
    let mut weights = Vec::with_capacity(order);
    let target = ctx.pow10(-(i64::from(ctx.digits()) + 2));
    for i in 0..order {
        let seed = (std::f64::consts::PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut x = ctx.from_f64(seed);
        let mut settled = 0;
        for _ in 0..80 {
            let (p, dp) = legendre_value_deriv(order, &x, ctx);
            let dx = p / dp;
            x = &x - &dx;
            if dx.abs() <= target {
                settled += 1;
                if settled >= 2 {
                    break;
                }
            }
        }
        let (_, dp) = legendre_value_deriv(order, &x, ctx);
        let w = ctx.from_i64(2) / ((ctx.one() - x.square()) * dp.square());
        nodes.push(x);
        weights.push(w);
    }

    let rule = Arc::new(QuadratureRule { nodes, weights });
    rule_cache()
        .lock()
        .unwrap()
        .insert(key, Arc::clone(&rule));
    rule
}

fn panel_integral(
    f: &dyn Fn(&BigReal) -> BigReal,
    a: &BigReal,
    b: &BigReal,
    rule: &QuadratureRule,
    ctx: &PrecisionContext,
) -> BigReal {
    let half = ctx.from_rational(&rug::Rational::from((1, 2)));
    let mid = (a + b) * &half;
    let rad = (b - a) * &half;
    let mut acc = ctx.zero();
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let point = &mid + &rad * x;
        acc += &(w * f(&point));
    }
    acc * rad
}

/// Integrate a piecewise-smooth function over [-1, 1] with absolute error at
/// most `10^{-(digits-10)}`.
///
/// Returns [`Error::BudgetExceeded`] if the subdivision limit is reached
/// before the tolerance, e.g. for integrands far rougher than the
/// polynomial-times-trigonometric family this oracle is built for.
pub fn integrate_adaptive(f: &dyn Fn(&BigReal) -> BigReal, digits: u32) -> Result<BigReal> {
    // Work a little above the requested precision so the accumulated panel
    // sums stay comfortably inside the promised error.
    let ctx = PrecisionContext::new(digits + 20)?;
    let rule = gauss_legendre_rule(ORDER, &ctx);
    // Aim 5 digits below the promise; accepted-panel errors sum over panels.
    let total_tol = ctx.pow10(-(i64::from(digits) - 5));
    let half = ctx.from_rational(&rug::Rational::from((1, 2)));

    struct Panel {
        a: BigReal,
        b: BigReal,
        whole: BigReal,
        depth: u32,
    }

    let a0 = ctx.from_i64(-1);
    let b0 = ctx.one();
    let whole0 = panel_integral(f, &a0, &b0, &rule, &ctx);
    let mut stack = vec![Panel {
        a: a0,
        b: b0,
        whole: whole0,
        depth: 0,
    }];
    let mut total = ctx.zero();
    let mut panels_used = 0usize;

    while let Some(panel) = stack.pop() {
        panels_used += 1;
        if panels_used > MAX_PANELS {
            return Err(Error::BudgetExceeded(format!(
                "more than {MAX_PANELS} panels needed"
            )));
        }
        let mid = (&panel.a + &panel.b) * &half;
        let left = panel_integral(f, &panel.a, &mid, &rule, &ctx);
        let right = panel_integral(f, &mid, &panel.b, &rule, &ctx);
        let refined = &left + &right;
        let err = (&refined - &panel.whole).abs();
        // Per-panel budget proportional to the panel's share of [-1, 1].
        let panel_tol = &total_tol * (&panel.b - &panel.a) * ctx.from_rational(&rug::Rational::from((1, 4)));
        if err <= panel_tol {
            total += &refined;
        } else {
            if panel.depth + 1 > MAX_DEPTH {
                return Err(Error::BudgetExceeded(format!(
                    "subdivision depth {MAX_DEPTH} reached on [{}, {}]",
                    panel.a.to_scientific(5),
                    panel.b.to_scientific(5)
                )));
            }
            stack.push(Panel {
                a: panel.a,
                b: mid.clone(),
                whole: left,
                depth: panel.depth + 1,
            });
            stack.push(Panel {
                a: mid,
                b: panel.b,
                whole: right,
                depth: panel.depth + 1,
            });
        }
    }
    Ok(total)
}

/// Complex-valued variant: integrates real and imaginary parts separately.
pub fn integrate_adaptive_complex(
    f: &dyn Fn(&BigReal) -> BigComplex,
    digits: u32,
) -> Result<BigComplex> {
    let re = integrate_adaptive(&|x| f(x).re, digits)?;
    let im = integrate_adaptive(&|x| f(x).im, digits)?;
    Ok(BigComplex::new(re, im))
}
