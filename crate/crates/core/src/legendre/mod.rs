//! Legendre and associated Legendre polynomials with exact coefficients.
//!
//! Polynomials are expanded once from the Rodrigues form into exact rational
//! coefficient vectors and cached; evaluation, differentiation and endpoint
//! data are then exact until the final rounding. The endpoint derivatives at
//! x = 1 also have factorial closed forms, implemented here and cross-checked
//! against symbolic differentiation in the tests — they are the backbone of
//! every expansion-coefficient and matrix-element formula downstream.

mod poly;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::ops::Pow;
use rug::{Integer, Rational};

pub(crate) use poly::{Poly, RealPoly};

use crate::error::{Error, Result};
use crate::numerics::{BigReal, PrecisionContext};

/// Index (l, m) of an associated Legendre polynomial with even order m and
/// degree l >= m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AssocLegendreIndex {
    l: u32,
    m: u32,
}

impl AssocLegendreIndex {
    pub fn new(l: u32, m: u32) -> Result<Self> {
        if m % 2 != 0 {
            return Err(Error::InvalidSpec(format!(
                "associated Legendre order must be even, got m = {m}"
            )));
        }
        if l < m {
            return Err(Error::InvalidSpec(format!(
                "associated Legendre degree must satisfy l >= m, got l = {l}, m = {m}"
            )));
        }
        Ok(Self { l, m })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> u32 {
        self.m
    }
}

pub(crate) fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// (x^2 - 1)^l with exact integer coefficients.
fn x2_minus_one_pow(l: u32) -> Poly {
    let mut coeffs = vec![Rational::new(); 2 * l as usize + 1];
    for k in 0..=l {
        let mut c = Integer::from(Integer::binomial_u(l, k));
        if (l - k) % 2 == 1 {
            c = -c;
        }
        coeffs[2 * k as usize] = Rational::from(c);
    }
    Poly::from_coeffs(coeffs)
}

/// (1 - x^2)^{m/2} for even m.
fn one_minus_x2_pow(half_m: u32) -> Poly {
    let mut coeffs = vec![Rational::new(); 2 * half_m as usize + 1];
    for j in 0..=half_m {
        let mut c = Integer::from(Integer::binomial_u(half_m, j));
        if j % 2 == 1 {
            c = -c;
        }
        coeffs[2 * j as usize] = Rational::from(c);
    }
    Poly::from_coeffs(coeffs)
}

fn legendre_cache() -> &'static Mutex<HashMap<u32, Arc<Poly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Poly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn assoc_cache() -> &'static Mutex<HashMap<(u32, u32), Arc<Poly>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<Poly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact coefficients of P_l via the Rodrigues formula,
/// P_l = 1/(2^l l!) d^l/dx^l (x^2 - 1)^l.
pub(crate) fn legendre_poly(l: u32) -> Arc<Poly> {
    if let Some(p) = legendre_cache().lock().unwrap().get(&l) {
        return Arc::clone(p);
    }
    let scale = Rational::from((Integer::from(1), Integer::from(2).pow(l) * factorial(l)));
    let p = Arc::new(x2_minus_one_pow(l).derivative_n(l).scale(&scale));
    legendre_cache().lock().unwrap().insert(l, Arc::clone(&p));
    p
}

/// Exact coefficients of P_l^m = (-1)^m (1 - x^2)^{m/2} d^m P_l / dx^m for
/// even m (where the sign factor is +1 and the result is a degree-l
/// polynomial).
pub(crate) fn assoc_legendre_poly(idx: AssocLegendreIndex) -> Arc<Poly> {
    let key = (idx.l, idx.m);
    if let Some(p) = assoc_cache().lock().unwrap().get(&key) {
        return Arc::clone(p);
    }
    let p = Arc::new(one_minus_x2_pow(idx.m / 2).mul(&legendre_poly(idx.l).derivative_n(idx.m)));
    assoc_cache().lock().unwrap().insert(key, Arc::clone(&p));
    p
}

/// Evaluate P_l(x) from its exact coefficient expansion (no recurrence
/// round-off at any degree used here).
pub fn eval_legendre(l: u32, x: &BigReal, ctx: &PrecisionContext) -> BigReal {
    legendre_poly(l).eval(x, ctx)
}

/// Evaluate P_l^m(x) from its exact coefficient expansion.
pub fn eval_assoc_legendre(idx: AssocLegendreIndex, x: &BigReal, ctx: &PrecisionContext) -> BigReal {
    assoc_legendre_poly(idx).eval(x, ctx)
}

/// Evaluate d^order P_l^m / dx^order at x.
pub fn eval_assoc_legendre_derivative(
    idx: AssocLegendreIndex,
    order: u32,
    x: &BigReal,
    ctx: &PrecisionContext,
) -> BigReal {
    assoc_legendre_poly(idx).derivative_n(order).eval(x, ctx)
}

/// ||P_l^m||^2 = 2 (l+m)! / ((2l+1) (l-m)!), exactly.
pub fn norm_assoc_legendre_sqr_exact(idx: AssocLegendreIndex) -> Rational {
    Rational::from((
        Integer::from(2) * factorial(idx.l + idx.m),
        Integer::from(2 * idx.l + 1) * factorial(idx.l - idx.m),
    ))
}

/// L2 norm of P_l^m over (-1, 1): the square root of the exact rational
/// 2 (l+m)! / ((2l+1) (l-m)!) at working precision.
pub fn norm_assoc_legendre(idx: AssocLegendreIndex, ctx: &PrecisionContext) -> BigReal {
    ctx.from_rational(&norm_assoc_legendre_sqr_exact(idx)).sqrt()
}

/// d^alpha P_l / dx^alpha at x = 1, exactly: 2^{-alpha}/alpha! *
/// (l+alpha)!/(l-alpha)!, and 0 for alpha > l.
pub fn deriv_legendre_at_one_exact(l: u32, alpha: u32) -> Rational {
    if alpha > l {
        return Rational::new();
    }
    Rational::from((
        factorial(l + alpha),
        Integer::from(2).pow(alpha) * factorial(alpha) * factorial(l - alpha),
    ))
}

pub fn deriv_legendre_at_one(l: u32, alpha: u32, ctx: &PrecisionContext) -> BigReal {
    ctx.from_rational(&deriv_legendre_at_one_exact(l, alpha))
}

/// d^alpha P_l^m / dx^alpha at x = 1, exactly, via the finite factorial sum
///
/// (-1)^{m/2} 2^{-alpha} alpha! (m/2)! *
///     sum_{t = m/2}^{min(m, alpha)} (l+m+alpha-t)! /
///         [ (alpha-t)! (t-m/2)! (m-t)! (m-t+alpha)! (l-m-alpha+t)! ].
///
/// Empty sums (alpha < m/2) give 0, as do summands whose (l-m-alpha+t) is
/// negative — those correspond to derivative orders beyond the degree of P_l
/// and never evaluate a negative factorial. For alpha > l the result is 0.
pub fn deriv_assoc_legendre_at_one_exact(idx: AssocLegendreIndex, alpha: u32) -> Rational {
    let (l, m) = (idx.l, idx.m);
    if alpha > l {
        return Rational::new();
    }
    let half_m = m / 2;
    if alpha < half_m {
        return Rational::new();
    }
    let mut sum = Rational::new();
    for t in half_m..=m.min(alpha) {
        // d^{m + alpha - t} P_l vanishes at 1 if the order exceeds l.
        if m + alpha - t > l {
            continue;
        }
        let num = factorial(l + m + alpha - t);
        let den = factorial(alpha - t)
            * factorial(t - half_m)
            * factorial(m - t)
            * factorial(m - t + alpha)
            * factorial((l + t) - (m + alpha));
        sum += Rational::from((num, den));
    }
    let mut pre = Rational::from((
        factorial(alpha) * factorial(half_m),
        Integer::from(2).pow(alpha),
    ));
    if half_m % 2 == 1 {
        pre = -pre;
    }
    pre * sum
}

pub fn deriv_assoc_legendre_at_one(
    idx: AssocLegendreIndex,
    alpha: u32,
    ctx: &PrecisionContext,
) -> BigReal {
    ctx.from_rational(&deriv_assoc_legendre_at_one_exact(idx, alpha))
}
