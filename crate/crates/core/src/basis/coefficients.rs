//! Exact expansion coefficients of reference eigenfunctions over the
//! non-normalized associated Legendre polynomials.
//!
//! Repeated integration by parts turns each overlap integral into a finite
//! sum of endpoint derivatives of P_l^m at x = 1 weighted by powers of
//! 1/(j pi); the boundary terms below derivative order m/2 vanish, and orders
//! beyond the polynomial degree vanish, so the sums are taken over all
//! derivative orders of the correct parity in [0, l] and the vanishing-term
//! convention of [`deriv_assoc_legendre_at_one`] prunes them. Everything is
//! exact until the final evaluation of the pi powers.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::legendre::{
    deriv_assoc_legendre_at_one_exact, factorial, AssocLegendreIndex,
};
use crate::numerics::{BigComplex, BigReal, PiSum, PrecisionContext};

fn check_index(l: u32, m: u32) -> Result<AssocLegendreIndex> {
    if m < 4 {
        return Err(Error::InvalidSpec(format!(
            "expansion coefficients need m >= 4, got m = {m}"
        )));
    }
    AssocLegendreIndex::new(l, m)
}

fn parity_sign(k: u32) -> i32 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// <P_l^m, sin(j pi (x+1)/2)>, exactly, for j >= 1:
///
/// (-2/(j pi)) ((-1)^j - (-1)^l) sum_t (-1)^t (2/(j pi))^{2t} d^{2t}P_l^m(1).
pub fn coeff_dirichlet_exact(l: u32, m: u32, j: u32) -> Result<PiSum> {
    let idx = check_index(l, m)?;
    if j == 0 {
        return Err(Error::InvalidSpec("Dirichlet modes start at j = 1".into()));
    }
    let parity = parity_sign(j) - parity_sign(l);
    let mut out = PiSum::zero();
    if parity == 0 {
        return Ok(out);
    }
    let two_over_j = Rational::from((2, Integer::from(j)));
    for t in 0..=l / 2 {
        let d = deriv_assoc_legendre_at_one_exact(idx, 2 * t);
        if d == 0 {
            continue;
        }
        // (-2/j) * parity * (-1)^t * (2/j)^{2t} * d, carrying pi^{-(2t+1)}
        let mut q = Rational::from((-2, Integer::from(j)))
            * Rational::from(parity)
            * two_over_j.clone().pow(2 * t)
            * d;
        if t % 2 == 1 {
            q = -q;
        }
        out.add_term(-(2 * i64::from(t) + 1), q);
    }
    Ok(out)
}

/// <P_l^m, 1> for even l: the closed factorial form
/// 2m/l * ((l/2)!)^2 (l+m)! / [ ((l-m)/2)! ((l+m)/2)! (l+1)! ];
/// zero for odd l.
pub fn coeff_constant_exact(l: u32, m: u32) -> Result<Rational> {
    check_index(l, m)?;
    if l % 2 == 1 {
        return Ok(Rational::new());
    }
    let num = Integer::from(2 * m) * factorial(l / 2).square() * factorial(l + m);
    let den = Integer::from(l)
        * factorial((l - m) / 2)
        * factorial((l + m) / 2)
        * factorial(l + 1);
    Ok(Rational::from((num, den)))
}

/// <P_l^m, e^{i j pi (x+1)}>, exactly, for j in Z.
///
/// For j = 0 this is the constant-function overlap; otherwise the value is
/// real for even l and purely imaginary for odd l:
///
///   even l:  2 sum_t (-1)^t (j pi)^{-(2t+2)} d^{2t+1}P_l^m(1)
///   odd  l: -2i sum_t (-1)^t (j pi)^{-(2t+1)} d^{2t}P_l^m(1).
pub fn coeff_periodic_exact(l: u32, m: u32, j: i64) -> Result<(PiSum, PiSum)> {
    let idx = check_index(l, m)?;
    if j == 0 {
        return Ok((
            PiSum::from_rational(coeff_constant_exact(l, m)?),
            PiSum::zero(),
        ));
    }
    let inv_j = Rational::from((Integer::from(1), Integer::from(j)));
    let mut re = PiSum::zero();
    let mut im = PiSum::zero();
    if l % 2 == 0 {
        for t in 0..=l / 2 {
            let d = deriv_assoc_legendre_at_one_exact(idx, 2 * t + 1);
            if d == 0 {
                continue;
            }
            let mut q = Rational::from(2) * inv_j.clone().pow(2 * t + 2) * d;
            if t % 2 == 1 {
                q = -q;
            }
            re.add_term(-(2 * i64::from(t) + 2), q);
        }
    } else {
        for t in 0..=l / 2 {
            let d = deriv_assoc_legendre_at_one_exact(idx, 2 * t);
            if d == 0 {
                continue;
            }
            let mut q = Rational::from(-2) * inv_j.clone().pow(2 * t + 1) * d;
            if t % 2 == 1 {
                q = -q;
            }
            im.add_term(-(2 * i64::from(t) + 1), q);
        }
    }
    Ok((re, im))
}

/// <P_l^m, cos(j pi (x+1)/2)>, exactly, for j >= 0 (j = 0 delegates to the
/// constant-function overlap):
///
/// (2/(j pi))^2 ((-1)^j - (-1)^{l+1}) sum_t (-1)^t (2/(j pi))^{2t} d^{2t+1}P_l^m(1).
pub fn coeff_neumann_exact(l: u32, m: u32, j: u32) -> Result<PiSum> {
    let idx = check_index(l, m)?;
    if j == 0 {
        return Ok(PiSum::from_rational(coeff_constant_exact(l, m)?));
    }
    let parity = parity_sign(j) + parity_sign(l);
    let mut out = PiSum::zero();
    if parity == 0 {
        return Ok(out);
    }
    let two_over_j = Rational::from((2, Integer::from(j)));
    for t in 0..=l / 2 {
        let d = deriv_assoc_legendre_at_one_exact(idx, 2 * t + 1);
        if d == 0 {
            continue;
        }
        let mut q = two_over_j.clone().pow(2 * t + 2) * Rational::from(parity) * d;
        if t % 2 == 1 {
            q = -q;
        }
        out.add_term(-(2 * i64::from(t) + 2), q);
    }
    Ok(out)
}

/// Non-normalized <P_l^m, sin(j pi (x+1)/2)> at working precision.
pub fn coeff_dirichlet(l: u32, m: u32, j: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(coeff_dirichlet_exact(l, m, j)?.eval(ctx))
}

/// Non-normalized <P_l^m, e^{i j pi (x+1)}> at working precision.
pub fn coeff_periodic(l: u32, m: u32, j: i64, ctx: &PrecisionContext) -> Result<BigComplex> {
    let (re, im) = coeff_periodic_exact(l, m, j)?;
    Ok(BigComplex::new(re.eval(ctx), im.eval(ctx)))
}

/// Non-normalized <P_l^m, cos(j pi (x+1)/2)> at working precision.
pub fn coeff_neumann(l: u32, m: u32, j: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(coeff_neumann_exact(l, m, j)?.eval(ctx))
}
