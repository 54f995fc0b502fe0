use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Global decimal-digit setting governing all big-float arithmetic.
///
/// Values created through a context carry at least `digits` decimal digits of
/// mantissa; derived values inherit the largest precision among their
/// operands, so precision never silently degrades inside a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    digits: u32,
    bits: u32,
}

/// Binary guard bits on top of the requested decimal precision.
const GUARD_BITS: u32 = 32;

impl PrecisionContext {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < 30 {
            return Err(Error::InvalidSpec(format!(
                "precision must be at least 30 decimal digits, got {digits}"
            )));
        }
        // bits = ceil(digits * log2(10)) + guard
        let bits = (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS;
        Ok(Self { digits, bits })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn zero(&self) -> BigReal {
        BigReal(Float::new(self.bits))
    }

    pub fn one(&self) -> BigReal {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> BigReal {
        BigReal(Float::with_val(self.bits, v))
    }

    pub fn from_integer(&self, v: &Integer) -> BigReal {
        BigReal(Float::with_val(self.bits, v))
    }

    pub fn from_rational(&self, v: &Rational) -> BigReal {
        BigReal(Float::with_val(self.bits, v))
    }

    /// Inexact entry point; only meant for seeding (plot scales, Newton
    /// starting guesses), never for values that feed exact comparisons.
    pub fn from_f64(&self, v: f64) -> BigReal {
        BigReal(Float::with_val(self.bits, v))
    }

    pub fn pi(&self) -> BigReal {
        BigReal(Float::with_val(self.bits, Constant::Pi))
    }

    /// Exact power of ten, `10^e`.
    pub fn pow10(&self, e: i64) -> BigReal {
        let p = Integer::from(10).pow(e.unsigned_abs() as u32);
        let v = Float::with_val(self.bits, &p);
        if e >= 0 {
            BigReal(v)
        } else {
            BigReal(v.recip())
        }
    }

    /// `10^{-(digits - offset)}`: the standard tolerance ladder. `eps(0)` is
    /// the full working precision, `eps(15)` the slack used by most
    /// invariants.
    pub fn eps(&self, offset: i64) -> BigReal {
        self.pow10(-(i64::from(self.digits) - offset))
    }

    pub fn complex_zero(&self) -> super::BigComplex {
        super::BigComplex::new(self.zero(), self.zero())
    }

    pub fn complex_from_real(&self, re: BigReal) -> super::BigComplex {
        super::BigComplex::new(re, self.zero())
    }
}

/// Arbitrary-precision real number (MPFR-backed, correctly rounded).
#[derive(Debug, Clone)]
pub struct BigReal(pub(crate) Float);

impl BigReal {
    pub(crate) fn with_prec_zero(prec: u32) -> Self {
        BigReal(Float::new(prec))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_sign_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn abs(&self) -> BigReal {
        BigReal(self.0.clone().abs())
    }

    pub fn sqrt(&self) -> BigReal {
        BigReal(self.0.clone().sqrt())
    }

    pub fn square(&self) -> BigReal {
        BigReal(Float::with_val(self.prec(), self.0.square_ref()))
    }

    pub fn recip(&self) -> BigReal {
        BigReal(self.0.clone().recip())
    }

    /// Simultaneous sine and cosine at the value's own precision.
    pub fn sin_cos(&self) -> (BigReal, BigReal) {
        let (s, c) = self.0.clone().sin_cos(Float::new(self.prec()));
        (BigReal(s), BigReal(c))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn max(&self, other: &BigReal) -> BigReal {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min(&self, other: &BigReal) -> BigReal {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Scientific-notation rendering with a fixed number of significant
    /// digits, e.g. `-1.234567890e-05`. Byte-deterministic for a fixed
    /// precision context.
    pub fn to_scientific(&self, sig_digits: usize) -> String {
        debug_assert!(sig_digits >= 1);
        if self.0.is_zero() {
            let mut s = String::from("0.");
            s.push_str(&"0".repeat(sig_digits.saturating_sub(1)));
            s.push_str("e+00");
            return s;
        }
        let (sign, digits, exp) = self.0.to_sign_string_exp(10, Some(sig_digits));
        // `digits` holds sig_digits mantissa digits; exponent is the position
        // of the decimal point relative to the string start.
        let e = exp.expect("finite nonzero float has an exponent") - 1;
        let mut out = String::new();
        if sign {
            out.push('-');
        }
        out.push_str(&digits[..1]);
        out.push('.');
        out.push_str(&digits[1..]);
        if e < 0 {
            out.push_str(&format!("e-{:02}", -e));
        } else {
            out.push_str(&format!("e+{:02}", e));
        }
        out
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! bigreal_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                let prec = self.prec().max(rhs.prec());
                BigReal(Float::with_val(prec, (&self.0).$method(&rhs.0)))
            }
        }
        impl $trait<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                (&self).$method(rhs)
            }
        }
        impl $trait<BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                self.$method(&rhs)
            }
        }
        impl $trait<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                (&self).$method(&rhs)
            }
        }
    };
}

bigreal_binop!(Add, add);
bigreal_binop!(Sub, sub);
bigreal_binop!(Mul, mul);
bigreal_binop!(Div, div);

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(Float::with_val(self.prec(), -&self.0))
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(-self.0)
    }
}

// Assign-ops keep the precision of the accumulator; accumulators must be
// created through the context, which holds the widest precision in play.
impl AddAssign<&BigReal> for BigReal {
    fn add_assign(&mut self, rhs: &BigReal) {
        debug_assert!(self.prec() >= rhs.prec());
        self.0 += &rhs.0;
    }
}

impl SubAssign<&BigReal> for BigReal {
    fn sub_assign(&mut self, rhs: &BigReal) {
        debug_assert!(self.prec() >= rhs.prec());
        self.0 -= &rhs.0;
    }
}

/// Parse a plain decimal string (`"0.1"`, `"-3"`, `"2.5e-3"`) into an exact
/// rational, so downstream arithmetic stays reproducible across precisions.
pub fn rational_from_decimal_str(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidSpec("empty number".into()));
    }
    let (mantissa, exp10) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..]
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("bad exponent in {s:?}")))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(pos) => (&mantissa[..pos], &mantissa[pos + 1..]),
        None => (mantissa, ""),
    };
    let negative = int_part.starts_with('-');
    let int_digits = int_part.trim_start_matches(['-', '+']);
    if !int_digits.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
        || (int_digits.is_empty() && frac_part.is_empty())
    {
        return Err(Error::InvalidSpec(format!("bad decimal literal {s:?}")));
    }
    let mut num = Integer::from_str_radix(
        &format!(
            "{}{}",
            if int_digits.is_empty() { "0" } else { int_digits },
            frac_part
        ),
        10,
    )
    .map_err(|_| Error::InvalidSpec(format!("bad decimal literal {s:?}")))?;
    if negative {
        num = -num;
    }
    let shift = exp10 - frac_part.len() as i64;
    let scale = Integer::from(10).pow(shift.unsigned_abs() as u32);
    let q = if shift >= 0 {
        Rational::from(num * scale)
    } else {
        Rational::from((num, scale))
    };
    Ok(q)
}
