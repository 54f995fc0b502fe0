//! Exact rational-coefficient polynomials.
//!
//! Endpoint-derivative lemmas and matrix-element closed forms are all exact
//! factorial arithmetic; holding polynomials as rational coefficient vectors
//! keeps every intermediate value exact and defers rounding to the single
//! final conversion to [`BigReal`].

use rug::{Integer, Rational};

use crate::numerics::{BigReal, PrecisionContext};

/// Dense polynomial over the rationals; `coeffs[k]` multiplies `x^k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| Rational::from(c * Integer::from(k)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn derivative_n(&self, n: u32) -> Self {
        let mut p = self.clone();
        for _ in 0..n {
            if p.coeffs.is_empty() {
                break;
            }
            p = p.derivative();
        }
        p
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        Self::from_coeffs(out)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = vec![Rational::new(); self.coeffs.len().max(rhs.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            out[k] += c;
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| Rational::from(c * q)).collect())
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_at_one(&self) -> Rational {
        let mut acc = Rational::new();
        for c in &self.coeffs {
            acc += c;
        }
        acc
    }

    /// Horner evaluation at an arbitrary-precision point. For hot loops
    /// convert once with [`Poly::to_real`] instead.
    pub fn eval(&self, x: &BigReal, ctx: &PrecisionContext) -> BigReal {
        let mut acc = ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + ctx.from_rational(c);
        }
        acc
    }

    pub fn to_real(&self, ctx: &PrecisionContext) -> RealPoly {
        RealPoly {
            coeffs: self.coeffs.iter().map(|c| ctx.from_rational(c)).collect(),
        }
    }
}

/// A polynomial with coefficients pre-rounded to a working precision.
#[derive(Debug, Clone)]
pub struct RealPoly {
    coeffs: Vec<BigReal>,
}

impl RealPoly {
    pub fn zero() -> Self {
        RealPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigReal) -> Self {
        RealPoly { coeffs: vec![c] }
    }

    pub fn add(&self, rhs: &RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        RealPoly { coeffs }
    }

    pub fn eval(&self, x: &BigReal, ctx: &PrecisionContext) -> BigReal {
        let mut acc = ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, s: &BigReal) -> RealPoly {
        RealPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }
}
