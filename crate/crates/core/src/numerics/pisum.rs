use std::collections::BTreeMap;

use rug::Rational;

use super::{BigReal, PrecisionContext};

/// Exact number of the form `sum_k q_k * pi^{e_k}` with rational `q_k` and
/// integer exponents `e_k`.
///
/// Expansion coefficients and matrix elements of this artifact are all of
/// this shape; keeping them exact until the final conversion makes the closed
/// forms testable by rational equality and removes cancellation concerns from
/// the alternating endpoint-derivative sums.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PiSum {
    terms: BTreeMap<i64, Rational>,
}

impl PiSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut s = Self::zero();
        s.add_term(0, q);
        s
    }

    /// Add `q * pi^e`.
    pub fn add_term(&mut self, e: i64, q: Rational) {
        if q == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::new);
        *entry += q;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if *q == 0 {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, Rational::from(c * q));
        }
        out
    }

    /// Exact rational part (the `pi^0` coefficient).
    pub fn rational_part(&self) -> Rational {
        self.terms.get(&0).cloned().unwrap_or_default()
    }

    /// True when the value is a plain rational (no pi dependence).
    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    pub fn eval(&self, ctx: &PrecisionContext) -> BigReal {
        let mut acc = ctx.zero();
        if self.terms.is_empty() {
            return acc;
        }
        let pi = ctx.pi();
        let inv_pi = pi.recip();
        for (&e, q) in &self.terms {
            let mut term = ctx.from_rational(q);
            let base = if e >= 0 { &pi } else { &inv_pi };
            for _ in 0..e.unsigned_abs() {
                term = term * base;
            }
            acc += &term;
        }
        acc
    }
}

impl std::ops::Add<&PiSum> for &PiSum {
    type Output = PiSum;
    fn add(self, rhs: &PiSum) -> PiSum {
        let mut out = self.clone();
        for (e, q) in &rhs.terms {
            out.add_term(*e, q.clone());
        }
        out
    }
}
