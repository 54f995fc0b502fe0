//! Unitary propagation of truncated states and the exact reference dynamics.
//!
//! The truncated propagator Û_n(t) = e^{-itĤ_n} is built from the Hermitian
//! eigendecomposition of Ĥ_n — a single audited numerical path, with no
//! separate Padé/squaring code. On the orthogonal complement of the
//! truncation subspace the full propagator acts as the identity, which is
//! how tail mass is carried through every formula downstream.
//!
//! Times are exact rationals or exact rational multiples of 1/pi; at
//! t = 4/pi the Dirichlet evolution is the sign-flipped mirror map
//! psi(x) -> -psi(-x) and the periodic evolution is the identity, and those
//! identities hold exactly only at the exact time.

use std::fmt;

use rug::Rational;

use crate::basis::{BoundaryCondition, SpectralData, StateCoefficients};
use crate::error::{Error, Result};
use crate::numerics::{
    rational_from_decimal_str, BigComplex, BigReal, Eigensystem, PrecisionContext,
};
use crate::operator::TruncatedHamiltonian;

/// A propagation time, kept exact so that eigenphases E_j t at rational
/// multiples of 1/pi evaluate to exact multiples of pi.
#[derive(Debug, Clone, PartialEq)]
pub enum TimeValue {
    /// A plain rational time.
    Literal(Rational),
    /// `OverPi(q)` is the time q / pi.
    OverPi(Rational),
}

impl TimeValue {
    pub fn from_i64(t: i64) -> Self {
        Self::Literal(Rational::from(t))
    }

    /// The mirror time 4/pi.
    pub fn four_over_pi() -> Self {
        Self::OverPi(Rational::from(4))
    }

    /// Parse either a decimal literal (`"0.1"`, `"1"`, `"2.5e-3"`) or a
    /// `p/q/pi` token meaning (p/q)/pi (`"4/1/pi"` is 4/pi).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(prefix) = s.strip_suffix("/pi") {
            let q = match prefix.split_once('/') {
                Some((num, den)) => {
                    let num: i64 = num
                        .trim()
                        .parse()
                        .map_err(|_| Error::InvalidSpec(format!("bad time token {s:?}")))?;
                    let den: i64 = den
                        .trim()
                        .parse()
                        .map_err(|_| Error::InvalidSpec(format!("bad time token {s:?}")))?;
                    if den == 0 {
                        return Err(Error::InvalidSpec(format!("zero denominator in {s:?}")));
                    }
                    Rational::from((num, den))
                }
                None => Rational::from(
                    prefix
                        .trim()
                        .parse::<i64>()
                        .map_err(|_| Error::InvalidSpec(format!("bad time token {s:?}")))?,
                ),
            };
            Ok(Self::OverPi(q))
        } else {
            Ok(Self::Literal(rational_from_decimal_str(s)?))
        }
    }

    pub fn to_real(&self, ctx: &PrecisionContext) -> BigReal {
        match self {
            Self::Literal(q) => ctx.from_rational(q),
            Self::OverPi(q) => ctx.from_rational(q) / ctx.pi(),
        }
    }

    /// The phase angle E t for an energy E = q_E pi², exactly:
    /// a rational multiple of pi² for literal times, of pi for 1/pi times.
    pub fn phase_angle(&self, energy_over_pi_sqr: &Rational, ctx: &PrecisionContext) -> BigReal {
        let pi = ctx.pi();
        match self {
            Self::Literal(q) => ctx.from_rational(&Rational::from(energy_over_pi_sqr * q)) * &pi * &pi,
            Self::OverPi(q) => ctx.from_rational(&Rational::from(energy_over_pi_sqr * q)) * &pi,
        }
    }
}

impl fmt::Display for TimeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Literal(q) => write!(f, "{q}"),
            Self::OverPi(q) => write!(f, "{}/{}/pi", q.numer(), q.denom()),
        }
    }
}

/// Dense truncated propagator Û_n(t) = e^{-itĤ_n} with its unitarity defect
/// `max |U U† - I|` recorded for auditing.
#[derive(Debug, Clone)]
pub struct Propagator {
    pub basis: crate::basis::BasisSpec,
    pub n: usize,
    pub t: TimeValue,
    pub matrix: Vec<Vec<BigComplex>>,
    pub unitarity_defect: BigReal,
}

impl Propagator {
    /// Build from a precomputed eigendecomposition of Ĥ_n.
    pub fn from_eigensystem(
        ham: &TruncatedHamiltonian,
        eig: &Eigensystem,
        t: &TimeValue,
        ctx: &PrecisionContext,
    ) -> Self {
        let t_real = t.to_real(ctx);
        let matrix = eig.spectral_matrix(
            |lambda| BigComplex::unit_phase(&-(lambda * &t_real)),
            ctx,
        );
        let unitarity_defect = unitarity_defect(&matrix, ctx);
        Self {
            basis: ham.basis.clone(),
            n: ham.n,
            t: t.clone(),
            matrix,
            unitarity_defect,
        }
    }

    /// Apply Û_n(t) to the truncated block of a state; the tail evolves by
    /// the identity, so its mass is unchanged.
    pub fn apply(&self, state: &StateCoefficients, ctx: &PrecisionContext) -> Result<StateCoefficients> {
        if state.n != self.n || state.basis != self.basis {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: state.n,
            });
        }
        let c = (0..self.n)
            .map(|i| {
                let mut acc = ctx.complex_zero();
                for (j, cj) in state.c.iter().enumerate() {
                    acc += &(&self.matrix[i][j] * cj);
                }
                acc
            })
            .collect();
        Ok(StateCoefficients {
            basis: state.basis.clone(),
            n: state.n,
            c,
            tail_mass: state.tail_mass.clone(),
        })
    }
}

fn unitarity_defect(u: &[Vec<BigComplex>], ctx: &PrecisionContext) -> BigReal {
    let n = u.len();
    let mut worst = ctx.zero();
    for i in 0..n {
        for j in 0..=i {
            let mut s = ctx.complex_zero();
            for k in 0..n {
                s += &(&u[i][k] * &u[j][k].conj());
            }
            if i == j {
                s.re -= &ctx.one();
            }
            worst = worst.max(&s.abs());
        }
    }
    worst
}

/// Build the propagator for Ĥ_n at time t (eigendecomposition included).
pub fn propagate_truncated(
    ham: &TruncatedHamiltonian,
    t: &TimeValue,
    state: &StateCoefficients,
    ctx: &PrecisionContext,
) -> Result<StateCoefficients> {
    let eig = ham.eigendecompose(ctx)?;
    Propagator::from_eigensystem(ham, &eig, t, ctx).apply(state, ctx)
}

/// The exact eigenphase e^{-i E_j t} of the reference dynamics.
pub fn exact_phase(
    bc: &BoundaryCondition,
    j: i64,
    t: &TimeValue,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    let mode = SpectralData::new(bc, j)?;
    let theta = t.phase_angle(&mode.energy_over_pi_sqr(), ctx);
    Ok(BigComplex::unit_phase(&-theta))
}

/// Exact evolution at the mirror time t = 4/pi on a sampled wavefunction:
/// Dirichlet maps psi(x) to -psi(-x); periodic is the identity.
///
/// Samples must be sorted by x on a symmetric grid; anything else is
/// rejected, as is any other (boundary condition, time) pair.
pub fn special_time_map(
    bc: &BoundaryCondition,
    t: &TimeValue,
    samples: &[(BigReal, BigComplex)],
    ctx: &PrecisionContext,
) -> Result<Vec<(BigReal, BigComplex)>> {
    if *t != TimeValue::four_over_pi() {
        return Err(Error::UnsupportedTime);
    }
    match bc {
        BoundaryCondition::Dirichlet => {
            let tol = ctx.eps(15);
            let n = samples.len();
            let mut out = Vec::with_capacity(n);
            for i in 0..n {
                let (x, _) = &samples[i];
                let (x_mirror, v_mirror) = &samples[n - 1 - i];
                if (x + x_mirror).abs() > tol {
                    return Err(Error::InvalidSpec(
                        "mirror map needs a symmetric sorted sample grid".into(),
                    ));
                }
                out.push((x.clone(), -v_mirror));
            }
            Ok(out)
        }
        bc if bc.is_periodic() => Ok(samples.to_vec()),
        _ => Err(Error::UnsupportedTime),
    }
}
