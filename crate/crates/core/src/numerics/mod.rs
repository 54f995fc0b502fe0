//! Arbitrary-precision scalars, dense Hermitian eigendecomposition, and the
//! adaptive quadrature oracle.
//!
//! Everything downstream is built on two guarantees made here:
//! - arithmetic is deterministic for a fixed [`PrecisionContext`] (MPFR
//!   correctly-rounded operations; same inputs give bit-identical outputs);
//! - every closed-form quantity can be cross-checked against
//!   [`quadrature::integrate_adaptive`], an independent oracle.

mod complex;
mod matrix;
mod pisum;
mod scalar;

pub mod eigen;
pub mod quadrature;

pub use complex::BigComplex;
pub use eigen::{eigendecompose_hermitian, Eigensystem};
pub use matrix::HermitianMatrix;
pub use pisum::PiSum;
pub use quadrature::{integrate_adaptive, integrate_adaptive_complex};
pub use scalar::{rational_from_decimal_str, BigReal, PrecisionContext};
