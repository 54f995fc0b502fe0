//! High-precision laboratory for Galerkin truncations of the particle in a box.
//!
//! The Hamiltonian is the one-dimensional Laplacian H = -d²/dx² on L²((-1,1)).
//! Truncating H to the span of the first n elements of an orthonormal basis
//! gives a finite Hermitian matrix Ĥ_n whose unitary evolution exp(-itĤ_n)
//! approximates the exact dynamics — or converges to the dynamics of a
//! *different* self-adjoint realization of the Laplacian, depending on the
//! boundary behaviour of the basis. This crate builds those truncations in
//! several bases (exact eigenbases, normalized associated Legendre
//! polynomials, and Gram-Schmidt-augmented Legendre families), propagates
//! them in arbitrary precision, and measures the approximation error against
//! the exact reference dynamics.
//!
//! Modules:
//! - [`numerics`]: arbitrary-precision scalars, Hermitian eigendecomposition,
//!   adaptive Gauss-Legendre quadrature (the oracle for every closed form).
//! - [`legendre`]: exact Legendre / associated Legendre polynomials and their
//!   endpoint derivatives.
//! - [`basis`]: orthonormal basis families and exact expansion coefficients
//!   of reference eigenfunctions.
//! - [`operator`]: truncated Hamiltonians and Galerkin-projector residuals.
//! - [`evolution`]: unitary propagators and exact special-time maps.
//! - [`experiment`]: the approximation-error functional and convergence
//!   sweeps.

pub mod basis;
pub mod error;
pub mod evolution;
pub mod experiment;
pub mod legendre;
pub mod numerics;
pub mod operator;

pub use basis::{
    AugmentKind, BasisElement, BasisSpec, BoundaryCondition, SpectralData, StateCoefficients,
};
pub use error::Error;
pub use evolution::{Propagator, TimeValue};
pub use experiment::{ExperimentSpec, SweepRow};
pub use numerics::{BigComplex, BigReal, HermitianMatrix, PrecisionContext};
pub use operator::TruncatedHamiltonian;
