use thiserror::Error;

/// Errors surfaced by the numerical laboratory.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The iterative eigensolver did not reach the requested tolerance within
    /// its sweep budget. Usually means the tolerance is tighter than the
    /// working precision supports.
    #[error("eigensolver did not converge: {0}")]
    NonConvergence(String),

    /// Adaptive quadrature hit its subdivision limit before reaching the
    /// requested tolerance.
    #[error("quadrature budget exceeded: {0}")]
    BudgetExceeded(String),

    /// Gram-Schmidt produced a residual with vanishing norm; the candidate
    /// function is numerically inside the span of the previous ones.
    #[error("degenerate basis at element {index}: residual norm {residual}")]
    DegenerateBasis { index: usize, residual: String },

    /// No closed-form expansion exists for this (basis, boundary condition,
    /// mode) combination.
    #[error("unsupported basis/state pair: {0}")]
    UnsupportedPair(String),

    /// The truncated Hamiltonian has an eigenvalue too close to zero to be
    /// inverted at the working precision.
    #[error("singular truncation: |lambda_min| = {0}")]
    SingularTruncation(String),

    /// State and operator disagree on basis or truncation size.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The exact special-time map is only available at t = 4/pi for the
    /// supported boundary conditions.
    #[error("no exact map for this (boundary condition, time) pair")]
    UnsupportedTime,

    /// Malformed request (bad precision, empty grids, unwritable paths, ...).
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
