use thiserror::Error;

/// Errors reported by library operations.
///
/// Numerical routines distinguish *non-convergence* (a self-validation step
/// failed, the value cannot be trusted at the requested tolerance) from
/// *invalid input* (the operation is not defined for the arguments).
#[derive(Debug, Error)]
pub enum Error {
    /// A type term had both a holomorphic and an antiholomorphic power.
    #[error("type term must have p = 0 or q = 0 (got p = {p}, q = {q})")]
    MixedTypeTerm { p: usize, q: usize },

    /// Two terms of a plane function share the same (p, q) signature.
    #[error("duplicate term for (p, q) = ({p}, {q})")]
    DuplicateTerm { p: usize, q: usize },

    /// Point-doubling self-validation failed for a quadrature.
    #[error("quadrature did not converge: doubling residual {residual:e} exceeds tolerance {tolerance:e}")]
    NonConvergence { residual: f64, tolerance: f64 },

    /// A grid operation needs more points than were supplied.
    #[error("grid too small: need at least {need} points per axis, got {got}")]
    GridTooSmall { need: usize, got: usize },

    /// Series truncation order is too small for the requested projection.
    #[error("truncation order q_max = {q_max} must be at least k = {k}")]
    TruncationTooSmall { k: usize, q_max: usize },

    /// The requested number of lines is outside the supported exact range.
    #[error("unsupported line count N = {n}: {reason}")]
    UnsupportedLineCount { n: usize, reason: &'static str },

    /// A verification case was invoked with an inconsistent parameter.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Malformed serialized input (plane functions, series, grids).
    #[error("bad input: {0}")]
    BadInput(String),
}
