//! The error type shared by every fallible operation in the crate.

use alloc::vec::Vec;

/// Errors reported by structural predicates and numerical routines.
///
/// Residual-carrying variants always report the measured max-norm residual
/// together with the tolerance it was compared against, so callers can tell
/// a near miss from a gross violation.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Error {
    /// Operand dimensions do not fit the operation.
    #[error("shape error: {0}")]
    Shape(&'static str),

    /// A complex matrix is not in the range of the embedding τ:
    /// `J·conj(M) = M·J` fails.
    #[error("matrix is not in the range of τ: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    Structure { residual: f64, tol: f64 },

    /// A quaternion matrix fails `𝓜_{jk} = conj(𝓜_{kj})`.
    #[error("matrix is not hyperhermitian: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotHyperhermitian { residual: f64, tol: f64 },

    /// A complex matrix fails `M^t = −M`.
    #[error("matrix is not skew-symmetric: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotSkew { residual: f64, tol: f64 },

    /// A form is not fixed by the real structure ρ(j).
    #[error("form is not real: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotReal { residual: f64, tol: f64 },

    /// A form has the wrong grade for the operation.
    #[error("grade error: expected {expected} grade, got {got}")]
    Grade { expected: &'static str, got: usize },

    /// The iterative eigensolver did not reach its off-diagonal threshold.
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal {off_diagonal:.3e})")]
    Convergence { off_diagonal: f64, sweeps: usize },

    /// Eigenvalues that must occur in j-conjugate pairs failed to pair up.
    #[error("eigenvalues do not pair up: gap {gap:.3e} exceeds {tol:.3e}")]
    Pairing { gap: f64, tol: f64 },

    /// A matrix required to be invertible is numerically singular.
    #[error("matrix is numerically singular: |det| = {det_abs:.3e}")]
    Singular { det_abs: f64 },

    /// A field expression hit a zero denominator during evaluation.
    #[error("division by zero while evaluating a field at {at:?}")]
    DivisionByZero { at: Vec<f64> },
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
