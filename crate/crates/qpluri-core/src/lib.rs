//! Linear algebra over the quaternions ℍ, oriented toward pluripotential
//! theory.
//!
//! The crate provides, bottom to top:
//!
//! * [`quaternion`] — quaternion scalars and dense quaternion matrices;
//! * [`tau`] — the embedding τ: ℍ^{p×m} → ℂ^{2p×2m}, its inverse, the
//!   symplectic structure matrix J, and the real 4p×4m representation;
//! * [`eig`] — a cyclic Jacobi eigensolver for complex Hermitian matrices;
//! * [`moore`] — structure-preserving diagonalization of hyperhermitian
//!   matrices, the Moore determinant, and mixed discriminants;
//! * [`exterior`] — the exterior algebra of ℂ^{2n} with the antilinear real
//!   structure ρ(j), the dictionary between hyperhermitian matrices and real
//!   2-forms, normalization and strong positivity of 2-forms, and pullbacks;
//! * [`fields`] — exact polynomial and closed-form scalar fields on
//!   ℝ^{4n} ≅ ℍⁿ, the first-order operators ∇_{Aα}, and second-order jets;
//! * [`baston`] — the operators d₀/d₁ on form-valued fields, the Baston
//!   operator Δ = d₀d₁, the quaternionic Hessian, and the (mixed)
//!   quaternionic Monge-Ampère operator;
//! * [`transforms`] — quaternionic linear changes of variables, the chain
//!   rule for ∇, and the invariance of d₀/d₁/Δ.
//!
//! The crate is `no_std` (with `alloc`); float math comes from `libm`.
//! A JSON/CLI front end lives in the companion crate `qpluri-cli`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod baston;
pub mod cmatrix;
pub mod eig;
pub mod error;
pub mod exterior;
pub mod fields;
pub mod moore;
pub mod quaternion;
pub mod rmatrix;
pub mod tau;
pub mod transforms;

pub use baston::FormField;
pub use cmatrix::{j_matrix, CMatrix};
pub use error::{Error, Result};
pub use exterior::Form;
pub use fields::{Alpha, FieldExpr, Jet2, Polynomial, ScalarField};
pub use moore::SpectralData;
pub use quaternion::{QMatrix, Quaternion};
pub use rmatrix::RMatrix;
pub use tau::RealRep;

/// Default structural tolerance: absolute, in the max-norm.
///
/// Adequate for O(1)-magnitude data; every predicate and factorization also
/// accepts an explicit tolerance for callers working at a different scale.
pub const DEFAULT_TOL: f64 = 1e-9;
