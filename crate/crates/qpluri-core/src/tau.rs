//! The embedding τ of quaternion matrices into complex matrices, its
//! inverse, and the real 4p×4m representation.
//!
//! Writing a quaternion matrix 𝓜 = a + b·j with complex p×m blocks a, b,
//!
//! ```text
//! τ(𝓜) = [[ a,       −b      ],
//!         [ conj(b),  conj(a)]]        (2p×2m complex)
//! ```
//!
//! τ is an algebra homomorphism, intertwines adjoints
//! (τ(𝓜*) = τ(𝓜)*), and its range is exactly the set of complex matrices
//! with `J·conj(M) = M·J`, where `J` is the structure matrix from
//! [`j_matrix`](crate::cmatrix::j_matrix).  Hyperhermitian matrices map to
//! Hermitian ones and quaternionic unitaries to symplectic unitaries.

use alloc::vec::Vec;

use crate::cmatrix::{j_matrix, CMatrix};
use crate::error::{Error, Result};
use crate::quaternion::{QMatrix, Quaternion};
use crate::rmatrix::RMatrix;

/// The complex 2p×2m representation of a p×m quaternion matrix.
pub fn tau(m: &QMatrix) -> CMatrix {
    let (p, q) = (m.rows(), m.cols());
    CMatrix::from_fn(2 * p, 2 * q, |r, c| {
        let (a, b) = m.get(r % p, c % q).complex_pair();
        match (r < p, c < q) {
            (true, true) => a,
            (true, false) => -b,
            (false, true) => b.conj(),
            (false, false) => a.conj(),
        }
    })
}

/// Max-norm residual of the range characterization `J·conj(M) = M·J`.
///
/// Zero exactly on the image of [`tau`]; errors on odd dimensions.
pub fn tau_residual(m: &CMatrix) -> Result<f64> {
    if m.rows() % 2 != 0 || m.cols() % 2 != 0 {
        return Err(Error::Shape("τ-image test requires even dimensions"));
    }
    let lhs = j_matrix(m.rows() / 2).mul(&m.conj());
    let rhs = m.mul(&j_matrix(m.cols() / 2));
    Ok(lhs.max_abs_diff(&rhs))
}

/// Whether `m` lies in the image of [`tau`] up to `tol` (max-norm).
pub fn is_tau_image(m: &CMatrix, tol: f64) -> Result<bool> {
    Ok(tau_residual(m)? <= tol)
}

/// Recovers the quaternion matrix from its complex representation.
///
/// For `M` in the image of τ the top-left block is `a` and the top-right
/// block is `−b`, so the preimage is `a − (top-right)·j`.  The sign
/// convention is fixed by the round trip `tau_inverse(tau(𝓜)) = 𝓜`.
///
/// Errors with [`Error::Structure`] when `‖J·conj(M) − M·J‖_max > tol`,
/// i.e. when `M` is not (close to) a τ-image.
pub fn tau_inverse(m: &CMatrix, tol: f64) -> Result<QMatrix> {
    if m.rows() != m.cols() {
        return Err(Error::Shape("τ-preimage requires a square matrix"));
    }
    let residual = tau_residual(m)?;
    if residual > tol {
        return Err(Error::Structure { residual, tol });
    }
    let n = m.rows() / 2;
    Ok(QMatrix::from_fn(n, n, |r, c| {
        Quaternion::from_complex_pair(m.get(r, c), -m.get(r, n + c))
    }))
}

/// Max-norm residual of the symplectic-unitary conditions
/// `M*M = I` and `M·J·M^t = J`.
pub fn complex_symplectic_residual(m: &CMatrix) -> Result<f64> {
    if m.rows() != m.cols() || m.rows() % 2 != 0 {
        return Err(Error::Shape(
            "symplectic-unitarity test requires a square matrix of even dimension",
        ));
    }
    let j = j_matrix(m.rows() / 2);
    let symplectic = m.mul(&j).mul(&m.transpose()).max_abs_diff(&j);
    Ok(m.unitary_residual()?.max(symplectic))
}

/// Whether `m` is simultaneously unitary and symplectic, the image under
/// [`tau`] of the quaternionic unitary group.
pub fn is_complex_symplectic_unitary(m: &CMatrix, tol: f64) -> Result<bool> {
    Ok(complex_symplectic_residual(m)? <= tol)
}

/// The real 4p×4m representation matrix; see [`real_rep`].
pub type RealRep = RMatrix;

/// Real component index and sign of block (β, β′) of the real
/// representation:
///
/// ```text
/// U^ℝ = [[ U₀, −U₁, −U₂, −U₃],
///        [ U₁,  U₀, −U₃,  U₂],
///        [ U₂,  U₃,  U₀, −U₁],
///        [ U₃, −U₂,  U₁,  U₀]]
/// ```
///
/// where U_γ is the p×m matrix of γ-th real components.
const REAL_BLOCK_COMPONENT: [[usize; 4]; 4] =
    [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
const REAL_BLOCK_SIGN: [[f64; 4]; 4] = [
    [1.0, -1.0, -1.0, -1.0],
    [1.0, 1.0, -1.0, 1.0],
    [1.0, 1.0, 1.0, -1.0],
    [1.0, -1.0, 1.0, 1.0],
];

/// The real 4p×4m matrix `U^ℝ` acting on stacked component vectors so that
/// `(U·q)^ℝ = U^ℝ·q^ℝ`; like τ, a homomorphism: `(UV)^ℝ = U^ℝ·V^ℝ`.
pub fn real_rep(u: &QMatrix) -> RealRep {
    let (p, m) = (u.rows(), u.cols());
    RMatrix::from_fn(4 * p, 4 * m, |rr, cc| {
        let (beta, r) = (rr / p, rr % p);
        let (betap, c) = (cc / m, cc % m);
        REAL_BLOCK_SIGN[beta][betap] * u.get(r, c).component(REAL_BLOCK_COMPONENT[beta][betap])
    })
}

/// The stacked component vector `q^ℝ = (x⁽⁰⁾; x⁽¹⁾; x⁽²⁾; x⁽³⁾)` of a
/// quaternion vector: first all scalar parts, then all i-, j-, k-parts.
pub fn real_vec(q: &[Quaternion]) -> Vec<f64> {
    let mut out = Vec::with_capacity(4 * q.len());
    for beta in 0..4 {
        for entry in q {
            out.push(entry.component(beta));
        }
    }
    out
}
