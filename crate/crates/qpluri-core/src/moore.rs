//! Structure-preserving diagonalization of hyperhermitian matrices, the
//! Moore determinant, and the mixed discriminant.
//!
//! A hyperhermitian matrix 𝓜 (𝓜 = 𝓜*) can be diagonalized by a
//! quaternionic unitary: 𝓔*𝓜𝓔 = diag(ν₀,…,ν_{n−1}) with real ν.  The
//! route here goes through the complex side: τ(𝓜) is Hermitian and
//! commutes with the antilinear map ρ(v) = J·conj(v), so its spectrum
//! consists of n two-dimensional eigenspaces, each ρ-invariant.  Picking
//! one unit eigenvector per pair and completing it with −ρ(v) assembles a
//! complex matrix that is exactly a τ-image, and pulling it back through
//! [`tau_inverse`] yields 𝓔.
//!
//! The Moore determinant is the product ∏ν_l; it squares to the complex
//! determinant of τ(𝓜), agrees with the ordinary determinant on complex
//! Hermitian matrices, and polarizes to the mixed discriminant.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::cmatrix::CMatrix;
use crate::eig::eigh;
use crate::error::{Error, Result};
use crate::quaternion::QMatrix;
use crate::tau::{tau, tau_inverse, tau_residual};

/// Eigenvalues of τ(𝓜) whose relative spread stays below this width are
/// treated as one degenerate cluster when pairing eigenvectors.  The
/// eigensolver splits true pairs by at most ~1e-13 and honest spectral gaps
/// in O(1)-scaled data sit many orders above, so the width is uncritical
/// across its whole plausible range.
const CLUSTER_WIDTH: f64 = 1e-11;

/// A quaternionic unitary paired with real spectral values.
///
/// Produced by [`diagonalize_hyperhermitian`], where `e*·𝓜·e = diag(nu)`,
/// and by 2-form normalization, where τ(e) brings the form's coefficient
/// matrix to its antidiagonal normal form with entries `nu`.
#[derive(Clone, Debug)]
pub struct SpectralData {
    /// Quaternionic unitary change of basis (columns are the new basis).
    pub e: QMatrix,
    /// Real spectral values, descending; each appears once per quaternionic
    /// dimension (i.e. once per conjugate pair of τ(𝓜)).
    pub nu: Vec<f64>,
}

/// Diagonalizes a hyperhermitian matrix by a quaternionic unitary.
///
/// Returns 𝓔 and ν with `‖𝓔*𝓜𝓔 − diag(ν)‖_max ≤ 10·tol` and ν sorted
/// descending.  Errors with [`Error::NotHyperhermitian`] when the input
/// fails its structural precondition at `tol`, and propagates
/// [`Error::Convergence`] from the eigensolver.
pub fn diagonalize_hyperhermitian(m: &QMatrix, tol: f64) -> Result<SpectralData> {
    let residual = m.hermitian_residual()?;
    if residual > tol {
        return Err(Error::NotHyperhermitian { residual, tol });
    }
    let n = m.rows();
    let t = tau(m);
    let eig = eigh(&t)?;

    // group the descending eigenvalues into degenerate clusters
    let scale = 1.0f64.max(eig.values.first().map_or(0.0, |v| v.abs()))
        .max(eig.values.last().map_or(0.0, |v| v.abs()));
    let width = CLUSTER_WIDTH * scale;

    let mut nu = Vec::with_capacity(n);
    let mut v_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut start = 0;
    while start < 2 * n {
        let mut end = start + 1;
        while end < 2 * n && eig.values[end - 1] - eig.values[end] <= width {
            end += 1;
        }
        if (end - start) % 2 != 0 {
            // a J-commuting Hermitian matrix has even multiplicities; an odd
            // cluster means the spectrum failed to pair at this resolution
            let gap = if end < 2 * n { eig.values[end - 1] - eig.values[end] } else { width };
            return Err(Error::Pairing { gap, tol: width });
        }
        let cluster: Vec<Vec<Complex64>> = (start..end)
            .map(|k| (0..2 * n).map(|r| eig.vectors.get(r, k)).collect())
            .collect();
        for (i, v) in pair_cluster(cluster)?.into_iter().enumerate() {
            nu.push((eig.values[start + 2 * i] + eig.values[start + 2 * i + 1]) / 2.0);
            v_cols.push(v);
        }
        start = end;
    }

    // Q = [v₀ … v_{n−1} | −ρ(v₀) … −ρ(v_{n−1})] is exactly a τ-image
    let w_cols: Vec<Vec<Complex64>> = v_cols.iter().map(|v| minus_rho(v)).collect();
    let q = CMatrix::from_fn(2 * n, 2 * n, |r, c| {
        if c < n { v_cols[c][r] } else { w_cols[c - n][r] }
    });
    debug_assert_eq!(tau_residual(&q), Ok(0.0));
    let e = tau_inverse(&q, tol)?;
    Ok(SpectralData { e, nu })
}

/// The antilinear partner map with flipped sign: `−ρ(v) = −J·conj(v)`.
///
/// Completing each eigenvector v with −ρ(v) (rather than +ρ(v)) is what
/// makes the assembled eigenvector matrix satisfy `J·conj(Q) = Q·J`
/// exactly — entry by entry the two sides are the same floating-point
/// values.
fn minus_rho(v: &[Complex64]) -> Vec<Complex64> {
    let n = v.len() / 2;
    let mut w = Vec::with_capacity(2 * n);
    for l in 0..n {
        w.push(-v[n + l].conj());
    }
    for l in 0..n {
        w.push(v[l].conj());
    }
    w
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(v: &[Complex64]) -> f64 {
    libm::sqrt(v.iter().map(|x| x.norm_sqr()).sum::<f64>())
}

fn normalize(v: &mut [Complex64]) {
    let s = Complex64::new(1.0 / norm(v), 0.0);
    for x in v.iter_mut() {
        *x *= s;
    }
}

/// Subtracts the component of `v` along the unit vector `u`.
fn project_out(v: &mut [Complex64], u: &[Complex64]) {
    let c = dot(u, v);
    for (x, y) in v.iter_mut().zip(u) {
        *x -= c * y;
    }
}

/// Greedily splits a degenerate ρ-invariant eigenspace (orthonormal basis
/// of even size 2m) into m quaternionic lines, returning one unit vector
/// per line; the partner −ρ(v) of each is implicit.
///
/// Each round takes a vector v, removes span{v, ρ(v)} from the rest, and
/// rebuilds an orthonormal basis by pivoted Gram–Schmidt; exactly one
/// basis vector is absorbed per round, so the pivot norms stay O(1) and the
/// 1e-6 floor below is purely defensive.
fn pair_cluster(mut basis: Vec<Vec<Complex64>>) -> Result<Vec<Vec<Complex64>>> {
    let mut picked = Vec::with_capacity(basis.len() / 2);
    while !basis.is_empty() {
        let mut v = basis.remove(0);
        normalize(&mut v);
        let w = minus_rho(&v);
        for u in basis.iter_mut() {
            project_out(u, &v);
            project_out(u, &w);
        }
        let want = basis.len().saturating_sub(1);
        basis = orthonormalize(basis, want)?;
        picked.push(v);
    }
    Ok(picked)
}

/// Pivoted modified Gram–Schmidt, keeping the `want` best-conditioned
/// vectors and absorbing the rest.
fn orthonormalize(mut pool: Vec<Vec<Complex64>>, want: usize) -> Result<Vec<Vec<Complex64>>> {
    let mut kept: Vec<Vec<Complex64>> = Vec::with_capacity(want);
    while kept.len() < want {
        let (best, best_norm) = pool
            .iter()
            .enumerate()
            .map(|(i, v)| (i, norm(v)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("pool exhausted before reaching the requested rank");
        if best_norm < 1e-6 {
            return Err(Error::Pairing { gap: best_norm, tol: 1e-6 });
        }
        let mut v = pool.swap_remove(best);
        for u in &kept {
            project_out(&mut v, u);
        }
        normalize(&mut v);
        for u in pool.iter_mut() {
            project_out(u, &v);
        }
        kept.push(v);
    }
    Ok(kept)
}

/// The Moore determinant of a hyperhermitian matrix: the product of its
/// quaternionic eigenvalues ∏ν_l.
///
/// Squares to `det_ℂ(τ(𝓜))` and agrees with the ordinary determinant on
/// complex Hermitian input.
pub fn moore_det(m: &QMatrix, tol: f64) -> Result<f64> {
    let residual = m.hermitian_residual()?;
    if residual > tol {
        return Err(Error::NotHyperhermitian { residual, tol });
    }
    // only the paired eigenvalues are needed, not the unitary 𝓔
    let pairs = eigenvalue_pairs(&tau(m), tol.max(residual))?;
    Ok(pairs.iter().product())
}

/// The mixed discriminant det(𝓜₁,…,𝓜ₙ) of n hyperhermitian n×n matrices:
/// the coefficient of λ₁⋯λₙ in `moore_det(λ₁𝓜₁ + ⋯ + λₙ𝓜ₙ)` divided
/// by n!, computed by inclusion–exclusion polarization over the 2ⁿ−1
/// nonempty subsets.
///
/// Symmetric in its arguments and linear in each slot; with all arguments
/// equal it reduces to the Moore determinant.  Cost grows as 2ⁿ, which is
/// perfectly fine at the intended desk scale (n ≤ 8 or so).
pub fn mixed_discriminant(ms: &[QMatrix], tol: f64) -> Result<f64> {
    let n = ms.len();
    if n == 0 {
        return Err(Error::Shape("mixed discriminant needs at least one matrix"));
    }
    if n > 20 {
        return Err(Error::Shape("mixed discriminant limited to 20 matrices (2ⁿ cost)"));
    }
    for m in ms {
        if m.rows() != n || m.cols() != n {
            return Err(Error::Shape("mixed discriminant needs n matrices of size n×n"));
        }
        let residual = m.hermitian_residual()?;
        if residual > tol {
            return Err(Error::NotHyperhermitian { residual, tol });
        }
    }
    let mut acc = 0.0f64;
    for mask in 1u32..(1 << n) {
        let mut sum = QMatrix::zeros(n, n);
        let mut count = 0;
        for (i, m) in ms.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = sum.add(m);
                count += 1;
            }
        }
        // a sum of k matrices each hyperhermitian within tol drifts by up
        // to k·tol, so the inner check scales accordingly
        let d = moore_det(&sum, tol * count as f64)?;
        let sign = if (n - count) % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * d;
    }
    let mut factorial = 1.0f64;
    for k in 2..=n {
        factorial *= k as f64;
    }
    Ok(acc / factorial)
}

/// Extracts one eigenvalue per conjugate pair of a Hermitian, J-commuting
/// complex matrix (the image class of τ on hyperhermitian matrices),
/// descending.
///
/// Eigenvalues of such a matrix occur with even multiplicity; consecutive
/// sorted values are averaged pairwise.  Errors with [`Error::Structure`]
/// when the input is not Hermitian and J-commuting within `tol`, and with
/// [`Error::Pairing`] when a sorted pair differs by more than
/// `10³·tol·max(1,|λ|)` — which a structurally valid input cannot produce,
/// so it flags inconsistent tolerances rather than bad luck.
pub fn eigenvalue_pairs(h: &CMatrix, tol: f64) -> Result<Vec<f64>> {
    let structural = h.hermitian_residual()?.max(tau_residual(h)?);
    if structural > tol {
        return Err(Error::Structure { residual: structural, tol });
    }
    let eig = eigh(h)?;
    let n = h.rows() / 2;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let (a, b) = (eig.values[2 * k], eig.values[2 * k + 1]);
        let gap = a - b;
        let allowed = 1e3 * tol * 1.0f64.max(a.abs());
        if gap > allowed {
            return Err(Error::Pairing { gap, tol: allowed });
        }
        out.push((a + b) / 2.0);
    }
    Ok(out)
}
