//! Sparse exterior algebra over ∧•ℂ^{2n} with the antilinear real structure
//! ρ(j), and the dictionary between hyperhermitian matrices and real
//! 2-forms.
//!
//! A 2-form ω = Σ_{A,B} M_{AB} ω^A∧ω^B with skew coefficient matrix M is
//! *real* when ρ(j)ω = ω, which happens exactly when `J·conj(M) = M·J` —
//! that is, when M = τ(𝓜)·J for a hyperhermitian 𝓜.  A quaternionic
//! change of basis then brings every real 2-form to the normal form
//! 2Σ ν_l ω^l∧ω^{n+l}, and reading off the ν's decides strong positivity.
//! Top-grade coefficients against Ω_{2n} define the n-linear functional Δₙ,
//! which polarizes the Moore determinant: Δₙ(ω_𝓜,…) = 2ⁿn!·det(𝓜₁,…,𝓜ₙ).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::cmatrix::{j_matrix, CMatrix};
use crate::error::{Error, Result};
use crate::moore::{diagonalize_hyperhermitian, SpectralData};
use crate::quaternion::{QMatrix, Quaternion};
use crate::tau::{tau, tau_inverse};

/// A sparse exterior form on ℂ^{2n}: a map from strictly increasing index
/// tuples (the basis monomials ω^{a₁}∧⋯∧ω^{a_k}) to complex coefficients.
///
/// The grade is carried explicitly so that the zero form of each grade is
/// representable; exact-zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    n: usize,
    grade: usize,
    terms: BTreeMap<Vec<u8>, Complex64>,
}

impl Form {
    /// The zero form of the given grade on ℂ^{2n}.
    pub fn zero(n: usize, grade: usize) -> Form {
        Form { n, grade, terms: BTreeMap::new() }
    }

    /// A grade-0 form (a constant).
    pub fn scalar(n: usize, c: Complex64) -> Form {
        let mut f = Form::zero(n, 0);
        f.insert_add(Vec::new(), c);
        f
    }

    /// The basis monomial ω^{a₁}∧⋯∧ω^{a_k} with coefficient 1.
    ///
    /// Panics unless the indices are strictly increasing and below 2n; this
    /// constructor is for code that owns its index tuples, not for
    /// validating external input (see [`Form::from_terms`]).
    pub fn basis(n: usize, idx: &[u8]) -> Form {
        assert!(
            idx.windows(2).all(|w| w[0] < w[1]) && idx.iter().all(|&a| (a as usize) < 2 * n),
            "basis indices must be strictly increasing and < 2n"
        );
        let mut f = Form::zero(n, idx.len());
        f.insert_add(idx.to_vec(), Complex64::ONE);
        f
    }

    /// Builds a form from a term list, validating every index tuple.
    pub fn from_terms(
        n: usize,
        grade: usize,
        terms: impl IntoIterator<Item = (Vec<u8>, Complex64)>,
    ) -> Result<Form> {
        let mut f = Form::zero(n, grade);
        for (idx, c) in terms {
            if idx.len() != grade {
                return Err(Error::Shape("form term length must equal the grade"));
            }
            if !idx.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::Shape("form term indices must be strictly increasing"));
            }
            if idx.iter().any(|&a| (a as usize) >= 2 * n) {
                return Err(Error::Shape("form term index out of range (must be < 2n)"));
            }
            f.insert_add(idx, c);
        }
        Ok(f)
    }

    /// Half-dimension n of the underlying space ℂ^{2n}.
    #[inline]
    pub fn half_dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates over stored (index tuple, coefficient) pairs in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u8], Complex64)> {
        self.terms.iter().map(|(k, &c)| (k.as_slice(), c))
    }

    /// Coefficient on one basis monomial (zero when absent).
    pub fn coeff(&self, idx: &[u8]) -> Complex64 {
        self.terms.get(idx).copied().unwrap_or(Complex64::ZERO)
    }

    fn insert_add(&mut self, idx: Vec<u8>, c: Complex64) {
        use alloc::collections::btree_map::Entry;
        if c == Complex64::ZERO {
            return;
        }
        match self.terms.entry(idx) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = *slot.get() + c;
                if sum == Complex64::ZERO {
                    slot.remove();
                } else {
                    slot.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, rhs: &Form) -> Form {
        assert_eq!(self.n, rhs.n, "forms live on different spaces");
        assert_eq!(self.grade, rhs.grade, "forms have different grades");
        let mut out = self.clone();
        for (k, c) in rhs.terms.iter() {
            out.insert_add(k.clone(), *c);
        }
        out
    }

    pub fn sub(&self, rhs: &Form) -> Form {
        self.add(&rhs.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Form {
        let mut out = Form::zero(self.n, self.grade);
        for (k, c) in self.terms.iter() {
            out.insert_add(k.clone(), c * s);
        }
        out
    }

    /// Exterior product.  Grades add; repeated indices annihilate, so
    /// products past the top grade come out as zero forms.
    pub fn wedge(&self, rhs: &Form) -> Form {
        assert_eq!(self.n, rhs.n, "forms live on different spaces");
        let mut out = Form::zero(self.n, self.grade + rhs.grade);
        for (ka, ca) in self.terms.iter() {
            for (kb, cb) in rhs.terms.iter() {
                if let Some((key, sign)) = merge_indices(ka, kb) {
                    out.insert_add(key, ca * cb * sign);
                }
            }
        }
        out
    }

    /// Largest coefficient magnitude, as max(|re|, |im|).
    pub fn max_abs(&self) -> f64 {
        self.terms
            .values()
            .fold(0.0, |m, c| m.max(c.re.abs()).max(c.im.abs()))
    }

    /// Max-norm distance between coefficient lists (union of keys).
    pub fn max_abs_diff(&self, rhs: &Form) -> f64 {
        let mut m = 0.0f64;
        for (k, c) in self.terms.iter() {
            let d = c - rhs.coeff(k);
            m = m.max(d.re.abs()).max(d.im.abs());
        }
        for (k, c) in rhs.terms.iter() {
            if !self.terms.contains_key(k) {
                m = m.max(c.re.abs()).max(c.im.abs());
            }
        }
        m
    }
}

/// Merges two strictly increasing index tuples, returning the merged tuple
/// and the sign of the sorting permutation, or `None` when an index
/// repeats.  Taking an element of `b` while i elements of `a` remain costs
/// i transpositions.
pub(crate) fn merge_indices(a: &[u8], b: &[u8]) -> Option<(Vec<u8>, f64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut sign = 1.0f64;
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            if (a.len() - i) % 2 == 1 {
                sign = -sign;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, sign))
}

/// The antilinear real structure on forms: conjugate every coefficient and
/// substitute ω^l ↦ ω^{n+l}, ω^{n+l} ↦ −ω^l in each factor.
///
/// ρ(j)² = (−1)^k on grade k, and the fixed even-grade forms are the *real*
/// forms; see [`is_real_form`].
pub fn rho_j(f: &Form) -> Form {
    let n = f.half_dim() as u8;
    let mut out = Form::zero(f.half_dim(), f.grade());
    for (key, c) in f.terms() {
        let mut sign = 1.0f64;
        let mut mapped: Vec<u8> = key
            .iter()
            .map(|&a| {
                if a < n {
                    a + n
                } else {
                    sign = -sign;
                    a - n
                }
            })
            .collect();
        sign *= sort_with_parity(&mut mapped);
        out.insert_add(mapped, c.conj() * sign);
    }
    out
}

/// Insertion sort returning the permutation sign; inputs have no repeats.
fn sort_with_parity(idx: &mut [u8]) -> f64 {
    let mut sign = 1.0f64;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

/// Max-norm of ρ(j)F − F, the distance from being a real form.
pub fn reality_residual(f: &Form) -> f64 {
    rho_j(f).max_abs_diff(f)
}

/// Whether an even-grade form satisfies ρ(j)F = F within `tol`.
pub fn is_real_form(f: &Form, tol: f64) -> Result<bool> {
    if f.grade() % 2 != 0 {
        return Err(Error::Grade { expected: "even", got: f.grade() });
    }
    Ok(reality_residual(f) <= tol)
}

/// The 2-form Σ_{A,B} M_{AB} ω^A∧ω^B of a skew matrix; the stored
/// coefficient on the increasing pair (A,B) is `M_AB − M_BA = 2·M_AB`.
pub fn matrix_to_2form(m: &CMatrix, tol: f64) -> Result<Form> {
    if m.rows() != m.cols() || m.rows() % 2 != 0 {
        return Err(Error::Shape("2-form coefficient matrix must be square 2n×2n"));
    }
    let residual = m.skew_residual()?;
    if residual > tol {
        return Err(Error::NotSkew { residual, tol });
    }
    let n = m.rows() / 2;
    let mut f = Form::zero(n, 2);
    for a in 0..m.rows() {
        for b in (a + 1)..m.cols() {
            f.insert_add(
                [a as u8, b as u8].to_vec(),
                m.get(a, b) - m.get(b, a),
            );
        }
    }
    Ok(f)
}

/// The unique skew matrix M with F = Σ M_{AB} ω^A∧ω^B; inverse of
/// [`matrix_to_2form`].
pub fn form_to_matrix(f: &Form) -> Result<CMatrix> {
    if f.grade() != 2 {
        return Err(Error::Grade { expected: "2", got: f.grade() });
    }
    let mut m = CMatrix::zeros(2 * f.half_dim(), 2 * f.half_dim());
    for (key, c) in f.terms() {
        let (a, b) = (key[0] as usize, key[1] as usize);
        let half = c * 0.5;
        m.set(a, b, half);
        m.set(b, a, -half);
    }
    Ok(m)
}

/// The real 2-form ω_𝓜 associated with a hyperhermitian matrix:
/// `matrix_to_2form(τ(𝓜)·J)`.
pub fn hh_to_2form(m: &QMatrix, tol: f64) -> Result<Form> {
    let residual = m.hermitian_residual()?;
    if residual > tol {
        return Err(Error::NotHyperhermitian { residual, tol });
    }
    // skewness of τ(𝓜)·J deviates exactly by the hermitian residual of 𝓜
    matrix_to_2form(&tau(m).mul(&j_matrix(m.rows())), residual.max(tol))
}

/// The standard real 2-form βₙ = Σ_l ω^l∧ω^{n+l}.
pub fn beta_n(n: usize) -> Form {
    let mut f = Form::zero(n, 2);
    for l in 0..n {
        f.insert_add([l as u8, (n + l) as u8].to_vec(), Complex64::ONE);
    }
    f
}

/// The volume form Ω_{2n} = (ω⁰∧ω^n)∧(ω¹∧ω^{n+1})∧⋯, computed by the wedge
/// machinery so the sign on the sorted key is never hand-coded.
pub fn omega_2n(n: usize) -> Form {
    let mut f = Form::scalar(n, Complex64::ONE);
    for l in 0..n {
        f = f.wedge(&Form::basis(n, &[l as u8, (n + l) as u8]));
    }
    f
}

/// The scalar c with F = c·Ω_{2n}, for a top-grade form.
pub fn omega_ratio(f: &Form) -> Result<Complex64> {
    let n = f.half_dim();
    if f.grade() != 2 * n {
        return Err(Error::Grade { expected: "top (2n)", got: f.grade() });
    }
    let key: Vec<u8> = (0..(2 * n) as u8).collect();
    Ok(f.coeff(&key) / omega_2n(n).coeff(&key))
}

/// The n-linear top-form functional Δₙ: the scalar with
/// ω₁∧⋯∧ωₙ = Δₙ·Ω_{2n}, where ωᵢ is the 2-form of the skew matrix M⁽ⁱ⁾.
///
/// Each matrix must be skew and its 2-form real within `tol`.  For
/// Mᵢ = τ(𝓜ᵢ)·J this equals 2ⁿ·n!·det(𝓜₁,…,𝓜ₙ), the mixed discriminant
/// scaled by the polarization constants.
pub fn delta_n(ms: &[CMatrix], tol: f64) -> Result<Complex64> {
    let n = ms.len();
    if n == 0 {
        return Err(Error::Shape("Δₙ needs at least one matrix"));
    }
    let mut acc = Form::scalar(n, Complex64::ONE);
    for m in ms {
        if m.rows() != 2 * n || m.cols() != 2 * n {
            return Err(Error::Shape("Δₙ of n matrices needs each to be 2n×2n"));
        }
        let f = matrix_to_2form(m, tol)?;
        let residual = reality_residual(&f);
        if residual > tol {
            return Err(Error::NotReal { residual, tol });
        }
        acc = acc.wedge(&f);
    }
    omega_ratio(&acc)
}

/// Entrywise a + bi + cj + dk ↦ a − bi + cj − dk (that is, 𝓜 ↦ −j𝓜j), a
/// *-automorphism; applied to a diagonalizing unitary it produces the
/// unitary of the 2-form normal form.
fn conj_components(m: &QMatrix) -> QMatrix {
    QMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        let q = m.get(r, c);
        Quaternion::new(q.w, -q.x, q.y, -q.z)
    })
}

/// Brings a real 2-form to the normal form 2Σ ν_l ω̃^l∧ω̃^{n+l}.
///
/// Recovers the skew matrix M of the form, reads off the hyperhermitian
/// 𝓜 = tau_inverse(−M·J), diagonalizes it as 𝓑*𝓜𝓑 = diag(ν), and returns
/// 𝓔 = −j𝓑j together with ν: then `τ(𝓔)^t·M·τ(𝓔)` is the antidiagonal
/// matrix `[[0, diag ν],[−diag ν, 0]]` within 10·tol (measure it with
/// [`normal_form_residual`]).  ν is descending, and its signs decide strong
/// positivity.
pub fn normalize_real_2form(f: &Form, tol: f64) -> Result<SpectralData> {
    if f.grade() != 2 {
        return Err(Error::Grade { expected: "2", got: f.grade() });
    }
    let residual = reality_residual(f);
    if residual > tol {
        return Err(Error::NotReal { residual, tol });
    }
    let m = form_to_matrix(f)?;
    // reality of the form bounds both structural residuals below by
    // residual/2, so these conversions cannot fail past this point
    let j = j_matrix(f.half_dim());
    let hh = tau_inverse(&m.mul(&j).neg(), tol)?;
    let spectral = diagonalize_hyperhermitian(&hh, tol)?;
    Ok(SpectralData { e: conj_components(&spectral.e), nu: spectral.nu })
}

/// Max-norm distance of τ(𝓔)^t·M·τ(𝓔) from the normal form
/// `[[0, diag ν],[−diag ν, 0]]`, for a normalization produced by
/// [`normalize_real_2form`].
pub fn normal_form_residual(f: &Form, s: &SpectralData) -> Result<f64> {
    let m = form_to_matrix(f)?;
    let te = tau(&s.e);
    let got = te.transpose().mul(&m).mul(&te);
    let n = f.half_dim();
    let target = CMatrix::from_fn(2 * n, 2 * n, |r, c| {
        if c == r + n {
            Complex64::new(s.nu[r], 0.0)
        } else if r == c + n {
            Complex64::new(-s.nu[c], 0.0)
        } else {
            Complex64::ZERO
        }
    });
    Ok(got.max_abs_diff(&target))
}

/// Strong positivity test for real 2-forms: all ν_l ≥ −tol with at least
/// one ν_l > tol.
pub fn is_strongly_positive_2form(f: &Form, tol: f64) -> Result<bool> {
    let s = normalize_real_2form(f, tol)?;
    Ok(s.nu.iter().all(|&v| v >= -tol) && s.nu.iter().any(|&v| v > tol))
}

/// The ℂ-linear action of a matrix on forms: ω^A ↦ Σ_B M_{AB}·ω^B on
/// grade 1, extended multiplicatively to all grades.
///
/// `M` may be rectangular (2m×2k, acting from forms on ℂ^{2m} to forms on
/// ℂ^{2k}); actions compose contravariantly:
/// `act(A·B, F) = act(B, act(A, F))`.
pub fn act_matrix_on_form(m: &CMatrix, f: &Form) -> Result<Form> {
    if m.rows() != 2 * f.half_dim() || m.cols() % 2 != 0 {
        return Err(Error::Shape("action needs a 2m×2k matrix on a form over ℂ^{2m}"));
    }
    let out_n = m.cols() / 2;
    // image 1-forms of each basis index, computed once
    let images: Vec<Form> = (0..m.rows())
        .map(|a| {
            let mut img = Form::zero(out_n, 1);
            for b in 0..m.cols() {
                img.insert_add([b as u8].to_vec(), m.get(a, b));
            }
            img
        })
        .collect();
    let mut out = Form::zero(out_n, f.grade());
    for (key, c) in f.terms() {
        // wedging a zero intermediate is free, so no early exit is needed
        let mut term = Form::scalar(out_n, c);
        for &a in key {
            term = term.wedge(&images[a as usize]);
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Pulls a form on ℂ^{2m} back along the right-linear map ℍ^k → ℍ^m with
/// matrix A (m×k): each ω̃^p is replaced by Σ_j τ(A)_{pj}·ω^j.
pub fn pullback(a: &QMatrix, f: &Form) -> Result<Form> {
    if a.rows() != f.half_dim() {
        return Err(Error::Shape("pullback needs a form over ℂ^{2m} and an m×k matrix"));
    }
    act_matrix_on_form(&tau(a), f)
}

/// The elementary strongly positive 2k-form of k right-ℍ-linear row maps
/// η_j: ℍⁿ → ℍ: the wedge of the pullbacks η_j*(ω̃⁰)∧η_j*(ω̃¹).
pub fn elementary_strongly_positive(etas: &[QMatrix], n: usize) -> Result<Form> {
    if etas.is_empty() || etas.len() > n {
        return Err(Error::Shape("need between 1 and n row maps"));
    }
    let mut acc = Form::scalar(n, Complex64::ONE);
    for eta in etas {
        if eta.rows() != 1 || eta.cols() != n {
            return Err(Error::Shape("each row map must be a 1×n quaternion matrix"));
        }
        let t = tau(eta); // 2×2n: rows are the two pulled-back covectors
        for p in 0..2 {
            let mut img = Form::zero(n, 1);
            for b in 0..2 * n {
                img.insert_add([b as u8].to_vec(), t.get(p, b));
            }
            acc = acc.wedge(&img);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    #[test]
    fn wedge_basics() {
        let f01 = Form::basis(2, &[0, 1]);
        let f23 = Form::basis(2, &[2, 3]);
        let top = f01.wedge(&f23);
        assert_eq!(top.coeff(&[0, 1, 2, 3]), Complex64::ONE);

        // repeated index annihilates
        let w0 = Form::basis(2, &[0]);
        assert!(w0.wedge(&w0).is_zero());

        // 1-forms anticommute
        let w1 = Form::basis(2, &[1]);
        assert_eq!(w0.wedge(&w1), w1.wedge(&w0).scale(c(-1.0, 0.0)));
    }

    #[test]
    fn omega_and_beta() {
        // n=1: Ω₂ = ω⁰∧ω¹
        assert_eq!(omega_2n(1).coeff(&[0, 1]), Complex64::ONE);
        // n=2: Ω₄ = ω⁰∧ω²∧ω¹∧ω³ = −ω⁰∧ω¹∧ω²∧ω³
        assert_eq!(omega_2n(2).coeff(&[0, 1, 2, 3]), c(-1.0, 0.0));

        // βₙⁿ = n!·Ω_{2n}
        for n in 1..=4 {
            let mut p = Form::scalar(n, Complex64::ONE);
            for _ in 0..n {
                p = p.wedge(&beta_n(n));
            }
            let mut fact = 1.0;
            for k in 2..=n {
                fact *= k as f64;
            }
            assert_eq!(p, omega_2n(n).scale(c(fact, 0.0)));
        }
    }

    #[test]
    fn rho_j_action_and_reality() {
        // n=1: ρ(ω⁰) = ω¹, ρ(ω¹) = −ω⁰
        let w0 = Form::basis(1, &[0]);
        let w1 = Form::basis(1, &[1]);
        assert_eq!(rho_j(&w0), w1);
        assert_eq!(rho_j(&w1), w0.scale(c(-1.0, 0.0)));

        // antilinearity on grade 2: ρ(c·ω⁰∧ω¹) = conj(c)·ω⁰∧ω¹
        let f = Form::basis(1, &[0, 1]).scale(c(2.0, 3.0));
        assert_eq!(rho_j(&f), Form::basis(1, &[0, 1]).scale(c(2.0, -3.0)));
        assert_eq!(rho_j(&rho_j(&f)), f);

        for n in 1..=3 {
            assert_eq!(rho_j(&beta_n(n)), beta_n(n));
            assert!(is_real_form(&beta_n(n), 0.0).unwrap());
            assert!(is_real_form(&omega_2n(n), 0.0).unwrap());
        }
        assert!(!is_real_form(&Form::basis(1, &[0, 1]).scale(c(0.0, 1.0)), 1e-9).unwrap());
        assert!(matches!(
            is_real_form(&Form::basis(1, &[0]), 1e-9),
            Err(Error::Grade { .. })
        ));
    }

    #[test]
    fn matrix_form_dictionary() {
        // J (n=1) ↦ 2·ω⁰∧ω¹
        let f = matrix_to_2form(&j_matrix(1), 0.0).unwrap();
        assert_eq!(f, Form::basis(1, &[0, 1]).scale(c(2.0, 0.0)));
        assert_eq!(form_to_matrix(&f).unwrap(), j_matrix(1));

        // round-trip on a fixed skew matrix is exact
        let mut m = CMatrix::zeros(4, 4);
        for a in 0..4 {
            for b in (a + 1)..4 {
                let v = c(0.25 * (a as f64 + 1.0), -(b as f64));
                m.set(a, b, v);
                m.set(b, a, -v);
            }
        }
        assert_eq!(form_to_matrix(&matrix_to_2form(&m, 0.0).unwrap()).unwrap(), m);

        // non-skew input is rejected
        assert!(matches!(
            matrix_to_2form(&CMatrix::identity(2), 1e-9),
            Err(Error::NotSkew { .. })
        ));
    }

    #[test]
    fn hyperhermitian_forms() {
        // I_n ↦ 2βₙ, and diagonal ν ↦ 2Σ ν_l ω^l∧ω^{n+l}
        for n in 1..=3 {
            let f = hh_to_2form(&QMatrix::identity(n), 1e-9).unwrap();
            assert_eq!(f, beta_n(n).scale(c(2.0, 0.0)));
            assert!(is_real_form(&f, 0.0).unwrap());
        }
        let d = QMatrix::from_fn(2, 2, |r, col| {
            if r == col { Quaternion::real([4.0, -3.0][r]) } else { Quaternion::ZERO }
        });
        let f = hh_to_2form(&d, 1e-9).unwrap();
        assert_eq!(f.coeff(&[0, 2]), c(8.0, 0.0));
        assert_eq!(f.coeff(&[1, 3]), c(-6.0, 0.0));

        // generic hyperhermitian gives a real form
        let m = QMatrix::from_vec(
            2,
            2,
            vec![q(1.0, 0.0, 0.0, 0.0), q(0.5, 1.0, -2.0, 0.25), q(0.5, -1.0, 2.0, -0.25), q(-2.0, 0.0, 0.0, 0.0)],
        )
        .unwrap();
        assert!(is_real_form(&hh_to_2form(&m, 1e-9).unwrap(), 1e-12).unwrap());
    }

    #[test]
    fn delta_n_oracles() {
        // n=1, M = J: 2ω⁰∧ω¹ = 2Ω₂
        let d = delta_n(&[j_matrix(1)], 1e-9).unwrap();
        assert_eq!(d, c(2.0, 0.0));

        // n matrices J/2 (the form βₙ per slot): Δₙ = n!
        for n in 1..=3 {
            let half_j = j_matrix(n).scale(c(0.5, 0.0));
            let ms = vec![half_j; n];
            let d = delta_n(&ms, 1e-9).unwrap();
            assert!((d.re - (1..=n).product::<usize>() as f64).abs() <= 1e-12);
            assert!(d.im.abs() <= 1e-14);
        }

        // single-matrix Thm-1.2 case: Δ₂(ω_𝓜, ω_𝓜) = 2²·2!·moore_det(𝓜)
        let m = QMatrix::from_fn(2, 2, |r, col| {
            if r == col { Quaternion::real([2.0, 3.0][r]) } else { Quaternion::ZERO }
        });
        let tm = tau(&m).mul(&j_matrix(2));
        let d = delta_n(&[tm.clone(), tm], 1e-9).unwrap();
        assert!((d.re - 4.0 * 2.0 * 6.0).abs() <= 1e-12);
    }

    #[test]
    fn normalization() {
        // F = 2βₙ: ν = (1,…,1)
        for n in 1..=3 {
            let f = beta_n(n).scale(c(2.0, 0.0));
            let s = normalize_real_2form(&f, 1e-9).unwrap();
            for v in &s.nu {
                assert!((v - 1.0).abs() <= 1e-12);
            }
            assert!(normal_form_residual(&f, &s).unwrap() <= 1e-12);
        }

        // F = 2c·ω⁰∧ω¹ (n=1): ν = (c)
        let f = Form::basis(1, &[0, 1]).scale(c(-3.0, 0.0));
        let s = normalize_real_2form(&f, 1e-9).unwrap();
        assert!((s.nu[0] + 1.5).abs() <= 1e-13);

        // route consistency: hh_to_2form then normalize reproduces the
        // quaternionic eigenvalues
        let m = QMatrix::from_vec(
            2,
            2,
            vec![
                q(2.0, 0.0, 0.0, 0.0),
                q(0.0, 1.0, 1.0, 0.0),
                q(0.0, -1.0, -1.0, 0.0),
                q(2.0, 0.0, 0.0, 0.0),
            ],
        )
        .unwrap();
        let f = hh_to_2form(&m, 1e-9).unwrap();
        let s = normalize_real_2form(&f, 1e-9).unwrap();
        let direct = diagonalize_hyperhermitian(&m, 1e-9).unwrap();
        for (a, b) in s.nu.iter().zip(&direct.nu) {
            assert!((a - b).abs() <= 1e-12);
        }
        assert!(normal_form_residual(&f, &s).unwrap() <= 1e-11);

        // a non-real form is rejected
        let bad = Form::basis(1, &[0, 1]).scale(c(0.0, 2.0));
        assert!(matches!(
            normalize_real_2form(&bad, 1e-9),
            Err(Error::NotReal { .. })
        ));
    }

    #[test]
    fn strong_positivity() {
        for n in 1..=3 {
            assert!(is_strongly_positive_2form(&beta_n(n).scale(c(2.0, 0.0)), 1e-9).unwrap());
        }
        assert!(!is_strongly_positive_2form(&Form::zero(2, 2), 1e-9).unwrap());

        let indef = QMatrix::from_fn(2, 2, |r, col| {
            if r == col { Quaternion::real([1.0, -1.0][r]) } else { Quaternion::ZERO }
        });
        let f = hh_to_2form(&indef, 1e-9).unwrap();
        assert!(!is_strongly_positive_2form(&f, 1e-9).unwrap());
    }

    #[test]
    fn action_and_pullback() {
        let f = beta_n(2);
        assert_eq!(act_matrix_on_form(&CMatrix::identity(4), &f).unwrap(), f);

        // τ of a quaternionic unitary fixes βₙ and Ω_{2n}
        let u = QMatrix::from_fn(1, 1, |_, _| Quaternion::J);
        let tu = tau(&u);
        assert_eq!(act_matrix_on_form(&tu, &beta_n(1)).unwrap(), beta_n(1));
        assert_eq!(act_matrix_on_form(&tu, &omega_2n(1)).unwrap(), omega_2n(1));

        // contravariant composition: act(AB, F) = act(B, act(A, F))
        let a = CMatrix::from_fn(2, 2, |r, col| c((r + 2 * col) as f64, 1.0));
        let b = CMatrix::from_fn(2, 2, |r, col| c(1.0, (r as f64) - (col as f64)));
        let f1 = Form::basis(1, &[0, 1]).scale(c(1.0, -2.0));
        let lhs = act_matrix_on_form(&a.mul(&b), &f1).unwrap();
        let rhs = act_matrix_on_form(&b, &act_matrix_on_form(&a, &f1).unwrap()).unwrap();
        assert!(lhs.max_abs_diff(&rhs) <= 1e-12);

        // coordinate projection q ↦ q₀ at n=2 pulls the area form of ℂ²
        // back to ω⁰∧ω²
        let eta = QMatrix::from_vec(1, 2, vec![Quaternion::ONE, Quaternion::ZERO]).unwrap();
        let pulled = pullback(&eta, &omega_2n(1)).unwrap();
        assert_eq!(pulled, Form::basis(2, &[0, 2]));
    }

    #[test]
    fn elementary_positive_forms() {
        // first coordinate projection at n=2
        let eta0 = QMatrix::from_vec(1, 2, vec![Quaternion::ONE, Quaternion::ZERO]).unwrap();
        let f = elementary_strongly_positive(&[eta0.clone()], 2).unwrap();
        assert_eq!(f, Form::basis(2, &[0, 2]));

        // all projections reproduce Ω_{2n}
        let eta1 = QMatrix::from_vec(1, 2, vec![Quaternion::ZERO, Quaternion::ONE]).unwrap();
        let all = elementary_strongly_positive(&[eta0.clone(), eta1], 2).unwrap();
        assert_eq!(all, omega_2n(2));

        // real scaling of a row map scales the form by λ²
        let scaled = elementary_strongly_positive(&[eta0.scale(3.0)], 2).unwrap();
        assert_eq!(scaled, Form::basis(2, &[0, 2]).scale(c(9.0, 0.0)));
    }
}
