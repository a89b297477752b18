//! The first-order operators d₀, d₁ on form-valued fields, the second-order
//! operator Δ = d₀d₁ (a quaternionic analogue of dd^c), the quaternionic
//! Hessian, and the quaternionic Monge-Ampère operator.
//!
//! Everything here comes in two independent routes:
//!
//! * a *symbolic* route on polynomial coefficients ([`d_op`],
//!   [`baston_poly`]) that is exact on integer data, and
//! * a *pointwise* route through second-order jets ([`d_point`],
//!   [`baston_point`], [`quaternionic_hessian`]) that works for any
//!   [`ScalarField`] backend.
//!
//! The two routes share only the coefficient table of ∇
//! ([`nabla_coefficients`]), so their agreement is a meaningful check, and
//! the test suites treat it as one.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::exterior::{matrix_to_2form, merge_indices, omega_ratio, Form};
use crate::fields::{nabla, nabla_coefficients, Alpha, Polynomial, ScalarField};
use crate::fields::fundamental_expr;
use crate::moore::mixed_discriminant;
use crate::quaternion::{QMatrix, Quaternion};

/// A differential form on ℂ^{2n} whose coefficients are polynomials on
/// ℝ^{4n}: Σ_I f_I(x) ω^I over strictly increasing index tuples I.
///
/// Zero coefficients are pruned, so equality of fields is equality of the
/// stored maps.
#[derive(Clone, Debug, PartialEq)]
pub struct FormField {
    n: usize,
    grade: usize,
    terms: BTreeMap<Vec<u8>, Polynomial>,
}

impl FormField {
    /// The zero field of the given grade on ℂ^{2n}.  Grades past 2n are
    /// representable only as zero, which keeps [`d_op`] and
    /// [`FormField::wedge`] total: applying them at the top grade yields
    /// the (empty) field one grade up.
    pub fn zero(n: usize, grade: usize) -> FormField {
        FormField { n, grade, terms: BTreeMap::new() }
    }

    /// A grade-0 field carrying a single scalar polynomial on ℝ^{4n}.
    pub fn scalar(n: usize, p: Polynomial) -> FormField {
        assert_eq!(p.nvars(), 4 * n, "coefficient must live on ℝ^(4n)");
        let mut f = FormField::zero(n, 0);
        f.insert_add(Vec::new(), p);
        f
    }

    /// Builds a field from (index tuple, coefficient) pairs, validating
    /// every tuple and coefficient dimension.
    pub fn from_terms(
        n: usize,
        grade: usize,
        terms: impl IntoIterator<Item = (Vec<u8>, Polynomial)>,
    ) -> Result<FormField> {
        let mut f = FormField::zero(n, grade);
        for (idx, p) in terms {
            if idx.len() != grade {
                return Err(Error::Shape("field term length must equal the grade"));
            }
            if !idx.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::Shape("field term indices must be strictly increasing"));
            }
            if idx.iter().any(|&a| (a as usize) >= 2 * n) {
                return Err(Error::Shape("field term index out of range (must be < 2n)"));
            }
            if p.nvars() != 4 * n {
                return Err(Error::Shape("field coefficient must live on ℝ^(4n)"));
            }
            f.insert_add(idx, p);
        }
        Ok(f)
    }

    /// The largest coefficient magnitude across all terms and monomials
    /// (zero for the zero field).
    pub fn max_coeff_abs(&self) -> f64 {
        let zero = Polynomial::zero(4 * self.n);
        self.terms
            .values()
            .map(|p| p.max_abs_diff(&zero))
            .fold(0.0, f64::max)
    }

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

    /// Iterates over (index tuple, coefficient) pairs in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &Polynomial)> {
        self.terms.iter().map(|(k, p)| (k.as_slice(), p))
    }

    /// The polynomial coefficient on ω^I (zero when absent).
    pub fn coeff(&self, idx: &[u8]) -> Polynomial {
        self.terms.get(idx).cloned().unwrap_or_else(|| Polynomial::zero(4 * self.n))
    }

    fn insert_add(&mut self, idx: Vec<u8>, p: Polynomial) {
        use alloc::collections::btree_map::Entry;
        if p.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            Entry::Vacant(slot) => {
                slot.insert(p);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&p);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    slot.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, rhs: &FormField) -> FormField {
        assert_eq!(self.n, rhs.n, "half-dimensions differ");
        assert_eq!(self.grade, rhs.grade, "grades differ");
        let mut out = self.clone();
        for (idx, p) in rhs.terms.iter() {
            out.insert_add(idx.clone(), p.clone());
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> FormField {
        let mut out = FormField::zero(self.n, self.grade);
        for (idx, p) in self.terms.iter() {
            out.insert_add(idx.clone(), p.scale(s));
        }
        out
    }

    /// Exterior product; coefficients multiply as polynomials.
    pub fn wedge(&self, rhs: &FormField) -> FormField {
        assert_eq!(self.n, rhs.n, "half-dimensions differ");
        let mut out = FormField::zero(self.n, self.grade + rhs.grade);
        for (ia, pa) in self.terms.iter() {
            for (ib, pb) in rhs.terms.iter() {
                if let Some((idx, sign)) = merge_indices(ia, ib) {
                    out.insert_add(idx, pa.mul(pb).scale(Complex64::new(sign, 0.0)));
                }
            }
        }
        out
    }

    /// Evaluates every coefficient at a point, yielding a numeric form.
    pub fn eval(&self, x: &[f64]) -> Form {
        let mut out = Form::zero(self.n, self.grade);
        for (idx, p) in self.terms.iter() {
            let c = p.eval(x);
            if c != Complex64::ZERO {
                out = out.add(&Form::basis(self.n, idx).scale(c));
            }
        }
        out
    }
}

/// The operator d_α: grade p ↦ grade p+1, F = Σ f_I ω^I ↦
/// Σ_{A,I} (∇_{Aα} f_I) ω^A ∧ ω^I.
pub fn d_op(alpha: Alpha, f: &FormField) -> FormField {
    let n = f.half_dim();
    let mut out = FormField::zero(n, f.grade() + 1);
    for (idx, p) in f.terms() {
        for a in 0..2 * n as u8 {
            let g = nabla(a as usize, alpha, p);
            if g.is_zero() {
                continue;
            }
            if let Some((merged, sign)) = merge_indices(&[a], idx) {
                out.insert_add(merged, g.scale(Complex64::new(sign, 0.0)));
            }
        }
    }
    out
}

/// True when d_α F vanishes identically.
pub fn is_closed(alpha: Alpha, f: &FormField) -> bool {
    d_op(alpha, f).is_zero()
}

/// The Baston operator Δu = d₀d₁u on a scalar polynomial over ℝ^{4n}.
///
/// The result is the grade-2 field whose stored coefficient on A < B is
/// ∇_{A0′}∇_{B1′}u − ∇_{B0′}∇_{A1′}u, i.e. twice the skew matrix entry
/// Δ_{AB}u of the pointwise route.
pub fn baston_poly(u: &Polynomial) -> Result<FormField> {
    if u.nvars() % 4 != 0 || u.nvars() == 0 {
        return Err(Error::Shape("potential must live on ℝ^(4n)"));
    }
    let n = u.nvars() / 4;
    let scalar = FormField::scalar(n, u.clone());
    Ok(d_op(Alpha::Zero, &d_op(Alpha::One, &scalar)))
}

fn check_point(u: &ScalarField, x: &[f64]) -> Result<usize> {
    let nv = u.nvars();
    if nv % 4 != 0 || nv == 0 {
        return Err(Error::Shape("field must live on ℝ^(4n)"));
    }
    if x.len() != nv {
        return Err(Error::Shape("point dimension does not match the field"));
    }
    Ok(nv / 4)
}

/// The matrix (Δ_{AB}u)(x), Δ_{AB} = ½(∇_{A0′}∇_{B1′} − ∇_{B0′}∇_{A1′}),
/// assembled from the real Hessian of `u` at `x` through the coefficient
/// table of ∇.  Exactly skew by construction.
pub fn baston_matrix(u: &ScalarField, x: &[f64]) -> Result<CMatrix> {
    let n = check_point(u, x)?;
    let jet = u.jet(x)?;
    // second-order coefficient ∇_{Aα}∇_{Bβ}u(x) as a bilinear form in the
    // real Hessian
    let nn = |a: usize, alpha: Alpha, b: usize, beta: Alpha| -> Complex64 {
        let ca = nabla_coefficients(n, a, alpha);
        let cb = nabla_coefficients(n, b, beta);
        let mut acc = Complex64::ZERO;
        for (jt, ct) in ca {
            for (js, cs) in cb {
                acc += ct * cs * jet.hess(jt, js);
            }
        }
        acc
    };
    let mut d = CMatrix::zeros(2 * n, 2 * n);
    for a in 0..2 * n {
        for b in (a + 1)..2 * n {
            let v = (nn(a, Alpha::Zero, b, Alpha::One) - nn(b, Alpha::Zero, a, Alpha::One)) * 0.5;
            d.set(a, b, v);
            d.set(b, a, -v);
        }
    }
    Ok(d)
}

/// The Baston 2-form (Δu)(x) = Σ_{A,B} Δ_{AB}u ω^A∧ω^B at a point.
///
/// Agrees with evaluating [`baston_poly`] when `u` is polynomial.
pub fn baston_point(u: &ScalarField, x: &[f64]) -> Result<Form> {
    let d = baston_matrix(u, x)?;
    // the assembly above is exactly skew, so the dictionary cannot reject it
    matrix_to_2form(&d, 0.0)
}

/// The 1-form (d_α u)(x) = Σ_A (∇_{Aα}u)(x) ω^A at a point, from the jet
/// gradient.
pub fn d_point(alpha: Alpha, u: &ScalarField, x: &[f64]) -> Result<Form> {
    let n = check_point(u, x)?;
    let jet = u.jet(x)?;
    let mut out = Form::zero(n, 1);
    for a in 0..2 * n {
        let mut c = Complex64::ZERO;
        for (j, coeff) in nabla_coefficients(n, a, alpha) {
            c += coeff * jet.grad[j];
        }
        if c != Complex64::ZERO {
            out = out.add(&Form::basis(n, &[a as u8]).scale(c));
        }
    }
    Ok(out)
}

/// The quaternionic Hessian (∂²u/∂q̄_l∂q_k)(x) = 2(Δ_{l,n+k}u + Δ_{lk}u·j).
///
/// For a C² real potential this is hyperhermitian; the assembly introduces
/// only rounding-level asymmetry and is deliberately *not* symmetrized, so
/// `hermitian_residual` reports the honest figure.
pub fn quaternionic_hessian(u: &ScalarField, x: &[f64]) -> Result<QMatrix> {
    let d = baston_matrix(u, x)?;
    let n = d.rows() / 2;
    Ok(QMatrix::from_fn(n, n, |l, k| {
        Quaternion::from_complex_pair(d.get(l, n + k) * 2.0, d.get(l, k) * 2.0)
    }))
}

/// The mixed quaternionic Monge-Ampère operator: the mixed discriminant of
/// the n quaternionic Hessians at `x`.  With all fields equal this is
/// det(∂²u/∂q̄∂q)(x).
///
/// `tol` is the structural tolerance passed through to the hyperhermitian
/// check and eigenvalue pairing; it must cover the rounding in the Hessian
/// assembly (the default 1e-9 is ample for O(1) data).
pub fn ma_mixed(us: &[ScalarField], x: &[f64], tol: f64) -> Result<f64> {
    if us.is_empty() {
        return Err(Error::Shape("at least one potential is required"));
    }
    let n = us.len();
    for u in us {
        if u.nvars() != 4 * n {
            return Err(Error::Shape("potential count must equal the quaternionic dimension"));
        }
    }
    let hs = us
        .iter()
        .map(|u| quaternionic_hessian(u, x))
        .collect::<Result<Vec<_>>>()?;
    mixed_discriminant(&hs, tol)
}

/// Evaluates both sides of the regularized fundamental-solution identity
/// at a point: for u_ε = −(‖q‖² + ε)⁻¹,
///
/// ```text
/// (Δu_ε)ⁿ = 8ⁿ n! ε (‖q‖² + ε)^{−(2n+1)} Ω_{2n}
/// ```
///
/// Returns (lhs, rhs) where lhs is the coefficient of (Δu_ε)ⁿ against
/// Ω_{2n}.  As ε → 0 the right side concentrates at the origin, which is
/// the quaternionic Monge-Ampère measure of the (unregularized)
/// fundamental solution.
pub fn fundamental_check(n: usize, eps: f64, x: &[f64]) -> Result<(f64, f64)> {
    if x.len() != 4 * n {
        return Err(Error::Shape("point dimension must be 4n"));
    }
    let u = ScalarField::expr(4 * n, fundamental_expr(n, eps))?;
    let du = baston_point(&u, x)?;
    let mut top = Form::scalar(n, Complex64::ONE);
    for _ in 0..n {
        top = top.wedge(&du);
    }
    // the coefficient is real up to rounding for a real potential
    let lhs = omega_ratio(&top)?.re;

    let r2: f64 = x.iter().map(|v| v * v).sum();
    let mut rhs = eps;
    for _ in 0..n {
        rhs *= 8.0;
    }
    for k in 1..=n {
        rhs *= k as f64;
    }
    for _ in 0..2 * n + 1 {
        rhs /= r2 + eps;
    }
    Ok((lhs, rhs))
}
