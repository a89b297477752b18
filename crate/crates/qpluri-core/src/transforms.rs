//! Quaternionic linear changes of variables q ↦ 𝓤q, the induced pullback
//! of scalar fields, the chain rule for the ∇ operators, and the
//! equivariance of d₀, d₁, and Δ.
//!
//! For 𝓤 ∈ ℍ^{p×m} the chain rule reads
//!
//! ```text
//! ∇_{Aα}(u∘𝓤)|_q = Σ_B  conj(τ(𝓤))_{BA} · (∇_{Bα}u)|_{𝓤q}
//! ```
//!
//! so the 1-forms d_α u — and by multiplicativity the 2-forms Δu — pull
//! back through the coefficient action of conj(τ(𝓤)) on the exterior
//! algebra.  [`chain_rule_check`] and [`invariance_check`] evaluate both
//! sides of these identities at a point and report the max-norm residual.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::baston::{baston_point, d_point};
use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::exterior::act_matrix_on_form;
use crate::fields::{jet2_eval, nabla_coefficients, Alpha, FieldExpr, ScalarField};
use crate::quaternion::{QMatrix, Quaternion};
use crate::rmatrix::RMatrix;
use crate::tau::{real_rep, tau};

/// The real 4p×4m matrix of q ↦ 𝓤q acting on x-ordered coordinates
/// (x₀, x₁, x₂, x₃ the components of q₀, and so on), obtained from the
/// component-major real representation by an index shuffle.
pub fn x_order_real_rep(u: &QMatrix) -> RMatrix {
    let (p, m) = (u.rows(), u.cols());
    let block = real_rep(u);
    RMatrix::from_fn(4 * p, 4 * m, |rr, cc| {
        let (r, beta) = (rr / 4, rr % 4);
        let (c, betap) = (cc / 4, cc % 4);
        block.get(beta * p + r, betap * m + c)
    })
}

/// Applies q ↦ 𝓤q to an x-ordered point of ℝ^{4m}, by quaternion
/// arithmetic (no real representation involved).
pub fn apply_to_point(u: &QMatrix, x: &[f64]) -> Vec<f64> {
    let m = u.cols();
    assert_eq!(x.len(), 4 * m, "point dimension must be 4·cols");
    let q: Vec<Quaternion> = (0..m)
        .map(|l| Quaternion::new(x[4 * l], x[4 * l + 1], x[4 * l + 2], x[4 * l + 3]))
        .collect();
    let uq = u.mul_vec(&q);
    let mut out = Vec::with_capacity(4 * u.rows());
    for v in uq {
        out.extend_from_slice(&[v.w, v.x, v.y, v.z]);
    }
    out
}

/// The pullback (u∘𝓤) of an expression on ℝ^{4p} under 𝓤 ∈ ℍ^{p×m}, as an
/// expression on ℝ^{4m}: every coordinate of the argument is substituted
/// by the matching real-linear combination.
pub fn pullback_field(u: &QMatrix, e: &FieldExpr) -> FieldExpr {
    let a = x_order_real_rep(u);
    let images: Vec<FieldExpr> = (0..a.rows())
        .map(|j| {
            let mut acc: Option<FieldExpr> = None;
            for mm in 0..a.cols() {
                let w = a.get(j, mm);
                if w == 0.0 {
                    continue;
                }
                let term = if w == 1.0 {
                    FieldExpr::Coord(mm)
                } else {
                    FieldExpr::Mul(Box::new(FieldExpr::Const(w)), Box::new(FieldExpr::Coord(mm)))
                };
                acc = Some(match acc {
                    None => term,
                    Some(s) => FieldExpr::Add(Box::new(s), Box::new(term)),
                });
            }
            acc.unwrap_or(FieldExpr::Const(0.0))
        })
        .collect();
    e.substitute_coords(&images)
}

/// The coefficient matrix conj(τ(𝓤)) through which 1-forms (and, acting
/// multiplicatively, all forms) pull back under q ↦ 𝓤q.
///
/// Errors with [`Error::Singular`] when τ(𝓤) is numerically singular
/// (|det| ≤ 1e-9), since a non-invertible change of variables has no
/// well-defined basis action on the target side.
pub fn basis_change(u: &QMatrix) -> Result<CMatrix> {
    if u.rows() != u.cols() {
        return Err(Error::Shape("basis change requires a square matrix"));
    }
    let t = tau(u);
    let det = t.det()?;
    let det_abs = det.norm();
    if det_abs <= 1e-9 {
        return Err(Error::Singular { det_abs });
    }
    Ok(t.conj())
}

/// Evaluates both sides of the chain rule for ∇_{Aα} at a point, for both
/// values of α, and returns the largest entrywise residual.
///
/// The left side differentiates the substituted expression u∘𝓤 directly;
/// the right side contracts the gradient of u at 𝓤x against conj(τ(𝓤)).
/// The two sides share no code beyond the ∇ coefficient table.
pub fn chain_rule_check(u: &QMatrix, e: &FieldExpr, x: &[f64]) -> Result<f64> {
    let (p, m) = (u.rows(), u.cols());
    if x.len() != 4 * m {
        return Err(Error::Shape("point dimension must be 4·cols"));
    }
    if e.max_coord().is_some_and(|c| c >= 4 * p) {
        return Err(Error::Shape("expression uses a coordinate index ≥ 4·rows"));
    }
    let pulled = pullback_field(u, e);
    let jet_pull = jet2_eval(&pulled, x)?;
    let ux = apply_to_point(u, x);
    let jet_e = jet2_eval(e, &ux)?;
    let t = tau(u);

    let mut worst = 0.0f64;
    for alpha in [Alpha::Zero, Alpha::One] {
        // ∇̃_{Bα}u at 𝓤x, straight from the jet gradient
        let upstream: Vec<_> = (0..2 * p)
            .map(|b| {
                nabla_coefficients(p, b, alpha)
                    .iter()
                    .map(|&(j, c)| c * jet_e.grad[j])
                    .sum::<Complex64>()
            })
            .collect();
        for a in 0..2 * m {
            let lhs = nabla_coefficients(m, a, alpha)
                .iter()
                .map(|&(j, c)| c * jet_pull.grad[j])
                .sum::<Complex64>();
            let mut rhs = Complex64::ZERO;
            for (b, g) in upstream.iter().enumerate() {
                rhs += t.get(b, a).conj() * g;
            }
            let d = lhs - rhs;
            worst = worst.max(d.re.abs()).max(d.im.abs());
        }
    }
    Ok(worst)
}

/// Which operator [`invariance_check`] exercises.
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum OperatorKind {
    D0,
    D1,
    Baston,
}

/// Residual of the equivariance identity for d₀, d₁, or Δ under an
/// invertible 𝓤 ∈ ℍ^{n×n}: compares the operator applied to u∘𝓤 at x
/// against the conj(τ(𝓤))-action on the operator applied to u at 𝓤x.
pub fn invariance_check(
    u: &QMatrix,
    e: &FieldExpr,
    x: &[f64],
    which: OperatorKind,
) -> Result<f64> {
    let change = basis_change(u)?;
    let n = u.rows();
    if x.len() != 4 * n {
        return Err(Error::Shape("point dimension must be 4n"));
    }
    let pulled = ScalarField::expr(4 * n, pullback_field(u, e))?;
    let upstream = ScalarField::expr(4 * n, e.clone())?;
    let ux = apply_to_point(u, x);

    let (lhs, at_ux) = match which {
        OperatorKind::D0 => (
            d_point(Alpha::Zero, &pulled, x)?,
            d_point(Alpha::Zero, &upstream, &ux)?,
        ),
        OperatorKind::D1 => (
            d_point(Alpha::One, &pulled, x)?,
            d_point(Alpha::One, &upstream, &ux)?,
        ),
        OperatorKind::Baston => (baston_point(&pulled, x)?, baston_point(&upstream, &ux)?),
    };
    let rhs = act_matrix_on_form(&change, &at_ux)?;
    Ok(lhs.max_abs_diff(&rhs))
}
