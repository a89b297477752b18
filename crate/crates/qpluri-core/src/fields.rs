//! Scalar fields on ℝ^{4n} ≅ ℍⁿ in two backends, the first-order operators
//! ∇_{Aα}, and the z^{Aα} coordinates.
//!
//! Coordinates are ordered x₀,…,x_{4n−1} with q_l = x_{4l} + x_{4l+1}·i +
//! x_{4l+2}·j + x_{4l+3}·k.  The backends:
//!
//! * [`Polynomial`] — exact multivariate polynomials with complex
//!   coefficients, closed under the ∇ operators; all operator identities
//!   hold with *zero* floating-point error on integer data.
//! * [`FieldExpr`] — closed-form expression trees (the fundamental solution
//!   −1/(‖q‖²+ε) is rational, not polynomial), differentiated to second
//!   order by truncated Taylor arithmetic ([`Jet2`]).
//!
//! The 2n×2 operator table (α ∈ {0′, 1′}):
//!
//! ```text
//! ∇_{l0′}     = ∂_{4l}   + i∂_{4l+1}     ∇_{l1′}     = −∂_{4l+2} − i∂_{4l+3}
//! ∇_{(n+l)0′} = ∂_{4l+2} − i∂_{4l+3}     ∇_{(n+l)1′} = ∂_{4l}   − i∂_{4l+1}
//! ```
//!
//! and the dual coordinate table, with ∇_{Aα} z^{Bβ} = 2δ_A^B δ_α^β:
//!
//! ```text
//! z^{l0′}     = x_{4l}   − i·x_{4l+1}    z^{l1′}     = −x_{4l+2} + i·x_{4l+3}
//! z^{(n+l)0′} = x_{4l+2} + i·x_{4l+3}    z^{(n+l)1′} = x_{4l}   + i·x_{4l+1}
//! ```

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// The primed two-spinor index α distinguishing the two operator families
/// ∇_{A0′} and ∇_{A1′} (and dually the coordinates z^{A0′}, z^{A1′}).
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum Alpha {
    /// α = 0′
    Zero,
    /// α = 1′
    One,
}

// ---------------------------------------------------------------------------
// exact polynomials

/// A multivariate polynomial over ℝ^{nvars} with complex coefficients,
/// stored sparsely by exponent vector.  Exact-zero coefficients are pruned.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Complex64>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Polynomial {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Complex64) -> Polynomial {
        let mut p = Polynomial::zero(nvars);
        p.insert_add(vec![0; nvars], c);
        p
    }

    /// The coordinate monomial x_j.
    pub fn coord(nvars: usize, j: usize) -> Polynomial {
        assert!(j < nvars, "coordinate index out of range");
        let mut exp = vec![0u32; nvars];
        exp[j] = 1;
        let mut p = Polynomial::zero(nvars);
        p.insert_add(exp, Complex64::ONE);
        p
    }

    /// Builds a polynomial from a term list, validating exponent lengths;
    /// duplicate exponent vectors accumulate.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Complex64)>,
    ) -> Result<Polynomial> {
        let mut p = Polynomial::zero(nvars);
        for (exp, c) in terms {
            if exp.len() != nvars {
                return Err(Error::Shape("polynomial exponent vector has wrong length"));
            }
            p.insert_add(exp, c);
        }
        Ok(p)
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree (None for the zero polynomial).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Iterates over (exponents, coefficient) pairs in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Complex64)> {
        self.terms.iter().map(|(k, &c)| (k.as_slice(), c))
    }

    /// True when every coefficient is exactly real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im == 0.0)
    }

    fn insert_add(&mut self, exp: Vec<u32>, c: Complex64) {
        use alloc::collections::btree_map::Entry;
        if c == Complex64::ZERO {
            return;
        }
        match self.terms.entry(exp) {
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

    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable counts differ");
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.insert_add(e.clone(), *c);
        }
        out
    }

    pub fn sub(&self, rhs: &Polynomial) -> Polynomial {
        self.add(&rhs.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in self.terms.iter() {
            out.insert_add(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable counts differ");
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in rhs.terms.iter() {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_add(exp, ca * cb);
            }
        }
        out
    }

    /// Coefficient-wise complex conjugation.
    pub fn conj(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in self.terms.iter() {
            out.insert_add(e.clone(), c.conj());
        }
        out
    }

    /// Partial derivative ∂/∂x_j.
    pub fn partial(&self, j: usize) -> Polynomial {
        assert!(j < self.nvars, "coordinate index out of range");
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in self.terms.iter() {
            if e[j] == 0 {
                continue;
            }
            let mut exp = e.clone();
            exp[j] -= 1;
            out.insert_add(exp, c * e[j] as f64);
        }
        out
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        assert_eq!(x.len(), self.nvars, "point dimension mismatch");
        let mut acc = Complex64::ZERO;
        for (e, c) in self.terms.iter() {
            let mut mono = 1.0f64;
            for (xi, &k) in x.iter().zip(e) {
                mono *= real_powi(*xi, k);
            }
            acc += c * mono;
        }
        acc
    }

    /// Max-norm distance between coefficient lists (union of keys).
    pub fn max_abs_diff(&self, rhs: &Polynomial) -> f64 {
        let mut m = 0.0f64;
        for (e, c) in self.terms.iter() {
            let d = c - rhs.terms.get(e).copied().unwrap_or(Complex64::ZERO);
            m = m.max(d.re.abs()).max(d.im.abs());
        }
        for (e, c) in rhs.terms.iter() {
            if !self.terms.contains_key(e) {
                m = m.max(c.re.abs()).max(c.im.abs());
            }
        }
        m
    }
}

fn real_powi(x: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..k {
        acc *= x;
    }
    acc
}

// ---------------------------------------------------------------------------
// the ∇ operators and z coordinates

/// The defining table of ∇_{Aα} as a two-term complex combination of real
/// partials: returns [(j, c); 2] with ∇_{Aα} = Σ c·∂_{x_j}.
pub fn nabla_coefficients(n: usize, a: usize, alpha: Alpha) -> [(usize, Complex64); 2] {
    assert!(a < 2 * n, "operator index out of range");
    let i = Complex64::I;
    let one = Complex64::ONE;
    if a < n {
        let l = 4 * a;
        match alpha {
            Alpha::Zero => [(l, one), (l + 1, i)],
            Alpha::One => [(l + 2, -one), (l + 3, -i)],
        }
    } else {
        let l = 4 * (a - n);
        match alpha {
            Alpha::Zero => [(l + 2, one), (l + 3, -i)],
            Alpha::One => [(l, one), (l + 1, -i)],
        }
    }
}

/// Applies ∇_{Aα} to a polynomial over ℝ^{4n}.  The operators pairwise
/// commute (they are constant-coefficient and first-order).
pub fn nabla(a: usize, alpha: Alpha, p: &Polynomial) -> Polynomial {
    assert_eq!(p.nvars() % 4, 0, "polynomial must live on ℝ^(4n)");
    let n = p.nvars() / 4;
    let mut out = Polynomial::zero(p.nvars());
    for (j, c) in nabla_coefficients(n, a, alpha) {
        out = out.add(&p.partial(j).scale(c));
    }
    out
}

/// The coordinate z^{Aα} as a degree-1 polynomial over ℝ^{4n}.
pub fn z_coord(n: usize, a: usize, alpha: Alpha) -> Polynomial {
    assert!(a < 2 * n, "coordinate index out of range");
    let nv = 4 * n;
    let x = |j: usize| Polynomial::coord(nv, j);
    let i = Complex64::I;
    if a < n {
        let l = 4 * a;
        match alpha {
            Alpha::Zero => x(l).sub(&x(l + 1).scale(i)),
            Alpha::One => x(l + 3).scale(i).sub(&x(l + 2)),
        }
    } else {
        let l = 4 * (a - n);
        match alpha {
            Alpha::Zero => x(l + 2).add(&x(l + 3).scale(i)),
            Alpha::One => x(l).add(&x(l + 1).scale(i)),
        }
    }
}

/// The full 2n×2 table of z coordinates, indexed `[a][alpha as usize]`.
pub fn z_coords(n: usize) -> Vec<[Polynomial; 2]> {
    (0..2 * n)
        .map(|a| [z_coord(n, a, Alpha::Zero), z_coord(n, a, Alpha::One)])
        .collect()
}

/// ‖q‖² = Σ_j x_j² as a polynomial over ℝ^{4n}.
pub fn norm_sq(n: usize) -> Polynomial {
    let nv = 4 * n;
    let mut p = Polynomial::zero(nv);
    for j in 0..nv {
        let x = Polynomial::coord(nv, j);
        p = p.add(&x.mul(&x));
    }
    p
}

// ---------------------------------------------------------------------------
// second-order jets

/// Value, gradient, and Hessian of a real field at a point; the Hessian is
/// stored as a packed lower triangle, so it is symmetric by construction.
#[derive(Clone, Debug)]
pub struct Jet2 {
    nvars: usize,
    pub value: f64,
    pub grad: Vec<f64>,
    hess: Vec<f64>,
}

#[inline]
fn tri(i: usize, j: usize) -> usize {
    debug_assert!(j <= i);
    i * (i + 1) / 2 + j
}

impl Jet2 {
    pub fn constant(nvars: usize, v: f64) -> Jet2 {
        Jet2 {
            nvars,
            value: v,
            grad: vec![0.0; nvars],
            hess: vec![0.0; nvars * (nvars + 1) / 2],
        }
    }

    pub fn coordinate(nvars: usize, j: usize, xj: f64) -> Jet2 {
        let mut jet = Jet2::constant(nvars, xj);
        jet.grad[j] = 1.0;
        jet
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Hessian entry ∂²/∂x_i∂x_j (argument order immaterial).
    #[inline]
    pub fn hess(&self, i: usize, j: usize) -> f64 {
        if j <= i { self.hess[tri(i, j)] } else { self.hess[tri(j, i)] }
    }

    fn zip(&self, rhs: &Jet2, f: impl Fn(f64, f64) -> f64) -> Jet2 {
        assert_eq!(self.nvars, rhs.nvars);
        Jet2 {
            nvars: self.nvars,
            value: f(self.value, rhs.value),
            grad: self.grad.iter().zip(&rhs.grad).map(|(a, b)| f(*a, *b)).collect(),
            hess: self.hess.iter().zip(&rhs.hess).map(|(a, b)| f(*a, *b)).collect(),
        }
    }

    pub fn add(&self, rhs: &Jet2) -> Jet2 {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Jet2) -> Jet2 {
        self.zip(rhs, |a, b| a - b)
    }

    /// Truncated Taylor product: (fg)'' = f''g + fg'' + f'g'ᵀ + g'f'ᵀ.
    pub fn mul(&self, rhs: &Jet2) -> Jet2 {
        assert_eq!(self.nvars, rhs.nvars);
        let n = self.nvars;
        let mut out = Jet2::constant(n, self.value * rhs.value);
        for j in 0..n {
            out.grad[j] = self.value * rhs.grad[j] + rhs.value * self.grad[j];
        }
        for i in 0..n {
            for j in 0..=i {
                out.hess[tri(i, j)] = self.value * rhs.hess[tri(i, j)]
                    + rhs.value * self.hess[tri(i, j)]
                    + self.grad[i] * rhs.grad[j]
                    + self.grad[j] * rhs.grad[i];
            }
        }
        out
    }

    /// Second-order reciprocal: 1/f ↦ (1/v, −g/v², −H/v² + 2gg^t/v³);
    /// `None` when the value is exactly zero.
    pub fn recip(&self) -> Option<Jet2> {
        if self.value == 0.0 {
            return None;
        }
        let n = self.nvars;
        let w = 1.0 / self.value;
        let w2 = w * w;
        let w3 = w2 * w;
        let mut out = Jet2::constant(n, w);
        for j in 0..n {
            out.grad[j] = -self.grad[j] * w2;
        }
        for i in 0..n {
            for j in 0..=i {
                out.hess[tri(i, j)] =
                    -self.hess[tri(i, j)] * w2 + 2.0 * self.grad[i] * self.grad[j] * w3;
            }
        }
        Some(out)
    }
}

// ---------------------------------------------------------------------------
// expression trees

/// A closed-form scalar field: an expression tree over constants,
/// coordinates, arithmetic, and integer powers.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldExpr {
    Const(f64),
    Coord(usize),
    Add(Box<FieldExpr>, Box<FieldExpr>),
    Sub(Box<FieldExpr>, Box<FieldExpr>),
    Mul(Box<FieldExpr>, Box<FieldExpr>),
    Div(Box<FieldExpr>, Box<FieldExpr>),
    Pow(Box<FieldExpr>, i32),
}

impl FieldExpr {
    /// The largest coordinate index appearing in the tree.
    pub fn max_coord(&self) -> Option<usize> {
        match self {
            FieldExpr::Const(_) => None,
            FieldExpr::Coord(j) => Some(*j),
            FieldExpr::Add(a, b)
            | FieldExpr::Sub(a, b)
            | FieldExpr::Mul(a, b)
            | FieldExpr::Div(a, b) => a.max_coord().max(b.max_coord()),
            FieldExpr::Pow(a, _) => a.max_coord(),
        }
    }

    /// Evaluates at a point.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        Ok(match self {
            FieldExpr::Const(c) => *c,
            FieldExpr::Coord(j) => x[*j],
            FieldExpr::Add(a, b) => a.eval(x)? + b.eval(x)?,
            FieldExpr::Sub(a, b) => a.eval(x)? - b.eval(x)?,
            FieldExpr::Mul(a, b) => a.eval(x)? * b.eval(x)?,
            FieldExpr::Div(a, b) => {
                let d = b.eval(x)?;
                if d == 0.0 {
                    return Err(Error::DivisionByZero { at: x.to_vec() });
                }
                a.eval(x)? / d
            }
            FieldExpr::Pow(a, k) => {
                let v = a.eval(x)?;
                if *k < 0 {
                    if v == 0.0 {
                        return Err(Error::DivisionByZero { at: x.to_vec() });
                    }
                    real_powi(1.0 / v, k.unsigned_abs())
                } else {
                    real_powi(v, *k as u32)
                }
            }
        })
    }

    /// Replaces each coordinate x_j by `images[j]`.
    pub fn substitute_coords(&self, images: &[FieldExpr]) -> FieldExpr {
        match self {
            FieldExpr::Const(c) => FieldExpr::Const(*c),
            FieldExpr::Coord(j) => images[*j].clone(),
            FieldExpr::Add(a, b) => FieldExpr::Add(
                Box::new(a.substitute_coords(images)),
                Box::new(b.substitute_coords(images)),
            ),
            FieldExpr::Sub(a, b) => FieldExpr::Sub(
                Box::new(a.substitute_coords(images)),
                Box::new(b.substitute_coords(images)),
            ),
            FieldExpr::Mul(a, b) => FieldExpr::Mul(
                Box::new(a.substitute_coords(images)),
                Box::new(b.substitute_coords(images)),
            ),
            FieldExpr::Div(a, b) => FieldExpr::Div(
                Box::new(a.substitute_coords(images)),
                Box::new(b.substitute_coords(images)),
            ),
            FieldExpr::Pow(a, k) => FieldExpr::Pow(Box::new(a.substitute_coords(images)), *k),
        }
    }

    /// Converts an exactly-real polynomial to an expression tree; errors
    /// with [`Error::NotReal`] when any coefficient has an imaginary part.
    pub fn from_polynomial(p: &Polynomial) -> Result<FieldExpr> {
        let worst = p
            .terms()
            .map(|(_, c)| c.im.abs())
            .fold(0.0f64, f64::max);
        if worst > 0.0 {
            return Err(Error::NotReal { residual: worst, tol: 0.0 });
        }
        let mut acc: Option<FieldExpr> = None;
        for (exp, c) in p.terms() {
            let mut term = FieldExpr::Const(c.re);
            for (j, &k) in exp.iter().enumerate() {
                if k == 1 {
                    term = FieldExpr::Mul(Box::new(term), Box::new(FieldExpr::Coord(j)));
                } else if k > 1 {
                    term = FieldExpr::Mul(
                        Box::new(term),
                        Box::new(FieldExpr::Pow(Box::new(FieldExpr::Coord(j)), k as i32)),
                    );
                }
            }
            acc = Some(match acc {
                None => term,
                Some(a) => FieldExpr::Add(Box::new(a), Box::new(term)),
            });
        }
        Ok(acc.unwrap_or(FieldExpr::Const(0.0)))
    }

    fn jet(&self, x: &[f64]) -> Result<Jet2> {
        let n = x.len();
        Ok(match self {
            FieldExpr::Const(c) => Jet2::constant(n, *c),
            FieldExpr::Coord(j) => Jet2::coordinate(n, *j, x[*j]),
            FieldExpr::Add(a, b) => a.jet(x)?.add(&b.jet(x)?),
            FieldExpr::Sub(a, b) => a.jet(x)?.sub(&b.jet(x)?),
            FieldExpr::Mul(a, b) => a.jet(x)?.mul(&b.jet(x)?),
            FieldExpr::Div(a, b) => {
                let den = b
                    .jet(x)?
                    .recip()
                    .ok_or_else(|| Error::DivisionByZero { at: x.to_vec() })?;
                a.jet(x)?.mul(&den)
            }
            FieldExpr::Pow(a, k) => {
                let base = a.jet(x)?;
                let base = if *k < 0 {
                    base.recip()
                        .ok_or_else(|| Error::DivisionByZero { at: x.to_vec() })?
                } else {
                    base
                };
                let mut acc = Jet2::constant(n, 1.0);
                for _ in 0..k.unsigned_abs() {
                    acc = acc.mul(&base);
                }
                acc
            }
        })
    }
}

/// Value, gradient, and Hessian of an expression at a point, by truncated
/// Taylor arithmetic.
pub fn jet2_eval(e: &FieldExpr, x: &[f64]) -> Result<Jet2> {
    e.jet(x)
}

/// ‖q‖² as an expression tree.
pub fn norm_sq_expr(n: usize) -> FieldExpr {
    let mut acc = FieldExpr::Const(0.0);
    for j in 0..4 * n {
        acc = FieldExpr::Add(
            Box::new(acc),
            Box::new(FieldExpr::Pow(Box::new(FieldExpr::Coord(j)), 2)),
        );
    }
    acc
}

/// The fundamental-solution potential −1/(‖q‖² + ε).
pub fn fundamental_expr(n: usize, eps: f64) -> FieldExpr {
    assert!(eps > 0.0, "regularization must be positive");
    FieldExpr::Div(
        Box::new(FieldExpr::Const(-1.0)),
        Box::new(FieldExpr::Add(
            Box::new(norm_sq_expr(n)),
            Box::new(FieldExpr::Const(eps)),
        )),
    )
}

// ---------------------------------------------------------------------------
// unified scalar fields

/// A real scalar field on ℝ^{4n}, in either backend.
///
/// The polynomial backend differentiates symbolically (exact); the
/// expression backend differentiates by jets.  Both produce the same
/// [`Jet2`] carrier, so downstream operators are backend-agnostic.
#[derive(Clone, Debug)]
pub enum ScalarField {
    Poly(Polynomial),
    Expr { nvars: usize, expr: FieldExpr },
}

impl ScalarField {
    /// Wraps an exactly-real polynomial.
    pub fn poly(p: Polynomial) -> Result<ScalarField> {
        let worst = p
            .terms()
            .map(|(_, c)| c.im.abs())
            .fold(0.0f64, f64::max);
        if worst > 0.0 {
            return Err(Error::NotReal { residual: worst, tol: 0.0 });
        }
        Ok(ScalarField::Poly(p))
    }

    /// Wraps an expression tree on `nvars` coordinates, validating that
    /// every coordinate index is in range.
    pub fn expr(nvars: usize, e: FieldExpr) -> Result<ScalarField> {
        if e.max_coord().is_some_and(|m| m >= nvars) {
            return Err(Error::Shape("expression uses a coordinate index ≥ nvars"));
        }
        Ok(ScalarField::Expr { nvars, expr: e })
    }

    pub fn nvars(&self) -> usize {
        match self {
            ScalarField::Poly(p) => p.nvars(),
            ScalarField::Expr { nvars, .. } => *nvars,
        }
    }

    /// Second-order jet at a point, by the backend's native differentiation.
    pub fn jet(&self, x: &[f64]) -> Result<Jet2> {
        match self {
            ScalarField::Expr { expr, .. } => expr.jet(x),
            ScalarField::Poly(p) => {
                let n = p.nvars();
                let mut jet = Jet2::constant(n, p.eval(x).re);
                for j in 0..n {
                    let pj = p.partial(j);
                    jet.grad[j] = pj.eval(x).re;
                    for i in j..n {
                        jet.hess[tri(i, j)] = pj.partial(i).eval(x).re;
                    }
                }
                Ok(jet)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn nabla_z_kronecker_table() {
        for n in 1..=2 {
            let z = z_coords(n);
            for a in 0..2 * n {
                for alpha in [Alpha::Zero, Alpha::One] {
                    for b in 0..2 * n {
                        for beta in [Alpha::Zero, Alpha::One] {
                            let d = nabla(a, alpha, &z[b][beta as usize]);
                            let expect = if a == b && alpha == beta {
                                Polynomial::constant(4 * n, c(2.0, 0.0))
                            } else {
                                Polynomial::zero(4 * n)
                            };
                            assert_eq!(d, expect, "∇_{{{a}{alpha:?}}} z^{{{b}{beta:?}}}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn nabla_of_norm_sq_is_conjugate_z() {
        let n = 2;
        let r2 = norm_sq(n);
        for a in 0..2 * n {
            for alpha in [Alpha::Zero, Alpha::One] {
                let lhs = nabla(a, alpha, &r2);
                let rhs = z_coord(n, a, alpha).conj().scale(c(2.0, 0.0));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn z_pairs_rebuild_norm_sq() {
        let n = 2;
        let z = z_coords(n);
        let mut acc = Polynomial::zero(4 * n);
        for l in 0..n {
            let a = z[l][0].mul(&z[n + l][1]);
            let b = z[n + l][0].mul(&z[l][1]);
            acc = acc.add(&a.sub(&b));
        }
        assert_eq!(acc, norm_sq(n));
    }

    #[test]
    fn nabla_operators_commute() {
        let n = 1;
        // u = x₀²x₃ + 3x₁x₂ − x₂³
        let x = |j| Polynomial::coord(4 * n, j);
        let u = x(0)
            .mul(&x(0))
            .mul(&x(3))
            .add(&x(1).mul(&x(2)).scale(c(3.0, 0.0)))
            .sub(&x(2).mul(&x(2)).mul(&x(2)));
        for a in 0..2 {
            for b in 0..2 {
                for alpha in [Alpha::Zero, Alpha::One] {
                    for beta in [Alpha::Zero, Alpha::One] {
                        let ab = nabla(a, alpha, &nabla(b, beta, &u));
                        let ba = nabla(b, beta, &nabla(a, alpha, &u));
                        assert_eq!(ab, ba);
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_relations() {
        let n = 2;
        // real polynomial with mixed terms
        let x = |j| Polynomial::coord(4 * n, j);
        let p = x(0).mul(&x(5)).add(&x(2).mul(&x(2)).scale(c(2.0, 0.0))).sub(&x(7));
        for l in 0..n {
            let lhs = nabla(l, Alpha::Zero, &p).conj();
            let rhs = nabla(n + l, Alpha::One, &p.conj());
            assert_eq!(lhs, rhs);

            let lhs2 = nabla(n + l, Alpha::Zero, &p).conj();
            let rhs2 = nabla(l, Alpha::One, &p.conj()).scale(c(-1.0, 0.0));
            assert_eq!(lhs2, rhs2);
        }
    }

    #[test]
    fn jets_of_quadratics() {
        // ‖q‖²: Hessian 2I everywhere
        let e = norm_sq_expr(1);
        let jet = jet2_eval(&e, &[0.3, -1.0, 2.0, 0.7]).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 2.0 } else { 0.0 };
                assert_eq!(jet.hess(i, j), expect);
            }
        }

        // x₀x₁ at (3,5,0,0)
        let e = FieldExpr::Mul(Box::new(FieldExpr::Coord(0)), Box::new(FieldExpr::Coord(1)));
        let jet = jet2_eval(&e, &[3.0, 5.0, 0.0, 0.0]).unwrap();
        assert_eq!(jet.value, 15.0);
        assert_eq!(jet.grad, vec![5.0, 3.0, 0.0, 0.0]);
        assert_eq!(jet.hess(0, 1), 1.0);
        assert_eq!(jet.hess(0, 0), 0.0);
    }

    #[test]
    fn jet_of_fundamental_solution_at_origin() {
        let e = fundamental_expr(1, 1.0);
        let jet = jet2_eval(&e, &[0.0; 4]).unwrap();
        assert_eq!(jet.value, -1.0);
        assert_eq!(jet.grad, vec![0.0; 4]);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 2.0 } else { 0.0 };
                assert_eq!(jet.hess(i, j), expect);
            }
        }
    }

    #[test]
    fn negative_powers_and_division_errors() {
        // x₀⁻² at x₀ = 2: value 1/4, f' = −2/8, f'' = 6/16
        let e = FieldExpr::Pow(Box::new(FieldExpr::Coord(0)), -2);
        let jet = jet2_eval(&e, &[2.0]).unwrap();
        assert!((jet.value - 0.25).abs() <= 1e-15);
        assert!((jet.grad[0] + 0.25).abs() <= 1e-15);
        assert!((jet.hess(0, 0) - 0.375).abs() <= 1e-15);

        let div = FieldExpr::Div(Box::new(FieldExpr::Const(1.0)), Box::new(FieldExpr::Coord(0)));
        match jet2_eval(&div, &[0.0]) {
            Err(Error::DivisionByZero { at }) => assert_eq!(at, vec![0.0]),
            other => panic!("expected division error, got {other:?}"),
        }
        assert!(matches!(div.eval(&[0.0]), Err(Error::DivisionByZero { .. })));
    }

    #[test]
    fn jet_matches_symbolic_derivatives() {
        // fixed quartic on ℝ⁴ with integer coefficients
        let x = |j| Polynomial::coord(4, j);
        let p = x(0)
            .mul(&x(0))
            .mul(&x(1))
            .mul(&x(3))
            .add(&x(2).mul(&x(2)).mul(&x(2)).scale(c(-2.0, 0.0)))
            .add(&x(1).mul(&x(1)).scale(c(4.0, 0.0)));
        let sf = ScalarField::poly(p.clone()).unwrap();
        let e = FieldExpr::from_polynomial(&p).unwrap();
        let pt = [0.5, -1.25, 2.0, 0.75];
        let sym = sf.jet(&pt).unwrap();
        let jet = jet2_eval(&e, &pt).unwrap();
        assert!((sym.value - jet.value).abs() <= 1e-12);
        for i in 0..4 {
            assert!((sym.grad[i] - jet.grad[i]).abs() <= 1e-12);
            for j in 0..4 {
                assert!((sym.hess(i, j) - jet.hess(i, j)).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn backend_constructors_validate() {
        let complex_poly = Polynomial::constant(4, c(1.0, 2.0));
        assert!(matches!(ScalarField::poly(complex_poly.clone()), Err(Error::NotReal { .. })));
        assert!(matches!(
            FieldExpr::from_polynomial(&complex_poly),
            Err(Error::NotReal { .. })
        ));
        assert!(matches!(
            ScalarField::expr(4, FieldExpr::Coord(7)),
            Err(Error::Shape(_))
        ));
    }
}
