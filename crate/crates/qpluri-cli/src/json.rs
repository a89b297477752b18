//! JSON wire formats and their conversions to and from core types.
//!
//! Schemas:
//!
//! * quaternion — `[w, x, y, z]`
//! * quaternion matrix — `{"rows": p, "cols": m, "data": [[w,x,y,z], …]}`,
//!   row-major
//! * complex matrix — `{"rows": p, "cols": m, "re": […], "im": […]}`
//! * form — `{"n": n, "grade": k, "terms": [{"idx": [a₁,…], "re": r, "im": i}, …]}`
//!   with strictly increasing `idx`
//! * polynomial — `{"vars": 4n, "terms": [{"exp": […], "re": r, "im": i}, …]}`
//! * field expression — nested tree with node tags
//!   `const | coord | add | sub | mul | div | pow`
//! * spectral data — `{"E": <quaternion matrix>, "nu": […]}`
//!
//! Schema violations surface as `serde_json` errors (exit 2 at the CLI);
//! mathematically invalid but well-formed inputs surface as core errors
//! (exit 3).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use qpluri_core::exterior::Form;
use qpluri_core::fields::{FieldExpr, Polynomial, ScalarField};
use qpluri_core::moore::SpectralData;
use qpluri_core::{CMatrix, QMatrix, Quaternion, Result};

/// Canonicalizes −0.0 to 0.0 on the way out; exact sign flips of zero are
/// common in unitary assembly and would otherwise leak into goldens.
fn plus_zero(v: f64) -> f64 {
    v + 0.0
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct QMatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 4]>,
}

impl QMatrixDoc {
    pub fn to_core(&self) -> Result<QMatrix> {
        let entries = self
            .data
            .iter()
            .map(|&[w, x, y, z]| Quaternion::new(w, x, y, z))
            .collect();
        QMatrix::from_vec(self.rows, self.cols, entries)
    }

    pub fn from_core(m: &QMatrix) -> QMatrixDoc {
        let mut data = Vec::with_capacity(m.rows() * m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let q = m.get(r, c);
                data.push([plus_zero(q.w), plus_zero(q.x), plus_zero(q.y), plus_zero(q.z)]);
            }
        }
        QMatrixDoc { rows: m.rows(), cols: m.cols(), data }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct CMatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl CMatrixDoc {
    pub fn to_core(&self) -> Result<CMatrix> {
        if self.re.len() != self.im.len() {
            return Err(qpluri_core::Error::Shape("re and im arrays differ in length"));
        }
        let entries = self
            .re
            .iter()
            .zip(&self.im)
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect();
        CMatrix::from_vec(self.rows, self.cols, entries)
    }

    pub fn from_core(m: &CMatrix) -> CMatrixDoc {
        let mut re = Vec::with_capacity(m.rows() * m.cols());
        let mut im = Vec::with_capacity(m.rows() * m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let v = m.get(r, c);
                re.push(plus_zero(v.re));
                im.push(plus_zero(v.im));
            }
        }
        CMatrixDoc { rows: m.rows(), cols: m.cols(), re, im }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct FormTermDoc {
    pub idx: Vec<u8>,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct FormDoc {
    pub n: usize,
    pub grade: usize,
    pub terms: Vec<FormTermDoc>,
}

impl FormDoc {
    pub fn to_core(&self) -> Result<Form> {
        Form::from_terms(
            self.n,
            self.grade,
            self.terms
                .iter()
                .map(|t| (t.idx.clone(), Complex64::new(t.re, t.im))),
        )
    }

    pub fn from_core(f: &Form) -> FormDoc {
        FormDoc {
            n: f.half_dim(),
            grade: f.grade(),
            terms: f
                .terms()
                .map(|(idx, c)| FormTermDoc {
                    idx: idx.to_vec(),
                    re: plus_zero(c.re),
                    im: plus_zero(c.im),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct PolyTermDoc {
    pub exp: Vec<u32>,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct PolynomialDoc {
    pub vars: usize,
    pub terms: Vec<PolyTermDoc>,
}

impl PolynomialDoc {
    pub fn to_core(&self) -> Result<Polynomial> {
        Polynomial::from_terms(
            self.vars,
            self.terms
                .iter()
                .map(|t| (t.exp.clone(), Complex64::new(t.re, t.im))),
        )
    }

    pub fn from_core(p: &Polynomial) -> PolynomialDoc {
        PolynomialDoc {
            vars: p.nvars(),
            terms: p
                .terms()
                .map(|(exp, c)| PolyTermDoc {
                    exp: exp.to_vec(),
                    re: plus_zero(c.re),
                    im: plus_zero(c.im),
                })
                .collect(),
        }
    }
}

/// Expression tree; the externally-tagged serde encoding matches the wire
/// format exactly: `{"add": [a, b]}`, `{"coord": 3}`, `{"pow": [a, -2]}`, …
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExprDoc {
    Const(f64),
    Coord(usize),
    Add(Box<ExprDoc>, Box<ExprDoc>),
    Sub(Box<ExprDoc>, Box<ExprDoc>),
    Mul(Box<ExprDoc>, Box<ExprDoc>),
    Div(Box<ExprDoc>, Box<ExprDoc>),
    Pow(Box<ExprDoc>, i32),
}

impl ExprDoc {
    pub fn to_core(&self) -> FieldExpr {
        match self {
            ExprDoc::Const(c) => FieldExpr::Const(*c),
            ExprDoc::Coord(j) => FieldExpr::Coord(*j),
            ExprDoc::Add(a, b) => FieldExpr::Add(Box::new(a.to_core()), Box::new(b.to_core())),
            ExprDoc::Sub(a, b) => FieldExpr::Sub(Box::new(a.to_core()), Box::new(b.to_core())),
            ExprDoc::Mul(a, b) => FieldExpr::Mul(Box::new(a.to_core()), Box::new(b.to_core())),
            ExprDoc::Div(a, b) => FieldExpr::Div(Box::new(a.to_core()), Box::new(b.to_core())),
            ExprDoc::Pow(a, k) => FieldExpr::Pow(Box::new(a.to_core()), *k),
        }
    }
}

/// A scalar-field input: either a polynomial document or an expression
/// tree, distinguished by shape.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldDoc {
    Poly(PolynomialDoc),
    Expr(ExprDoc),
}

impl FieldDoc {
    /// Converts to a [`ScalarField`] on `nvars` coordinates (expression
    /// documents carry no dimension of their own, so the caller supplies
    /// it — typically from the evaluation point).
    pub fn to_core(&self, nvars: usize) -> Result<ScalarField> {
        match self {
            FieldDoc::Poly(p) => ScalarField::poly(p.to_core()?),
            FieldDoc::Expr(e) => ScalarField::expr(nvars, e.to_core()),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct SpectralDoc {
    #[serde(rename = "E")]
    pub e: QMatrixDoc,
    pub nu: Vec<f64>,
}

impl SpectralDoc {
    pub fn from_core(s: &SpectralData) -> SpectralDoc {
        SpectralDoc {
            e: QMatrixDoc::from_core(&s.e),
            nu: s.nu.iter().copied().map(plus_zero).collect(),
        }
    }
}

/// Output of `normalize`: the spectral data plus the achieved residual.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct NormalizeDoc {
    #[serde(rename = "E")]
    pub e: QMatrixDoc,
    pub nu: Vec<f64>,
    pub residual: f64,
}

impl NormalizeDoc {
    pub fn new(s: &SpectralData, residual: f64) -> NormalizeDoc {
        let spectral = SpectralDoc::from_core(s);
        NormalizeDoc { e: spectral.e, nu: spectral.nu, residual }
    }
}

/// One verification suite's outcome.  `cases` counts the individual
/// checks aggregated into `max_residual` (several per random draw).
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub max_residual: f64,
    pub pass: bool,
}
