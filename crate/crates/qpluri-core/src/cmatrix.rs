//! Dense complex matrices, the symplectic structure matrix J, and an LU
//! determinant.
//!
//! These carry the complex representations τ(𝓜) of quaternion matrices and
//! the coefficient matrices of 2-forms; the determinant here is the
//! independent complex route used to cross-check the Moore determinant.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense, row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for l in 0..n {
            m.set(l, l, Complex64::ONE);
        }
        m
    }

    /// Builds a matrix from a row-major entry list.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape("entry count does not match rows × cols"));
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CMatrix { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r * self.cols + c] = v;
    }

    /// Matrix product (panics unless `self.cols == rhs.rows`).
    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        CMatrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = Complex64::ZERO;
            for k in 0..self.cols {
                acc += self.get(r, k) * rhs.get(k, c);
            }
            acc
        })
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "vector length must match columns");
        (0..self.rows)
            .map(|r| {
                let mut acc = Complex64::ZERO;
                for k in 0..self.cols {
                    acc += self.get(r, k) * v[k];
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &CMatrix) -> CMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        CMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) + rhs.get(r, c))
    }

    pub fn sub(&self, rhs: &CMatrix) -> CMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        CMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) - rhs.get(r, c))
    }

    pub fn neg(&self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |r, c| -self.get(r, c))
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * s)
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).conj())
    }

    /// Conjugate transpose `M*`.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    /// Extracts the `h×w` block with top-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> CMatrix {
        assert!(r0 + h <= self.rows && c0 + w <= self.cols, "block out of range");
        CMatrix::from_fn(h, w, |r, c| self.get(r0 + r, c0 + c))
    }

    /// Assembles `[[tl, tr],[bl, br]]` from four compatible blocks.
    pub fn from_blocks(tl: &CMatrix, tr: &CMatrix, bl: &CMatrix, br: &CMatrix) -> CMatrix {
        assert!(tl.rows == tr.rows && bl.rows == br.rows, "block row mismatch");
        assert!(tl.cols == bl.cols && tr.cols == br.cols, "block column mismatch");
        CMatrix::from_fn(tl.rows + bl.rows, tl.cols + tr.cols, |r, c| {
            match (r < tl.rows, c < tl.cols) {
                (true, true) => tl.get(r, c),
                (true, false) => tr.get(r, c - tl.cols),
                (false, true) => bl.get(r - tl.rows, c),
                (false, false) => br.get(r - tl.rows, c - tl.cols),
            }
        })
    }

    /// Largest entry magnitude, measured as max(|re|, |im|).
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .fold(0.0, |m, v| m.max(v.re.abs()).max(v.im.abs()))
    }

    /// Max-norm distance to another matrix of the same shape.
    pub fn max_abs_diff(&self, rhs: &CMatrix) -> f64 {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        let mut m = 0.0f64;
        for (a, b) in self.data.iter().zip(&rhs.data) {
            let d = a - b;
            m = m.max(d.re.abs()).max(d.im.abs());
        }
        m
    }

    /// Max-norm residual of `M_{rc} = conj(M_{cr})`; errors on non-square input.
    pub fn hermitian_residual(&self) -> Result<f64> {
        if self.rows != self.cols {
            return Err(Error::Shape("Hermitian test requires a square matrix"));
        }
        let mut m = 0.0f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                let d = self.get(r, c) - self.get(c, r).conj();
                m = m.max(d.re.abs()).max(d.im.abs());
            }
        }
        Ok(m)
    }

    pub fn is_hermitian(&self, tol: f64) -> Result<bool> {
        Ok(self.hermitian_residual()? <= tol)
    }

    /// Max-norm residual of `M*M − I`; errors on non-square input.
    pub fn unitary_residual(&self) -> Result<f64> {
        if self.rows != self.cols {
            return Err(Error::Shape("unitarity test requires a square matrix"));
        }
        Ok(self.adjoint().mul(self).max_abs_diff(&CMatrix::identity(self.rows)))
    }

    pub fn is_unitary(&self, tol: f64) -> Result<bool> {
        Ok(self.unitary_residual()? <= tol)
    }

    /// Max-norm residual of `M^t = −M`; errors on non-square input.
    pub fn skew_residual(&self) -> Result<f64> {
        if self.rows != self.cols {
            return Err(Error::Shape("skew test requires a square matrix"));
        }
        let mut m = 0.0f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                let d = self.get(r, c) + self.get(c, r);
                m = m.max(d.re.abs()).max(d.im.abs());
            }
        }
        Ok(m)
    }

    /// Determinant by LU decomposition with partial pivoting, O(n³).
    pub fn det(&self) -> Result<Complex64> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant requires a square matrix"));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Complex64::ONE;
        for k in 0..n {
            // pivot on the largest remaining entry in column k
            let mut piv = k;
            let mut best = a[k * n + k].norm_sqr();
            for r in (k + 1)..n {
                let v = a[r * n + k].norm_sqr();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best == 0.0 {
                return Ok(Complex64::ZERO);
            }
            if piv != k {
                for c in 0..n {
                    a.swap(k * n + c, piv * n + c);
                }
                det = -det;
            }
            let pivot = a[k * n + k];
            det *= pivot;
            for r in (k + 1)..n {
                let factor = a[r * n + k] / pivot;
                for c in (k + 1)..n {
                    let sub = factor * a[k * n + c];
                    a[r * n + c] -= sub;
                }
                a[r * n + k] = Complex64::ZERO;
            }
        }
        Ok(det)
    }
}

/// The symplectic structure matrix `J = [[0, I_n],[−I_n, 0]]` (2n×2n):
/// `J_{l,n+l} = 1`, `J_{n+l,l} = −1`, `J² = −I`, `J^t = −J`.
pub fn j_matrix(n: usize) -> CMatrix {
    let mut j = CMatrix::zeros(2 * n, 2 * n);
    for l in 0..n {
        j.set(l, n + l, Complex64::ONE);
        j.set(n + l, l, -Complex64::ONE);
    }
    j
}
