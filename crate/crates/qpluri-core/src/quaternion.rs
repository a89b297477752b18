//! Quaternion scalars and dense quaternion matrices.
//!
//! Quaternions are written `q = w + x·i + y·j + z·k` with the Hamilton
//! relations `i² = j² = k² = ijk = −1`, hence `ij = k`, `jk = i`, `ki = j`.
//! Every quaternion splits uniquely as `q = a + b·j` with complex `a, b`;
//! note `j·d = conj(d)·j` for complex `d`, so the side of the split matters.
//! Matrices act on column vectors from the left, scalars multiply entries
//! from the left; right ℍ-linearity of the maps is never needed explicitly
//! at the matrix level.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A quaternion `w + x·i + y·j + z·k` over 64-bit floats.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    /// Real part.
    pub w: f64,
    /// Coefficient of `i`.
    pub x: f64,
    /// Coefficient of `j`.
    pub y: f64,
    /// Coefficient of `k`.
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    /// Creates `w + x·i + y·j + z·k`.
    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    /// Embeds a real number.
    #[inline]
    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    /// Builds `a + b·j` from the complex pair `(a, b)`.
    #[inline]
    pub fn from_complex_pair(a: Complex64, b: Complex64) -> Self {
        Quaternion::new(a.re, a.im, b.re, b.im)
    }

    /// Splits `q = a + b·j` into the complex pair `(a, b)`:
    /// `a = w + x·i`, `b = y + z·i`, since `(y + z·i)·j = y·j + z·k`.
    #[inline]
    pub fn complex_pair(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.w, self.x),
            Complex64::new(self.y, self.z),
        )
    }

    /// The component with the given index: 0 ↦ w, 1 ↦ x, 2 ↦ y, 3 ↦ z.
    #[inline]
    pub fn component(self, idx: usize) -> f64 {
        match idx {
            0 => self.w,
            1 => self.x,
            2 => self.y,
            3 => self.z,
            _ => panic!("quaternion component index out of range"),
        }
    }

    /// Quaternionic conjugate `q̄ = w − x·i − y·j − z·k`.
    #[inline]
    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Squared norm `q·q̄ = w² + x² + y² + z²`.
    #[inline]
    pub fn abs2(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Euclidean norm `|q|`.
    #[inline]
    pub fn abs(self) -> f64 {
        libm::sqrt(self.abs2())
    }

    /// Largest absolute value among the four components (max-norm).
    #[inline]
    pub fn norm_max(self) -> f64 {
        self.w.abs().max(self.x.abs()).max(self.y.abs()).max(self.z.abs())
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product with `ij = k`, `jk = i`, `ki = j`.
impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y + self.y * o.w + self.z * o.x - self.x * o.z,
            self.w * o.z + self.z * o.w + self.x * o.y - self.y * o.x,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl From<f64> for Quaternion {
    #[inline]
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

/// A dense, row-major matrix of quaternions.
///
/// Elementwise arithmetic panics on mismatched shapes (a programming error);
/// structural predicates report [`Error`] values instead, since they guard
/// numerical decisions on possibly external data.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    /// The zero p×m matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Quaternion::ZERO; rows * cols],
        }
    }

    /// The n×n identity.
    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for l in 0..n {
            m.set(l, l, Quaternion::ONE);
        }
        m
    }

    /// Builds a matrix from a row-major entry list.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape("entry count does not match rows × cols"));
        }
        Ok(QMatrix { rows, cols, data })
    }

    /// Builds a matrix entry by entry from `f(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QMatrix { rows, cols, data }
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
    pub fn get(&self, r: usize, c: usize) -> Quaternion {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, q: Quaternion) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r * self.cols + c] = q;
    }

    /// Matrix product (panics unless `self.cols == rhs.rows`).
    pub fn mul(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        QMatrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = Quaternion::ZERO;
            for k in 0..self.cols {
                acc = acc + self.get(r, k) * rhs.get(k, c);
            }
            acc
        })
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[Quaternion]) -> Vec<Quaternion> {
        assert_eq!(self.cols, v.len(), "vector length must match columns");
        (0..self.rows)
            .map(|r| {
                let mut acc = Quaternion::ZERO;
                for k in 0..self.cols {
                    acc = acc + self.get(r, k) * v[k];
                }
                acc
            })
            .collect()
    }

    /// Entrywise sum (panics on mismatched shape).
    pub fn add(&self, rhs: &QMatrix) -> QMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        QMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) + rhs.get(r, c))
    }

    /// Entrywise difference (panics on mismatched shape).
    pub fn sub(&self, rhs: &QMatrix) -> QMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        QMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) - rhs.get(r, c))
    }

    /// Scales every entry by a real factor.
    pub fn scale(&self, s: f64) -> QMatrix {
        QMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * s)
    }

    /// Conjugate transpose `𝓜*`.
    pub fn adjoint(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    /// Largest component max-norm over all entries.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, q| m.max(q.norm_max()))
    }

    /// Max-norm distance to another matrix of the same shape.
    pub fn max_abs_diff(&self, rhs: &QMatrix) -> f64 {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        let mut m = 0.0f64;
        for (a, b) in self.data.iter().zip(&rhs.data) {
            m = m.max((*a - *b).norm_max());
        }
        m
    }

    /// Max-norm residual of the hyperhermitian condition
    /// `𝓜_{rc} = conj(𝓜_{cr})`; errors on non-square input.
    pub fn hermitian_residual(&self) -> Result<f64> {
        if self.rows != self.cols {
            return Err(Error::Shape("hyperhermitian test requires a square matrix"));
        }
        let mut m = 0.0f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                m = m.max((self.get(r, c) - self.get(c, r).conj()).norm_max());
            }
        }
        Ok(m)
    }

    /// Whether the matrix is hyperhermitian within `tol` (max-norm).
    pub fn is_hyperhermitian(&self, tol: f64) -> Result<bool> {
        Ok(self.hermitian_residual()? <= tol)
    }

    /// Max-norm residual of `𝓜*𝓜 − I`; errors on non-square input.
    pub fn unitary_residual(&self) -> Result<f64> {
        if self.rows != self.cols {
            return Err(Error::Shape("unitarity test requires a square matrix"));
        }
        Ok(self.adjoint().mul(self).max_abs_diff(&QMatrix::identity(self.rows)))
    }

    /// Whether the matrix is quaternionic unitary (`𝓜*𝓜 = I`) within `tol`.
    pub fn is_unitary(&self, tol: f64) -> Result<bool> {
        Ok(self.unitary_residual()? <= tol)
    }
}
