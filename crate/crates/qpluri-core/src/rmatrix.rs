//! A minimal dense real matrix, used for the real 4p×4m representation of
//! quaternion matrices and for real Hessians of scalar fields.

use alloc::vec;
use alloc::vec::Vec;

/// Dense, row-major real matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RMatrix::zeros(n, n);
        for l in 0..n {
            m.set(l, l, 1.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RMatrix { rows, cols, data }
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
    pub fn get(&self, r: usize, c: usize) -> f64 {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r * self.cols + c] = v;
    }

    /// Matrix product (panics unless `self.cols == rhs.rows`).
    pub fn mul(&self, rhs: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        RMatrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = 0.0;
            for k in 0..self.cols {
                acc += self.get(r, k) * rhs.get(k, c);
            }
            acc
        })
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "vector length must match columns");
        (0..self.rows)
            .map(|r| (0..self.cols).map(|k| self.get(r, k) * v[k]).sum())
            .collect()
    }

    pub fn transpose(&self) -> RMatrix {
        RMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, rhs: &RMatrix) -> f64 {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        let mut m = 0.0f64;
        for (a, b) in self.data.iter().zip(&rhs.data) {
            m = m.max((a - b).abs());
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = RMatrix::from_fn(2, 3, |r, c| (r * 3 + c) as f64);
        let b = a.transpose();
        let p = a.mul(&b); // 2×2 Gram matrix
        assert_eq!(p.get(0, 0), 5.0);
        assert_eq!(p.get(0, 1), 14.0);
        assert_eq!(p.get(1, 0), 14.0);
        assert_eq!(p.get(1, 1), 50.0);
        assert_eq!(p.max_abs(), 50.0);
    }

    #[test]
    fn vector_product() {
        let m = RMatrix::identity(3);
        assert_eq!(m.mul_vec(&[1.0, 2.0, 3.0]), vec![1.0, 2.0, 3.0]);
    }
}
