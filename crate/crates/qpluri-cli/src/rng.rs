//! Deterministic randomness for the verification suites.
//!
//! A SplitMix64 generator drives everything; each suite case gets its own
//! substream derived from (seed, case index), so any failing case can be
//! reproduced in isolation without replaying the cases before it.

use num_complex::Complex64;
use qpluri_core::eig::eigh;
use qpluri_core::exterior::{matrix_to_2form, rho_j, Form};
use qpluri_core::fields::Polynomial;
use qpluri_core::moore::diagonalize_hyperhermitian;
use qpluri_core::tau::tau;
use qpluri_core::{CMatrix, QMatrix, Quaternion};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64: a tiny splittable generator with full 64-bit state.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    /// The substream for case `case` of a suite seeded by `seed`.
    pub fn for_case(seed: u64, case: u64) -> SplitMix64 {
        SplitMix64::new(seed.wrapping_add(case.wrapping_mul(GOLDEN)))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1), with 53 bits of precision.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer in [0, n).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    /// Standard normal by Box-Muller (one value per call; the sine twin is
    /// discarded to keep the stream layout simple).
    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform(); // (0, 1]
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (core::f64::consts::TAU * u2).cos()
    }
}

pub fn quaternion(rng: &mut SplitMix64) -> Quaternion {
    Quaternion::new(rng.normal(), rng.normal(), rng.normal(), rng.normal())
}

pub fn complex(rng: &mut SplitMix64) -> Complex64 {
    Complex64::new(rng.normal(), rng.normal())
}

pub fn qmatrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> QMatrix {
    let mut m = QMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, quaternion(rng));
        }
    }
    m
}

/// 𝓐 + 𝓐*: hyperhermitian with exactly zero structural residual.
pub fn hyperhermitian(rng: &mut SplitMix64, n: usize) -> QMatrix {
    let a = qmatrix(rng, n, n);
    a.add(&a.adjoint())
}

pub fn cmatrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex(rng))
}

/// (𝓝 − 𝓝^t)/2: complex skew with exactly zero skew residual.
pub fn skew_cmatrix(rng: &mut SplitMix64, size: usize) -> CMatrix {
    let m = cmatrix(rng, size, size);
    m.sub(&m.transpose()).scale(Complex64::new(0.5, 0.0))
}

/// A random 2-form on ℂ^{2n} with no reality constraint.
pub fn two_form(rng: &mut SplitMix64, n: usize) -> Form {
    matrix_to_2form(&skew_cmatrix(rng, 2 * n), 0.0).expect("exactly skew by construction")
}

/// f + ρ(f): an exactly real random 2-form.
pub fn real_two_form(rng: &mut SplitMix64, n: usize) -> Form {
    let f = two_form(rng, n);
    f.add(&rho_j(&f))
}

/// A random polynomial on ℝ^{nvars}: up to five terms, each a product of at
/// most `max_deg` coordinates, with nonzero integer coefficients in
/// [−3, 3] (exact in both symbolic and floating-point arithmetic).
pub fn int_polynomial(rng: &mut SplitMix64, nvars: usize, max_deg: usize) -> Polynomial {
    let nterms = 1 + rng.below(5);
    let terms = (0..nterms).map(|_| {
        let mut exp = vec![0u32; nvars];
        for _ in 0..rng.below(max_deg + 1) {
            exp[rng.below(nvars)] += 1;
        }
        let mut c = (rng.below(6) as f64) - 3.0;
        if c == 0.0 {
            c = 1.0;
        }
        (exp, Complex64::new(c, 0.0))
    });
    Polynomial::from_terms(nvars, terms).expect("exponent vectors sized to nvars")
}

/// Like [`int_polynomial`] but with continuous coefficients, to exercise
/// rounding rather than exact cancellation.
pub fn float_polynomial(rng: &mut SplitMix64, nvars: usize, max_deg: usize) -> Polynomial {
    let nterms = 1 + rng.below(5);
    let terms = (0..nterms).map(|_| {
        let mut exp = vec![0u32; nvars];
        for _ in 0..rng.below(max_deg + 1) {
            exp[rng.below(nvars)] += 1;
        }
        (exp, Complex64::new(rng.range(-2.0, 2.0), 0.0))
    });
    Polynomial::from_terms(nvars, terms).expect("exponent vectors sized to nvars")
}

pub fn point(rng: &mut SplitMix64, dim: usize, radius: f64) -> Vec<f64> {
    (0..dim).map(|_| rng.range(-radius, radius)).collect()
}

/// A random element of GL_ℍ(n): normal entries, rejected until the smallest
/// singular value of τ(𝓤) is at least 0.1, which keeps every conditioning-
/// sensitive check bounded.
pub fn gl_quaternion(rng: &mut SplitMix64, n: usize) -> QMatrix {
    loop {
        let u = qmatrix(rng, n, n);
        let t = tau(&u);
        let gram = t.adjoint().mul(&t);
        let spec = eigh(&gram).expect("Gram matrices are square and converge");
        let smallest = spec.values.last().copied().unwrap_or(0.0);
        if smallest >= 0.01 {
            return u;
        }
    }
}

/// A random element of U_ℍ(n): the eigenvector matrix of a random
/// hyperhermitian matrix, which is exactly τ-structured and unitary to
/// solver precision.
pub fn unitary_quaternion(rng: &mut SplitMix64, n: usize) -> QMatrix {
    let h = hyperhermitian(rng, n);
    diagonalize_hyperhermitian(&h, 1e-9)
        .expect("exact hyperhermitian input diagonalizes")
        .e
}
