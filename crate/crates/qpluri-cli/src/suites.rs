//! Named verification suites: randomized, seeded re-derivations of every
//! identity the library is built on, reported as machine-readable JSON.
//!
//! Each suite draws its cases from per-case substreams of a single seed
//! (see [`crate::rng`]), runs strictly sequentially, and aggregates the
//! worst residual, so a report is byte-identical across runs with the same
//! seed and flags.  Thresholds are pinned here, next to the checks they
//! govern; `--tol` only adjusts the *structural* tolerance forwarded to
//! core operations, never the pass criteria.
//!
//! Residuals are relative wherever the checked quantity has a natural
//! scale (determinants, Monge-Ampère values) and absolute max-norm
//! otherwise (O(1)-normalized matrix and form data).

use num_complex::Complex64;

use qpluri_core::baston::{
    baston_point, baston_poly, d_op, ma_mixed, quaternionic_hessian, FormField,
};
use qpluri_core::exterior::{
    act_matrix_on_form, beta_n, delta_n, elementary_strongly_positive, form_to_matrix,
    hh_to_2form, is_real_form, is_strongly_positive_2form, normal_form_residual,
    normalize_real_2form, omega_2n, omega_ratio, Form,
};
use qpluri_core::fields::{
    nabla, norm_sq, z_coord, z_coords, Alpha, FieldExpr, Polynomial, ScalarField,
};
use qpluri_core::moore::{diagonalize_hyperhermitian, eigenvalue_pairs, mixed_discriminant, moore_det};
use qpluri_core::tau::{
    complex_symplectic_residual, real_rep, real_vec, tau, tau_inverse, tau_residual,
};
use qpluri_core::transforms::{
    apply_to_point, basis_change, chain_rule_check, invariance_check, pullback_field,
    x_order_real_rep, OperatorKind,
};
use qpluri_core::{j_matrix, CMatrix, QMatrix, DEFAULT_TOL};

use crate::json::SuiteReport;
use crate::rng::{self, SplitMix64};

/// Options shared by every suite.  `cases` and the dimension cap default
/// per suite; `eps` pins the fundamental-solution regularization instead
/// of sampling it.
#[derive(Clone, Copy, Debug)]
pub struct SuiteOpts {
    pub seed: u64,
    pub cases: Option<usize>,
    pub tol: Option<f64>,
    pub n: Option<usize>,
    pub eps: Option<f64>,
}

impl SuiteOpts {
    fn cases_or(&self, default: usize) -> usize {
        self.cases.unwrap_or(default)
    }

    fn tol(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_TOL)
    }

    fn dim_or(&self, default: usize) -> usize {
        self.n.unwrap_or(default).max(1)
    }
}

/// Running aggregate of checks: every check contributes to the max
/// residual and can individually fail the suite (NaN counts as failure).
struct Tracker {
    cases: usize,
    max_residual: f64,
    pass: bool,
}

impl Tracker {
    fn new() -> Tracker {
        Tracker { cases: 0, max_residual: 0.0, pass: true }
    }

    fn check(&mut self, residual: f64, threshold: f64) {
        self.cases += 1;
        if residual > self.max_residual || residual.is_nan() {
            self.max_residual = residual;
        }
        if !(residual <= threshold) {
            self.pass = false;
        }
    }

    fn check_bool(&mut self, ok: bool) {
        self.cases += 1;
        if !ok {
            self.pass = false;
        }
    }

    fn report(self, suite: &str) -> SuiteReport {
        SuiteReport {
            suite: suite.to_owned(),
            cases: self.cases,
            max_residual: self.max_residual,
            pass: self.pass,
        }
    }
}

/// All suite names, in `verify all` execution order.
pub const SUITE_NAMES: [&str; 8] =
    ["tau", "moore", "thm12", "forms", "dops", "thm13", "fundsol", "invariance"];

/// Runs one named suite (or `all`); `None` for an unknown name.
pub fn run_suite(name: &str, opts: &SuiteOpts) -> Option<SuiteReport> {
    match name {
        "tau" => Some(suite_tau(opts)),
        "moore" => Some(suite_moore(opts)),
        "thm12" => Some(suite_thm12(opts)),
        "forms" => Some(suite_forms(opts)),
        "dops" => Some(suite_dops(opts)),
        "thm13" => Some(suite_thm13(opts)),
        "fundsol" => Some(suite_fundsol(opts)),
        "invariance" => Some(suite_invariance(opts)),
        "all" => {
            let mut total = Tracker::new();
            for sub in SUITE_NAMES {
                let r = run_suite(sub, opts).expect("known suite");
                total.cases += r.cases;
                total.check(r.max_residual, f64::INFINITY);
                total.pass &= r.pass;
            }
            Some(total.report("all"))
        }
        _ => None,
    }
}

/// τ embedding and real representation: homomorphism, *-compatibility,
/// exact range structure, round trips, and the symplectic-unitary image
/// of quaternionic unitaries.
fn suite_tau(opts: &SuiteOpts) -> SuiteReport {
    let mut t = Tracker::new();
    for case in 0..opts.cases_or(200) as u64 {
        let rng = &mut SplitMix64::for_case(opts.seed, case);
        let n = 1 + rng.below(opts.dim_or(3));
        let a = rng::qmatrix(rng, n, n);
        let b = rng::qmatrix(rng, n, n);
        let scale = (1.0 + a.max_abs()) * (1.0 + b.max_abs());

        // homomorphism and adjoint intertwining
        let hom = tau(&a.mul(&b)).max_abs_diff(&tau(&a).mul(&tau(&b)));
        t.check(hom / scale, 1e-12);
        t.check(tau(&a.adjoint()).max_abs_diff(&tau(&a).adjoint()), 0.0);

        // exact range structure and exact round trip
        t.check(tau_residual(&tau(&a)).expect("even dims"), 0.0);
        let back = tau_inverse(&tau(&a), 0.0).expect("exact image");
        t.check(back.max_abs_diff(&a), 0.0);

        // real representation: homomorphism and vector compatibility
        let rr = real_rep(&a.mul(&b)).max_abs_diff(&real_rep(&a).mul(&real_rep(&b)));
        t.check(rr / scale, 1e-12);
        let q: Vec<_> = (0..n).map(|_| rng::quaternion(rng)).collect();
        let lhs = real_vec(&a.mul_vec(&q));
        let rhs = real_rep(&a).mul_vec(&real_vec(&q));
        let dv = lhs
            .iter()
            .zip(&rhs)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0f64, f64::max);
        t.check(dv / scale, 1e-12);

        // x-ordered adapter agrees with direct quaternion arithmetic
        let x = rng::point(rng, 4 * n, 1.0);
        let direct = apply_to_point(&a, &x);
        let shuffled = x_order_real_rep(&a).mul_vec(&x);
        let dx = direct
            .iter()
            .zip(&shuffled)
            .map(|(p, q)| (p - q).abs())
            .fold(0.0f64, f64::max);
        t.check(dx / scale, 1e-12);

        // unitaries embed as symplectic unitaries
        let e = rng::unitary_quaternion(rng, n);
        t.check(complex_symplectic_residual(&tau(&e)).expect("square"), 1e-8);
    }
    t.report("tau")
}

/// Moore determinant: agreement with the complex determinant on embedded
/// Hermitian matrices, the product rule det(𝓐*𝓜𝓐) = det(𝓐*𝓐)·det(𝓜),
/// even eigenvalue pairing of τ(𝓜), det_ℂ∘τ = (Moore)², and the spectral
/// factorization itself.
fn suite_moore(opts: &SuiteOpts) -> SuiteReport {
    let mut t = Tracker::new();
    let tol = opts.tol();
    for case in 0..opts.cases_or(100) as u64 {
        let rng = &mut SplitMix64::for_case(opts.seed, case);
        let n = 1 + rng.below(opts.dim_or(5));
        let m = rng::hyperhermitian(rng, n);

        // complex Hermitian matrices embedded with zero j-part
        let c = rng::cmatrix(rng, n, n);
        let ch = c.add(&c.adjoint());
        let embedded = QMatrix::from_fn(n, n, |r, s| {
            qpluri_core::Quaternion::from_complex_pair(ch.get(r, s), Complex64::ZERO)
        });
        let dm = moore_det(&embedded, tol).expect("hyperhermitian");
        let dc = ch.det().expect("square");
        t.check((dm - dc.re).abs() / (1.0 + dc.re.abs()), 1e-9);

        // product rule
        let a = rng::qmatrix(rng, n, n);
        let ama = a.adjoint().mul(&m).mul(&a);
        let lhs = moore_det(&ama, tol).expect("hyperhermitian up to rounding");
        let gram = a.adjoint().mul(&a);
        let rhs = moore_det(&gram, tol).expect("hyperhermitian up to rounding")
            * moore_det(&m, tol).expect("hyperhermitian");
        t.check((lhs - rhs).abs() / (1.0 + rhs.abs()), 1e-7);

        // eigenvalues of τ(𝓜) pair up evenly
        let spec = qpluri_core::eig::eigh(&tau(&m)).expect("square");
        let mut worst_gap = 0.0f64;
        for k in 0..n {
            let (top, bot) = (spec.values[2 * k], spec.values[2 * k + 1]);
            worst_gap = worst_gap.max((top - bot).abs() / top.abs().max(1.0));
        }
        t.check(worst_gap, 1e-8);

        // det_ℂ(τ(𝓜)) = (Moore det)², and the pairing route agrees
        let det = moore_det(&m, tol).expect("hyperhermitian");
        let dc = tau(&m).det().expect("square");
        let sq = det * det;
        t.check((dc.re - sq).abs() / (1.0 + sq.abs()), 1e-8);
        t.check(dc.im.abs() / (1.0 + sq.abs()), 1e-8);
        let prod: f64 = eigenvalue_pairs(&tau(&m), tol)
            .expect("structured")
            .iter()
            .product();
        t.check((det - prod).abs() / (1.0 + prod.abs()), 1e-8);

        // spectral factorization: 𝓔 unitary, 𝓜𝓔 = 𝓔·diag(ν)
        let s = diagonalize_hyperhermitian(&m, tol).expect("hyperhermitian");
        t.check(s.e.unitary_residual().expect("square"), 1e-8);
        let me = m.mul(&s.e);
        let ed = QMatrix::from_fn(n, n, |r, c| s.e.get(r, c) * s.nu[c]);
        t.check(me.max_abs_diff(&ed) / (1.0 + m.max_abs()), 1e-8);

        // mixed discriminant degenerates to the Moore determinant
        if n <= 3 {
            let copies: Vec<QMatrix> = (0..n).map(|_| m.clone()).collect();
            let md = mixed_discriminant(&copies, tol).expect("hyperhermitian");
            t.check((md - det).abs() / (1.0 + det.abs()), 1e-7);
        }
    }
    t.report("moore")
}

/// Δₙ(τ(𝓜₁)J, …, τ(𝓜ₙ)J) = 2ⁿ·n!·det(𝓜₁, …, 𝓜ₙ) over random
/// hyperhermitian tuples, n up to 4.
fn suite_thm12(opts: &SuiteOpts) -> SuiteReport {
    let mut t = Tracker::new();
    let tol = opts.tol();
    let cases = opts.cases_or(50);
    let mut stream = 0u64;
    for n in 1..=opts.dim_or(4) {
        let factor = (1 << n) as f64 * (1..=n).product::<usize>() as f64;
        for _ in 0..cases {
            let rng = &mut SplitMix64::for_case(opts.seed, stream);
            stream += 1;
            let ms: Vec<QMatrix> = (0..n).map(|_| rng::hyperhermitian(rng, n)).collect();
            let j = j_matrix(n);
            let embedded: Vec<CMatrix> = ms.iter().map(|m| tau(m).mul(&j)).collect();
            let lhs = delta_n(&embedded, tol).expect("real 2-forms");
            let rhs = factor * mixed_discriminant(&ms, tol).expect("hyperhermitian");
            let scale = 1.0 + rhs.abs();
            t.check((lhs.re - rhs).abs() / scale, 1e-7);
            t.check(lhs.im.abs() / scale, 1e-7);
        }
    }
    t.report("thm12")
}

/// Real 2-forms: the reality criterion against the J-commutation matrix
/// identity, normalization to the antidiagonal normal form, strong
/// positivity, and βₙⁿ = n!·Ω_{2n}.
fn suite_forms(opts: &SuiteOpts) -> SuiteReport {
    let mut t = Tracker::new();
    let tol = opts.tol();
    for case in 0..opts.cases_or(100) as u64 {
        let rng = &mut SplitMix64::for_case(opts.seed, case);
        let n = 1 + rng.below(opts.dim_or(5));

        // reality of the form ⟺ J·conj(M) = M·J for its coefficient matrix
        let real = rng::real_two_form(rng, n);
        let skewed = rng::two_form(rng, n);
        for (f, expect_real) in [(&real, true), (&skewed, false)] {
            let is_real = is_real_form(f, tol).expect("grade 2");
            let m = form_to_matrix(f).expect("grade 2");
            let j = j_matrix(n);
            let residual = j.mul(&m.conj()).max_abs_diff(&m.mul(&j));
            let matrix_real = residual <= tol;
            t.check_bool(is_real == expect_real && matrix_real == expect_real);
        }

        // normalization: τ(𝓔)ᵗ M τ(𝓔) has the antidiagonal normal form
        let s = normalize_real_2form(&real, tol).expect("real 2-form");
        let res = normal_form_residual(&real, &s).expect("grade 2");
        t.check(res / (1.0 + real.max_abs()), 1e-8);
        t.check(s.e.unitary_residual().expect("square"), 1e-8);

        // hyperhermitian dictionary: diagonal signs become the ν spectrum
        let diag = QMatrix::from_fn(n, n, |r, c| {
            if r == c {
                qpluri_core::Quaternion::real(if (r + case as usize) % 2 == 0 { 2.0 } else { -1.0 })
            } else {
                qpluri_core::Quaternion::ZERO
            }
        });
        let df = hh_to_2form(&diag, tol).expect("hyperhermitian");
        let ds = normalize_real_2form(&df, tol).expect("real");
        let mut got: Vec<f64> = ds.nu.clone();
        let mut want: Vec<f64> = (0..n)
            .map(|r| if (r + case as usize) % 2 == 0 { 2.0 } else { -1.0 })
            .collect();
        got.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        let dn = got
            .iter()
            .zip(&want)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        t.check(dn, 1e-8);

        // strong positivity: elementary forms qualify, their negatives don't
        let eta = rng::qmatrix(rng, 1, n);
        let elem = elementary_strongly_positive(&[eta], n).expect("one row");
        t.check_bool(is_strongly_positive_2form(&elem, tol).expect("grade 2"));
        t.check_bool(
            !is_strongly_positive_2form(&elem.scale(Complex64::new(-1.0, 0.0)), tol)
                .expect("grade 2"),
        );

        // βₙⁿ = n!·Ω_{2n}, exactly
        let mut p = Form::scalar(n, Complex64::ONE);
        for _ in 0..n {
            p = p.wedge(&beta_n(n));
        }
        let fact = (1..=n).product::<usize>() as f64;
        let dom = p.max_abs_diff(&omega_2n(n).scale(Complex64::new(fact, 0.0)));
        t.check(dom, 0.0);
    }
    t.report("forms")
}

/// The operators d₀, d₁: d² = 0 and d₀d₁ = −d₁d₀ (exact on integer
/// coefficients, rounding-level on float coefficients), the Leibniz rule,
/// and the full ∇/z duality table.
fn suite_dops(opts: &SuiteOpts) -> SuiteReport {
    let mut t = Tracker::new();

    // the deterministic part: ∇_{Aα} z^{Bβ} = 2δ_A^B δ_α^β for n ≤ 4,
    // and ∇_{Aα}‖q‖² = 2·conj(z^{Aα}), all exactly
    for n in 1..=opts.dim_or(4) {
        let z = z_coords(n);
        let mut worst = 0.0f64;
        for a in 0..2 * n {
            for alpha in [Alpha::Zero, Alpha::One] {
                for b in 0..2 * n {
                    for beta in [Alpha::Zero, Alpha::One] {
                        let d = nabla(a, alpha, &z[b][beta as usize]);
                        let expect = if a == b && alpha == beta {
                            Polynomial::constant(4 * n, Complex64::new(2.0, 0.0))
                        } else {
                            Polynomial::zero(4 * n)
                        };
                        worst = worst.max(d.max_abs_diff(&expect));
                    }
                }
                let grad = nabla(a, alpha, &norm_sq(n));
                let zbar = z_coord(n, a, alpha).conj().scale(Complex64::new(2.0, 0.0));
                worst = worst.max(grad.max_abs_diff(&zbar));
            }
        }
        t.check(worst, 0.0);
    }

    for case in 0..opts.cases_or(50) as u64 {
        let rng = &mut SplitMix64::for_case(opts.seed, case);
        let n = 1 + rng.below(opts.dim_or(4).min(2));
        let nv = 4 * n;

        // integer-coefficient form-fields: identities hold exactly
        let field = FormField::from_terms(
            n,
            1,
            (0..2 * n as u8).map(|a| (vec![a], rng::int_polynomial(rng, nv, 3))),
        )
        .expect("valid grade-1 terms");
        for alpha in [Alpha::Zero, Alpha::One] {
            t.check(d_op(alpha, &d_op(alpha, &field)).max_coeff_abs(), 0.0);
        }
        let d01 = d_op(Alpha::Zero, &d_op(Alpha::One, &field));
        let d10 = d_op(Alpha::One, &d_op(Alpha::Zero, &field));
        t.check(d01.add(&d10).max_coeff_abs(), 0.0);

        // float coefficients: identities hold to rounding
        let float_scalar = FormField::scalar(n, rng::float_polynomial(rng, nv, 3));
        for alpha in [Alpha::Zero, Alpha::One] {
            t.check(d_op(alpha, &d_op(alpha, &float_scalar)).max_coeff_abs(), 1e-10);
        }
        let f01 = d_op(Alpha::Zero, &d_op(Alpha::One, &float_scalar));
        let f10 = d_op(Alpha::One, &d_op(Alpha::Zero, &float_scalar));
        t.check(f01.add(&f10).max_coeff_abs(), 1e-10);

        // Leibniz rule for a grade-0 into grade-1 wedge, exactly
        let g = FormField::scalar(n, rng::int_polynomial(rng, nv, 2));
        for alpha in [Alpha::Zero, Alpha::One] {
            let lhs = d_op(alpha, &g.wedge(&field));
            let rhs = d_op(alpha, &g)
                .wedge(&field)
                .add(&g.wedge(&d_op(alpha, &field)));
            let diff = lhs.add(&rhs.scale(Complex64::new(-1.0, 0.0)));
            t.check(diff.max_coeff_abs(), 0.0);
        }

        // the two Baston routes agree at points
        let u = rng::int_polynomial(rng, nv, 3);
        let x = rng::point(rng, nv, 1.0);
        let symbolic = baston_poly(&u).expect("4n variables").eval(&x);
        let sf = ScalarField::poly(u).expect("real coefficients");
        let pointwise = baston_point(&sf, &x).expect("well-formed");
        t.check(
            symbolic.max_abs_diff(&pointwise) / (1.0 + symbolic.max_abs()),
            1e-10,
        );
    }
    t.report("dops")
}

/// Δu₁∧⋯∧Δuₙ = n!·det(u₁,…,uₙ)·Ω_{2n} at random points for random
/// polynomial potentials, n up to 3.
fn suite_thm13(opts: &SuiteOpts) -> SuiteReport {
    let mut t = Tracker::new();
    let tol = opts.tol();
    let cases = opts.cases_or(30);
    let mut stream = 0u64;
    for n in 1..=opts.dim_or(3) {
        let fact = (1..=n).product::<usize>() as f64;
        for _ in 0..cases {
            let rng = &mut SplitMix64::for_case(opts.seed, stream);
            stream += 1;
            let fields: Vec<ScalarField> = (0..n)
                .map(|_| {
                    ScalarField::poly(rng::int_polynomial(rng, 4 * n, 3))
                        .expect("real coefficients")
                })
                .collect();
            for _ in 0..5 {
                let x = rng::point(rng, 4 * n, 1.0);
                let mut top = Form::scalar(n, Complex64::ONE);
                for f in &fields {
                    top = top.wedge(&baston_point(f, &x).expect("well-formed"));
                }
                let lhs = omega_ratio(&top).expect("top grade");
                let rhs = fact * ma_mixed(&fields, &x, tol).expect("hyperhermitian Hessians");
                let scale = 1.0 + rhs.abs();
                t.check((lhs.re - rhs).abs() / scale, 1e-7);
                t.check(lhs.im.abs() / scale, 1e-7);
            }
        }
    }
    t.report("thm13")
}

/// Composite Simpson quadrature on [a, b] with `intervals` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let n = intervals + intervals % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * k as f64);
    }
    acc * h / 3.0
}

/// The regularized fundamental solution: pointwise identity
/// (Δu_ε)ⁿ = 8ⁿn!·ε·(‖q‖²+ε)^{−(2n+1)}·Ω for n ∈ {1, 2}, plus the n = 1
/// total-mass oracle ∫_{ℝ⁴} 8ε(‖q‖²+ε)⁻³ = 4π².
fn suite_fundsol(opts: &SuiteOpts) -> SuiteReport {
    let mut t = Tracker::new();
    let cases = opts.cases_or(100);
    let mut stream = 0u64;
    for n in 1..=opts.dim_or(2) {
        for _ in 0..cases {
            let rng = &mut SplitMix64::for_case(opts.seed, stream);
            stream += 1;
            let eps = opts.eps.unwrap_or_else(|| rng.range(0.05, 2.0));
            let x = rng::point(rng, 4 * n, 1.5);
            let (lhs, rhs) =
                qpluri_core::baston::fundamental_check(n, eps, &x).expect("eps > 0");
            t.check((lhs - rhs).abs() / rhs.abs(), 1e-8);
        }
    }

    // total mass at ε = 1: radial quadrature over ℝ⁴ with |S³| = 2π²,
    // cutoff at R = 10³ (analytic tail < 8·10⁻⁵), against 4π²
    let integrand = |r: f64| {
        let d = r * r + 1.0;
        16.0 * core::f64::consts::PI.powi(2) * r.powi(3) / (d * d * d)
    };
    let integral = simpson(integrand, 0.0, 1.0e3, 200_000);
    let exact = 4.0 * core::f64::consts::PI.powi(2);
    t.check((integral - exact).abs() / exact, 0.01);

    t.report("fundsol")
}

/// Equivariance under quaternionic linear maps: the chain rule for ∇,
/// equivariance of d₀/d₁/Δ under GL_ℍ(2), invariance of βₙ and Ω_{2n}
/// under quaternionic unitaries, contravariant composition of the basis
/// action, and unitary invariance of the Monge-Ampère density.
fn suite_invariance(opts: &SuiteOpts) -> SuiteReport {
    let mut t = Tracker::new();
    for case in 0..opts.cases_or(50) as u64 {
        let rng = &mut SplitMix64::for_case(opts.seed, case);

        // chain rule and operator equivariance on degree-≤4 polynomials
        let u = rng::gl_quaternion(rng, 2);
        let p = rng::int_polynomial(rng, 8, 4);
        let e = FieldExpr::from_polynomial(&p).expect("real coefficients");
        let x = rng::point(rng, 8, 0.5);
        t.check(chain_rule_check(&u, &e, &x).expect("well-formed"), 1e-9);
        for which in [OperatorKind::D0, OperatorKind::D1, OperatorKind::Baston] {
            t.check(invariance_check(&u, &e, &x, which).expect("invertible"), 1e-8);
        }

        // βₙ and Ω_{2n} are fixed by quaternionic unitaries
        let v = rng::unitary_quaternion(rng, 3);
        let change = basis_change(&v).expect("unitary");
        let beta = beta_n(3);
        let tb = act_matrix_on_form(&change, &beta).expect("dimensions match");
        t.check(tb.max_abs_diff(&beta), 1e-10);
        let omega = omega_2n(3);
        let to = act_matrix_on_form(&change, &omega).expect("dimensions match");
        t.check(to.max_abs_diff(&omega), 1e-10);

        // contravariant composition of the coefficient action
        let u2 = rng::gl_quaternion(rng, 2);
        let f = rng::two_form(rng, 2);
        let once = act_matrix_on_form(&basis_change(&u.mul(&u2)).expect("invertible"), &f)
            .expect("dimensions match");
        let step = act_matrix_on_form(&basis_change(&u).expect("invertible"), &f)
            .expect("dimensions match");
        let twice = act_matrix_on_form(&basis_change(&u2).expect("invertible"), &step)
            .expect("dimensions match");
        let cscale = (1.0 + u.max_abs()) * (1.0 + u2.max_abs());
        t.check(once.max_abs_diff(&twice) / (cscale * cscale * (1.0 + f.max_abs())), 1e-10);

        // unitary invariance of the mixed Monge-Ampère density on quadratics
        let w = rng::unitary_quaternion(rng, 2);
        let us: Vec<FieldExpr> = (0..2)
            .map(|_| {
                FieldExpr::from_polynomial(&rng::int_polynomial(rng, 8, 2))
                    .expect("real coefficients")
            })
            .collect();
        let pulled: Vec<ScalarField> = us
            .iter()
            .map(|e| ScalarField::expr(8, pullback_field(&w, e)).expect("coords in range"))
            .collect();
        let originals: Vec<ScalarField> = us
            .iter()
            .map(|e| ScalarField::expr(8, e.clone()).expect("coords in range"))
            .collect();
        let wx = apply_to_point(&w, &x);
        let lhs = ma_mixed(&pulled, &x, 1e-7).expect("hyperhermitian Hessians");
        let rhs = ma_mixed(&originals, &wx, 1e-7).expect("hyperhermitian Hessians");
        t.check((lhs - rhs).abs() / (1.0 + rhs.abs()), 1e-7);

        // the quaternionic Hessian transforms by 𝓤*·H·𝓤 under pullback
        let hu = quaternionic_hessian(
            &ScalarField::expr(8, pullback_field(&w, &us[0])).expect("coords in range"),
            &x,
        )
        .expect("well-formed");
        let h = quaternionic_hessian(&originals[0], &wx).expect("well-formed");
        let conjugated = w.adjoint().mul(&h).mul(&w);
        t.check(hu.max_abs_diff(&conjugated) / (1.0 + h.max_abs()), 1e-8);
    }
    t.report("invariance")
}
