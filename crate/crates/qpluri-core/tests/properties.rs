//! Property-based tests: randomized algebraic identities that every
//! building block must satisfy, with tolerances scaled to the data.

use num_complex::Complex64;
use proptest::prelude::*;

use qpluri_core::baston::{baston_point, baston_poly, quaternionic_hessian};
use qpluri_core::exterior::{
    act_matrix_on_form, delta_n, matrix_to_2form, normal_form_residual, normalize_real_2form,
    reality_residual, rho_j, Form,
};
use qpluri_core::fields::{nabla, Alpha, FieldExpr, Polynomial, ScalarField};
use qpluri_core::moore::{diagonalize_hyperhermitian, mixed_discriminant, moore_det};
use qpluri_core::tau::{is_tau_image, real_rep, real_vec, tau, tau_inverse};
use qpluri_core::transforms::{chain_rule_check, invariance_check, OperatorKind};
use qpluri_core::{j_matrix, QMatrix, Quaternion};

fn coef() -> impl Strategy<Value = f64> {
    -2.0..2.0f64
}

fn quat() -> impl Strategy<Value = Quaternion> {
    (coef(), coef(), coef(), coef()).prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
}

fn qmatrix(n: usize) -> impl Strategy<Value = QMatrix> {
    proptest::collection::vec(quat(), n * n)
        .prop_map(move |v| QMatrix::from_vec(n, n, v).unwrap())
}

/// 𝓐 + 𝓐* is hyperhermitian with exactly zero residual in IEEE arithmetic.
fn hyperhermitian(n: usize) -> impl Strategy<Value = QMatrix> {
    qmatrix(n).prop_map(|a| a.add(&a.adjoint()))
}

fn complexes(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    proptest::collection::vec((coef(), coef()).prop_map(|(r, i)| Complex64::new(r, i)), len)
}

/// A random 2-form on ℂ^{2n}, via the skew part of a random matrix.
fn two_form(n: usize) -> impl Strategy<Value = Form> {
    complexes(2 * n * 2 * n).prop_map(move |v| {
        let m = qpluri_core::CMatrix::from_vec(2 * n, 2 * n, v).unwrap();
        let skew = m.sub(&m.transpose()).scale(Complex64::new(0.5, 0.0));
        matrix_to_2form(&skew, 0.0).unwrap()
    })
}

/// A random real polynomial on ℝ^{4n} with small integer coefficients and
/// total degree at most `max_deg` (each term is a product of that many
/// coordinate factors), keeping pullbacks and jets at O(1) magnitudes.
fn real_poly(n: usize, max_deg: usize) -> impl Strategy<Value = Polynomial> {
    let term = (proptest::collection::vec(0..4 * n, 0..=max_deg), -3i32..=3);
    proptest::collection::vec(term, 1..6).prop_map(move |ts| {
        Polynomial::from_terms(
            4 * n,
            ts.into_iter().map(|(vars, c)| {
                let mut exp = vec![0u32; 4 * n];
                for v in vars {
                    exp[v] += 1;
                }
                (exp, Complex64::new(c as f64, 0.0))
            }),
        )
        .unwrap()
    })
}

fn point(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-1.0..1.0f64, dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tau_is_multiplicative_and_star_preserving(a in qmatrix(2), b in qmatrix(2)) {
        let lhs = tau(&a.mul(&b));
        let rhs = tau(&a).mul(&tau(&b));
        let scale = tau(&a).max_abs() * tau(&b).max_abs() + 1.0;
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-13 * scale);

        prop_assert_eq!(tau(&a.adjoint()).max_abs_diff(&tau(&a).adjoint()), 0.0);
        prop_assert!(is_tau_image(&tau(&a), 0.0).unwrap());
        prop_assert_eq!(tau_inverse(&tau(&a), 0.0).unwrap().max_abs_diff(&a), 0.0);
    }

    #[test]
    fn real_representation_is_multiplicative(a in qmatrix(2), b in qmatrix(2), v in proptest::collection::vec(quat(), 2)) {
        let lhs = real_rep(&a.mul(&b));
        let rhs = real_rep(&a).mul(&real_rep(&b));
        let scale = a.max_abs() * b.max_abs() + 1.0;
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-13 * scale);

        // vectors: (𝓐q)^ℝ = 𝓐^ℝ q^ℝ
        let av = a.mul_vec(&v);
        let lhs = real_vec(&av);
        let rhs = real_rep(&a).mul_vec(&real_vec(&v));
        for (x, y) in lhs.iter().zip(&rhs) {
            prop_assert!((x - y).abs() <= 1e-13 * scale);
        }
    }

    #[test]
    fn diagonalization_reconstructs(m in hyperhermitian(3)) {
        let s = diagonalize_hyperhermitian(&m, 1e-9).unwrap();
        let scale = m.max_abs() + 1.0;

        // 𝓔 is unitary and 𝓜𝓔 = 𝓔·diag(ν)
        prop_assert!(s.e.unitary_residual().unwrap() <= 1e-8);
        let me = m.mul(&s.e);
        let mut ed = s.e.clone();
        for c in 0..3 {
            for r in 0..3 {
                ed.set(r, c, ed.get(r, c) * s.nu[c]);
            }
        }
        prop_assert!(me.max_abs_diff(&ed) <= 1e-8 * scale);

        // the Moore determinant is the eigenvalue product, and squares to
        // the complex determinant of the embedding
        let det = moore_det(&m, 1e-9).unwrap();
        let prod: f64 = s.nu.iter().product();
        prop_assert!((det - prod).abs() <= 1e-7 * (1.0 + prod.abs()));
        let dc = tau(&m).det().unwrap();
        prop_assert!((dc.re - det * det).abs() <= 1e-6 * (1.0 + det * det));
        prop_assert!(dc.im.abs() <= 1e-7 * (1.0 + det * det));
    }

    #[test]
    fn wedge_is_associative_and_graded_commutative(f in two_form(3), g in two_form(3), h in two_form(3)) {
        let lhs = f.wedge(&g).wedge(&h);
        let rhs = f.wedge(&g.wedge(&h));
        let scale = (1.0 + f.max_abs()) * (1.0 + g.max_abs()) * (1.0 + h.max_abs());
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * scale);

        // even-grade forms commute (the two orders accumulate each
        // coefficient in a different order, so only up to rounding)
        prop_assert!(f.wedge(&g).max_abs_diff(&g.wedge(&f)) <= 1e-14 * scale);
    }

    #[test]
    fn rho_squares_to_parity_and_respects_wedge(f in two_form(2), g in two_form(2)) {
        // ρ² = (−1)^k on Λ^k; k = 2 here
        prop_assert_eq!(rho_j(&rho_j(&f)).max_abs_diff(&f), 0.0);

        // ρ is an (antilinear) algebra map
        let lhs = rho_j(&f.wedge(&g));
        let rhs = rho_j(&f).wedge(&rho_j(&g));
        let scale = f.max_abs() * g.max_abs() + 1.0;
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-13 * scale);

        // f + ρf is exactly real
        let sym = f.add(&rho_j(&f));
        prop_assert_eq!(reality_residual(&sym), 0.0);
    }

    #[test]
    fn real_two_forms_normalize(f in two_form(2)) {
        let g = f.add(&rho_j(&f));
        let s = normalize_real_2form(&g, 1e-9).unwrap();
        prop_assert!(s.e.unitary_residual().unwrap() <= 1e-8);
        prop_assert!(normal_form_residual(&g, &s).unwrap() <= 1e-7 * (1.0 + g.max_abs()));
    }

    #[test]
    fn delta_of_embedded_matrices_is_scaled_mixed_discriminant(
        m1 in hyperhermitian(2),
        m2 in hyperhermitian(2),
    ) {
        let j = j_matrix(2);
        let d = delta_n(&[tau(&m1).mul(&j), tau(&m2).mul(&j)], 1e-9).unwrap();
        let md = mixed_discriminant(&[m1.clone(), m2.clone()], 1e-9).unwrap();
        // Δ₂ = 2²·2!·mixed discriminant
        let scale = 1.0 + md.abs();
        prop_assert!((d.re - 8.0 * md).abs() <= 1e-6 * scale, "re {} vs {}", d.re, 8.0 * md);
        prop_assert!(d.im.abs() <= 1e-6 * scale);
    }

    #[test]
    fn nabla_operators_commute_on_random_polynomials(p in real_poly(2, 3)) {
        for (a, alpha) in [(0usize, Alpha::Zero), (1, Alpha::One), (3, Alpha::Zero)] {
            for (b, beta) in [(2usize, Alpha::One), (3, Alpha::Zero)] {
                let lhs = nabla(a, alpha, &nabla(b, beta, &p));
                let rhs = nabla(b, beta, &nabla(a, alpha, &p));
                prop_assert_eq!(lhs.max_abs_diff(&rhs), 0.0);
            }
        }
    }

    #[test]
    fn baston_routes_agree_on_random_polynomials(u in real_poly(2, 3), x in point(8)) {
        let symbolic = baston_poly(&u).unwrap().eval(&x);
        let sf = ScalarField::poly(u.clone()).unwrap();
        let pointwise = baston_point(&sf, &x).unwrap();
        let scale = 1.0 + symbolic.max_abs();
        prop_assert!(symbolic.max_abs_diff(&pointwise) <= 1e-11 * scale);

        // the quaternionic Hessian of a real potential is hyperhermitian
        let h = quaternionic_hessian(&sf, &x).unwrap();
        prop_assert!(h.hermitian_residual().unwrap() <= 1e-12 * scale);

        // and through the expression backend as well
        let e = FieldExpr::from_polynomial(&u).unwrap();
        let ef = ScalarField::expr(8, e).unwrap();
        let via_jets = baston_point(&ef, &x).unwrap();
        prop_assert!(symbolic.max_abs_diff(&via_jets) <= 1e-10 * scale);
    }

    #[test]
    fn chain_rule_and_equivariance_hold(
        u in qmatrix(2),
        p in real_poly(2, 3),
        x in proptest::collection::vec(-0.5..0.5f64, 8),
    ) {
        let e = FieldExpr::from_polynomial(&p).unwrap();
        prop_assert!(chain_rule_check(&u, &e, &x).unwrap() <= 1e-9);

        // equivariance needs an invertible change of variables
        let det = tau(&u).det().unwrap().norm();
        prop_assume!(det > 1e-2);
        for which in [OperatorKind::D0, OperatorKind::D1, OperatorKind::Baston] {
            prop_assert!(invariance_check(&u, &e, &x, which).unwrap() <= 1e-8);
        }
    }

    #[test]
    fn form_action_is_contravariant(a in qmatrix(2), b in qmatrix(2), f in two_form(2)) {
        let lhs = act_matrix_on_form(&tau(&a.mul(&b)), &f).unwrap();
        let step = act_matrix_on_form(&tau(&a), &f).unwrap();
        let rhs = act_matrix_on_form(&tau(&b), &step).unwrap();
        let scale = (1.0 + tau(&a).max_abs()) * (1.0 + tau(&b).max_abs()) * (1.0 + f.max_abs());
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * scale * scale);
    }
}
