//! The square-system obstruction, certified across degrees in both
//! arithmetic routes.

use trimass::dubiner::triangle_rule;
use trimass::exact::rat_to_f64;
use trimass::nonexistence::{
    certify, certify_exact, compute_h, constraint_matrix, constraint_matrix_exact, hatted_grams,
    report_line, MAX_FLOAT_DEGREE, RESIDUAL_MAX_DEGREE, RESIDUAL_TOL, SINGULAR_VALUE_RTOL,
};

#[test]
fn float_certificates_hold_through_the_supported_range() {
    for p in 2..=MAX_FLOAT_DEGREE {
        let cert = certify(p).unwrap();
        let expected = p * (p - 1) / 2;
        assert_eq!(cert.expected_rank, expected);
        assert_eq!(cert.rows, expected, "p = {p}");
        assert_eq!(cert.cols, expected, "p = {p}");
        assert!(cert.weighted_spd, "p = {p}");
        assert!(cert.min_eig_weighted > 0.0, "p = {p}");
        assert!(
            cert.min_singular_value > SINGULAR_VALUE_RTOL * cert.norm,
            "p = {p}: min sv {} vs norm {}",
            cert.min_singular_value,
            cert.norm
        );
        if p <= RESIDUAL_MAX_DEGREE {
            assert!(
                cert.factor_residual <= RESIDUAL_TOL,
                "p = {p}: residual {}",
                cert.factor_residual
            );
        }
        assert!(cert.pass, "p = {p}");
        let line = report_line(&cert);
        assert!(line.contains(&format!("p={p} pass")), "{line}");
    }
}

#[test]
fn exact_certificate_beyond_the_float_range() {
    let cert = certify_exact(8).unwrap();
    assert_eq!(cert.expected_rank, 28);
    assert_eq!(cert.rank, 28);
    assert!(cert.weighted_spd);
    assert!(cert.identity_holds);
    assert!(cert.pass);
}

#[test]
fn float_and_exact_constraint_matrices_agree() {
    for p in [3, 5] {
        let rule = triangle_rule(p + 2).unwrap();
        let float = constraint_matrix(p, &rule).unwrap();
        let exact = constraint_matrix_exact(p);
        for i in 0..exact.len() {
            for j in 0..exact[i].len() {
                let diff = (float[(i, j)] - rat_to_f64(&exact[i][j])).abs();
                assert!(diff <= 1e-13, "p = {p}, ({i}, {j})");
            }
        }
    }
}

#[test]
fn factorization_reconstructs_the_constraint_matrix() {
    for p in 2..=6 {
        let rule = triangle_rule(p + 2).unwrap();
        let c = constraint_matrix(p, &rule).unwrap();
        let h = compute_h(p, &rule).unwrap();
        let grams = hatted_grams(p, &rule).unwrap();
        let product = h.matmul(&grams.weighted);
        assert!(
            c.max_abs_diff(&product) <= RESIDUAL_TOL,
            "p = {p}: residual {}",
            c.max_abs_diff(&product)
        );
    }
}
