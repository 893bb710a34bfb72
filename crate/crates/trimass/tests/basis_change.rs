//! Structure-respecting basis transforms: the block inverse against a dense
//! factorization, and transformed evaluation.

use proptest::prelude::*;
use trimass::changebasis::{structure, ChangeOfBasis, EntryRule, ExactChangeOfBasis};
use trimass::dubiner::{RefPoint, ReferenceBasis};
use trimass::exact::{rat, rat_int, rat_mat_mul, rat_to_f64};
use trimass::linalg::Mat;
use trimass::{BasisOrdering, Error};

const ORDERINGS: [BasisOrdering; 2] = [BasisOrdering::ModeMajor, BasisOrdering::EdgeMajor];

/// Fill every Free slot from the iterator, One on the marked diagonal.
/// A positive bump on in-edge diagonal blocks keeps them invertible.
fn fill(p: usize, ordering: BasisOrdering, values: &mut impl Iterator<Item = f64>) -> Mat {
    let rules = structure(p, ordering);
    let n = rules.len();
    let mut m = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = match rules[i][j] {
                EntryRule::Zero => 0.0,
                EntryRule::One => 1.0,
                EntryRule::Free => {
                    let v = values.next().unwrap();
                    if i == j {
                        v + 3.0
                    } else {
                        v
                    }
                }
            };
        }
    }
    m
}

#[test]
fn identity_transform_round_trips_evaluation() {
    for ordering in ORDERINGS {
        let basis = ReferenceBasis::with_ordering(3, ordering).unwrap();
        let transform = ChangeOfBasis::identity(3, ordering);
        let pt = RefPoint::new(-0.3, -0.2);
        let plain = basis.eval(pt).unwrap();
        let mapped = transform.eval_psi(&basis, pt).unwrap();
        for (a, b) in plain.iter().zip(&mapped) {
            assert!((a - b).abs() <= 1e-15);
        }
    }
}

#[test]
fn rejects_entries_outside_the_pattern() {
    let mut m = ChangeOfBasis::identity(3, BasisOrdering::ModeMajor)
        .matrix()
        .clone();
    // vertex row of the opposite edge must stay zero
    m[(0, 3)] = 0.5;
    let err = ChangeOfBasis::new(3, BasisOrdering::ModeMajor, m).unwrap_err();
    assert!(matches!(err, Error::Structure { row: 0, col: 3, .. }));
}

#[test]
fn ordering_mismatch_is_reported() {
    let basis = ReferenceBasis::with_ordering(3, BasisOrdering::EdgeMajor).unwrap();
    let transform = ChangeOfBasis::identity(3, BasisOrdering::ModeMajor);
    let err = transform.eval_psi(&basis, RefPoint::new(-0.5, -0.5)).unwrap_err();
    assert!(matches!(err, Error::OrderingMismatch { .. }));
}

#[test]
fn exact_block_inverse_is_a_two_sided_inverse() {
    for ordering in ORDERINGS {
        for p in 2..=4 {
            let rules = structure(p, ordering);
            let n = rules.len();
            let mut mat = vec![vec![rat_int(0); n]; n];
            let mut tick = 0i64;
            for i in 0..n {
                for j in 0..n {
                    mat[i][j] = match rules[i][j] {
                        EntryRule::Zero => rat_int(0),
                        EntryRule::One => rat_int(1),
                        EntryRule::Free => {
                            tick += 1;
                            if i == j {
                                rat_int(3) + rat(tick % 7 - 3, 2)
                            } else {
                                rat(tick % 11 - 5, 3)
                            }
                        }
                    };
                }
            }
            let transform = ExactChangeOfBasis::new(p, ordering, mat.clone()).unwrap();
            let inverse = transform.block_inverse().unwrap();
            let product = rat_mat_mul(&mat, &inverse);
            for i in 0..n {
                for j in 0..n {
                    let expected = rat_int(if i == j { 1 } else { 0 });
                    assert_eq!(product[i][j], expected, "p = {p}, {ordering}, ({i}, {j})");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn block_inverse_matches_dense_inverse(
        raw in proptest::collection::vec(-1.0f64..1.0, 200),
        p in 3usize..=4,
        which in 0usize..2,
    ) {
        let ordering = ORDERINGS[which];
        let mut values = raw.into_iter().cycle();
        let m = fill(p, ordering, &mut values);
        let transform = ChangeOfBasis::new(p, ordering, m.clone()).unwrap();
        let blockwise = transform.block_inverse().unwrap();
        let dense = m.inverse().unwrap();
        let scale = dense.max_abs().max(1.0);
        prop_assert!(
            blockwise.max_abs_diff(&dense) <= 1e-12 * scale,
            "p = {}, {}", p, ordering
        );
    }

    #[test]
    fn transformed_evaluation_is_the_matrix_action(
        raw in proptest::collection::vec(-1.0f64..1.0, 200),
        a in 0.0f64..1.0,
        b in 0.0f64..1.0,
    ) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let pt = RefPoint::new(-1.0 + 2.0 * lo, -1.0 + 2.0 * (hi - lo));
        let ordering = BasisOrdering::ModeMajor;
        let basis = ReferenceBasis::with_ordering(3, ordering).unwrap();
        let mut values = raw.into_iter().cycle();
        let m = fill(3, ordering, &mut values);
        let transform = ChangeOfBasis::new(3, ordering, m.clone()).unwrap();
        let plain = basis.eval(pt).unwrap();
        let mapped = transform.eval_psi(&basis, pt).unwrap();
        for i in 0..plain.len() {
            let direct: f64 = (0..plain.len()).map(|j| m[(i, j)] * plain[j]).sum();
            prop_assert!((mapped[i] - direct).abs() <= 1e-13);
        }
    }
}

#[test]
fn float_of_exact_identity_is_float_identity() {
    let exact = ExactChangeOfBasis::identity(3, BasisOrdering::ModeMajor);
    let float = exact.to_float();
    let id = ChangeOfBasis::identity(3, BasisOrdering::ModeMajor);
    assert!(float.matrix().max_abs_diff(id.matrix()) == 0.0);
    for (row, entries) in exact.matrix().iter().enumerate() {
        for (col, entry) in entries.iter().enumerate() {
            let expected = if row == col { 1.0 } else { 0.0 };
            assert_eq!(rat_to_f64(entry), expected);
        }
    }
}
