use proptest::prelude::*;
use siegel_core::elliptic::{delta, eisenstein};
use siegel_core::formal_fj::reduce_form;
use siegel_core::jacobi::{canonicalize, discriminant};
use siegel_core::linalg::{echelonize, in_rowspace, nullspace, rat, CoeffVector};

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<CoeffVector<usize>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), 0..=rows).prop_map(|rows| {
        rows.into_iter()
            .map(|row| row.into_iter().enumerate().map(|(j, x)| (j, rat(x))).collect())
            .collect()
    })
}

proptest! {
    #[test]
    fn echelonize_is_idempotent_and_spans(rows in matrix(6, 5)) {
        let basis = echelonize(rows.clone());
        prop_assert_eq!(echelonize(basis.rows().to_vec()), basis.clone());
        for row in &rows {
            prop_assert!(in_rowspace(row, &basis).is_some());
        }
        let mut reversed = rows.clone();
        reversed.reverse();
        prop_assert_eq!(echelonize(reversed), basis);
    }

    #[test]
    fn nullspace_annihilates_and_counts(rows in matrix(5, 8)) {
        let unknowns: Vec<usize> = (0..8).collect();
        let ns = nullspace(&rows, &unknowns);
        let rank = echelonize(rows.clone()).rank();
        prop_assert_eq!(rank + ns.rank(), 8);
        for v in ns.rows() {
            for row in &rows {
                prop_assert!(row.dot(v) == rat(0));
            }
        }
    }

    #[test]
    fn residual_is_nonzero_off_span(rows in matrix(4, 6), extra in 0usize..6) {
        let basis = echelonize(rows);
        let reduction = basis.reduce(&CoeffVector::unit(extra));
        let mut rebuilt = reduction.residual.clone();
        for (c, row) in reduction.witness.iter().zip(basis.rows()) {
            rebuilt.add_scaled(c, row);
        }
        prop_assert_eq!(rebuilt, CoeffVector::unit(extra));
        prop_assert_eq!(reduction.is_member(), basis.contains(&CoeffVector::unit(extra)));
    }

    #[test]
    fn canonicalize_is_a_projection(n in -5i64..20, r in -40i64..40, m in 1i64..8) {
        let (cn, cr) = canonicalize(n, r, m);
        prop_assert!((0..=m).contains(&cr));
        prop_assert_eq!(discriminant(cn, cr, m), discriminant(n, r, m));
        prop_assert_eq!(canonicalize(cn, cr, m), (cn, cr));
        prop_assert_eq!(canonicalize(n, -r, m), (cn, cr));
        prop_assert_eq!(canonicalize(n + r + m, r + 2 * m, m), (cn, cr));
    }

    #[test]
    fn reduction_is_gl2_invariant(n in 0i64..15, m in 0i64..15, r in -30i64..30, lambda in -3i64..3) {
        prop_assume!(4 * n * m >= r * r);
        let base = reduce_form(n, r, m);
        // T -> U^t T U with U = [[1, lambda], [0, 1]]
        prop_assert_eq!(reduce_form(n, r + 2 * lambda * n, m + lambda * r + lambda * lambda * n), base);
        prop_assert_eq!(reduce_form(m, r, n), base);
        prop_assert_eq!(reduce_form(n, -r, m), base);
    }
}

#[test]
fn discriminant_identity_for_many_precisions() {
    for b in 1..=20 {
        let e4 = eisenstein(4, b).unwrap();
        let e6 = eisenstein(6, b).unwrap();
        let lhs = e4.pow(3).sub(&e6.pow(2)).unwrap();
        assert_eq!(lhs, delta(b).scale(&rat(1728)), "B = {b}");
    }
}
