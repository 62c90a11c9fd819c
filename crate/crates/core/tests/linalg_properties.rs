use coincidence_core::linalg::{
    cokernel_elements, cokernel_order, determinant, elementary_divisors_via_minors, kernel_basis,
    rank, smith_normal_form,
};
use coincidence_core::{Cardinal, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (0..=max_rows, 0..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |xs| IntMatrix::from_fn(r, c, |i, j| BigInt::from(xs[i * c + j])))
    })
}

/// Mostly low-rank matrices: a product of two thin random factors.
fn low_rank_matrix() -> impl Strategy<Value = IntMatrix> {
    (1..=5usize, 1..=5usize, 1..=3usize).prop_flat_map(|(r, c, k)| {
        (
            prop::collection::vec(-4i64..=4, r * k),
            prop::collection::vec(-4i64..=4, k * c),
        )
            .prop_map(move |(a, b)| {
                let a = IntMatrix::from_fn(r, k, |i, j| BigInt::from(a[i * k + j]));
                let b = IntMatrix::from_fn(k, c, |i, j| BigInt::from(b[i * c + j]));
                a.checked_mul(&b).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn smith_form_reconstructs(m in matrix(6, 6, 20)) {
        let r = smith_normal_form(&m);
        prop_assert_eq!(r.s.checked_mul(&m).unwrap().checked_mul(&r.t).unwrap(), r.d.clone());
        prop_assert!(determinant(&r.s).unwrap().abs().is_one());
        prop_assert!(determinant(&r.t).unwrap().abs().is_one());
        for (i, d) in r.divisors.iter().enumerate() {
            prop_assert!(d.is_positive());
            prop_assert_eq!(&r.d[(i, i)], d);
        }
        for w in r.divisors.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j || i >= r.divisors.len() {
                    prop_assert!(r.d[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn smith_divisors_match_minors(m in matrix(6, 6, 20)) {
        prop_assert_eq!(smith_normal_form(&m).divisors, elementary_divisors_via_minors(&m));
    }

    #[test]
    fn smith_divisors_match_minors_low_rank(m in low_rank_matrix()) {
        let r = smith_normal_form(&m);
        prop_assert_eq!(&r.divisors, &elementary_divisors_via_minors(&m));
        prop_assert_eq!(r.rank(), rank(&m));
    }

    #[test]
    fn cokernel_infinite_iff_rank_deficient(m in low_rank_matrix()) {
        prop_assert_eq!(cokernel_order(&m) == Cardinal::Infinite, rank(&m) < m.rows());
    }

    #[test]
    fn square_cokernel_is_abs_det(m in matrix(5, 0, 9).prop_flat_map(|m| {
        let n = m.rows();
        prop::collection::vec(-9i64..=9, n * n)
            .prop_map(move |xs| IntMatrix::from_fn(n, n, |i, j| BigInt::from(xs[i * n + j])))
    })) {
        let det = determinant(&m).unwrap();
        if det.is_zero() {
            prop_assert_eq!(cokernel_order(&m), Cardinal::Infinite);
        } else {
            prop_assert_eq!(cokernel_order(&m), Cardinal::from_abs(&det));
        }
    }

    #[test]
    fn zero_columns_do_not_change_cokernel(m in matrix(4, 4, 9), extra in 1..4usize) {
        let padded = m.hstack(&IntMatrix::zeros(m.rows(), extra)).unwrap();
        prop_assert_eq!(cokernel_order(&padded), cokernel_order(&m));
    }

    #[test]
    fn enumeration_matches_cokernel_order(m in matrix(3, 4, 6)) {
        let order = cokernel_order(&m);
        let listed = cokernel_elements(&m, 1000);
        match order {
            Cardinal::Infinite => prop_assert!(listed.unwrap().is_none()),
            Cardinal::Finite(n) if n <= 1000u32.into() => {
                let elements = listed.unwrap().unwrap();
                prop_assert_eq!(Cardinal::from(elements.len() as u64), Cardinal::Finite(n));
            }
            Cardinal::Finite(_) => prop_assert!(listed.is_err()),
        }
    }

    #[test]
    fn kernel_basis_is_saturated_and_complete(m in low_rank_matrix()) {
        let basis = kernel_basis(&m);
        prop_assert_eq!(basis.len(), m.cols() - rank(&m));
        for v in &basis {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        if !basis.is_empty() {
            // saturated: the basis vectors have unit elementary divisors
            let b = IntMatrix::from_columns(m.cols(), &basis).unwrap();
            prop_assert!(smith_normal_form(&b).divisors.iter().all(One::is_one));
        }
    }
}
