mod common;

use bianchi_core::exact_linalg::{
    cokernel, elementary_divisors, homology, kernel, rank, snf, FgAbelianGroup, IntMatrix,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_dim: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-range..=range, r * c).prop_map(move |xs| {
            IntMatrix::from_vec(r, c, xs.into_iter().map(BigInt::from).collect())
        })
    })
}

fn is_unimodular(m: &IntMatrix) -> bool {
    common::det(&common::entries(m)).abs().is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn snf_postconditions(m in matrix(6, 9)) {
        let s = snf(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(is_unimodular(&s.u));
        prop_assert!(is_unimodular(&s.v));
        prop_assert_eq!(s.v.mul(s.v_inverse()), IntMatrix::identity(m.cols()));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let ds = s.divisors();
        prop_assert_eq!(ds.len(), s.rank());
        for w in ds.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(ds.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn divisors_match_minor_gcds(m in matrix(5, 6)) {
        prop_assert_eq!(elementary_divisors(&m), common::divisors_by_minors(&m));
    }

    #[test]
    fn transpose_preserves_divisors(m in matrix(6, 9)) {
        prop_assert_eq!(elementary_divisors(&m), elementary_divisors(&m.transpose()));
    }

    #[test]
    fn rank_nullity(m in matrix(6, 5)) {
        let k = kernel(&m);
        prop_assert!(k.is_free());
        prop_assert_eq!(k.free_rank() + rank(&m), m.cols());
        let c = cokernel(&m);
        prop_assert_eq!(c.free_rank() + rank(&m), m.rows());
        let basis = snf(&m).kernel_basis();
        prop_assert!(m.mul(&basis).is_zero());
    }

    #[test]
    fn homology_of_composable_pair(a in matrix(4, 3), b_cols in 0usize..4) {
        // d_out = a, d_in = kernel basis times a random-ish combination
        let basis = snf(&a).kernel_basis();
        let mut comb = IntMatrix::zeros(basis.cols(), b_cols);
        for i in 0..basis.cols() {
            for j in 0..b_cols {
                comb[(i, j)] = BigInt::from(((i * 7 + j * 3) % 5) as i64 - 2);
            }
        }
        let d_in = basis.mul(&comb);
        let h = homology(&a, &d_in).unwrap();
        // free rank by rank-nullity over Q
        prop_assert_eq!(h.free_rank(), a.cols() - rank(&a) - rank(&d_in));
    }

    #[test]
    fn group_strings_round_trip(free in 0usize..4, orders in proptest::collection::vec(0i64..30, 0..4)) {
        let g = FgAbelianGroup::from_cyclic_orders(free, orders.into_iter().map(BigInt::from));
        let back: FgAbelianGroup = g.to_string().parse().unwrap();
        prop_assert_eq!(back, g);
    }
}

#[test]
fn circle_and_projective_plane() {
    // circle: one vertex, one loop
    let d1 = IntMatrix::from_rows(&[[0]]);
    let d2 = IntMatrix::zeros(1, 0);
    assert_eq!(cokernel(&d1), FgAbelianGroup::free(1));
    assert_eq!(homology(&d1, &d2).unwrap(), FgAbelianGroup::free(1));
    // RP^2: one cell per dimension, attaching degree 2
    let d1 = IntMatrix::from_rows(&[[0]]);
    let d2 = IntMatrix::from_rows(&[[2]]);
    assert_eq!(homology(&d1, &d2).unwrap(), FgAbelianGroup::cyclic(2));
    assert!(kernel(&d2).is_zero());
}

#[test]
fn large_entries_stay_exact() {
    let big = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
    let m = IntMatrix::from_vec(
        2,
        2,
        vec![big.clone(), BigInt::zero(), BigInt::zero(), big.clone() * 3],
    );
    assert_eq!(elementary_divisors(&m), vec![big.clone(), big * 3]);
}
