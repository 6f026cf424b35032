use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use wittlab::exact::{smith_normal_form, solve_integer_linear, IntMatrix};
use wittlab::tate::PresentedAbGroup;

fn matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-50i64..=50, c), r))
}

fn sparse_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![4 => Just(0i64), 1 => -50i64..=50], c), r)
    })
}

fn check(rows: &[Vec<i64>]) {
    let a = IntMatrix::from_rows(rows);
    let sd = smith_normal_form(&a);
    assert_eq!(sd.u.mul(&a).mul(&sd.v), sd.d());
    assert_eq!(sd.u.mul(&sd.u_inv), IntMatrix::identity(a.rows()));
    let inv = sd.invariant_factors();
    assert!(inv.iter().all(|d| d > &BigInt::zero()));
    for w in inv.windows(2) {
        assert!(w[1].is_multiple_of(&w[0]), "{} does not divide {}", w[0], w[1]);
    }
    for k in sd.kernel_basis() {
        assert!(a.mul_vec(&k).iter().all(|x| x.is_zero()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn snf_small(rows in matrix(8)) {
        check(&rows);
    }

    #[test]
    fn snf_sparse_large(rows in sparse_matrix(40)) {
        check(&rows);
    }

    #[test]
    fn solve_recovers_solution(rows in matrix(6), seed in prop::collection::vec(-9i64..=9, 6)) {
        let a = IntMatrix::from_rows(&rows);
        let x: Vec<BigInt> = seed.iter().take(a.cols()).map(|&v| BigInt::from(v)).chain(std::iter::repeat(BigInt::zero())).take(a.cols()).collect();
        let b = a.mul_vec(&x);
        let y = solve_integer_linear(&a, &b).expect("b is in the image");
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    #[test]
    fn presented_group_order(diag in prop::collection::vec(1i64..=12, 1..5), mix in -3i64..=3) {
        let n = diag.len();
        let mut rels: Vec<Vec<(usize, BigInt)>> = diag.iter().enumerate().map(|(i, &d)| vec![(i, BigInt::from(d))]).collect();
        if n > 1 {
            // a redundant relation must not change the group
            let extra = vec![(0, BigInt::from(diag[0] * mix)), (1, BigInt::from(diag[1]))];
            rels.push(extra);
        }
        let g = PresentedAbGroup::new(n, rels);
        let expect: BigInt = diag.iter().map(|&d| BigInt::from(d)).product();
        prop_assert_eq!(g.order(), Some(expect));
        let product: BigInt = g.invariant_factors().iter().product();
        prop_assert_eq!(product, g.order().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn snf_dense_40x40(rows in prop::collection::vec(prop::collection::vec(-50i64..=50, 40), 40)) {
        check(&rows);
    }
}

#[test]
fn snf_full_40x40() {
    let rows: Vec<Vec<i64>> = (0..40).map(|i| (0..40).map(|j| ((i * 37 + j * 11 + i * j) % 101) - 50).collect()).collect();
    check(&rows);
}

#[test]
fn known_invariant_factors() {
    let a = IntMatrix::from_rows(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let sd = smith_normal_form(&a);
    let got: Vec<BigInt> = sd.invariant_factors().to_vec();
    assert_eq!(got, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    assert!(IntMatrix::identity(1).row(0)[0].is_one());
}
