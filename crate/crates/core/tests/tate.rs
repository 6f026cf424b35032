use num_bigint::BigInt;
use proptest::prelude::*;
use wittlab::tate::maps::{frob_f, restrict_r, teich_t, ver_v, w_on_map};
use wittlab::tate::{GroupMap, WittSpace, DEFAULT_LIMIT};
use wittlab::Error;

fn map(p: u64, d: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0..p as i64, d), d)
}

fn compose(p: i64, f: &[Vec<i64>], g: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = f.len();
    (0..d).map(|i| (0..d).map(|j| (0..d).map(|k| f[i][k] * g[k][j]).sum::<i64>() % p).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn w2_is_a_functor(f in map(2, 2), g in map(2, 2)) {
        let w = WittSpace::q(2, 2, 2, DEFAULT_LIMIT).unwrap();
        let lhs = w_on_map(&compose(2, &f, &g), &w, &w).unwrap();
        let rhs = w_on_map(&f, &w, &w).unwrap().compose(&w_on_map(&g, &w, &w).unwrap());
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn operators_are_natural(f in map(2, 2)) {
        let w2 = WittSpace::q(2, 2, 2, DEFAULT_LIMIT).unwrap();
        let w1 = WittSpace::q(2, 1, 2, DEFAULT_LIMIT).unwrap();
        let wide = WittSpace::q(2, 1, 4, DEFAULT_LIMIT).unwrap();
        let f2 = w_on_map(&f, &w2, &w2).unwrap();
        let f1 = w_on_map(&f, &w1, &w1).unwrap();
        let ff: Vec<Vec<i64>> = (0..4).map(|r| (0..4).map(|c| f[r / 2][c / 2] * f[r % 2][c % 2]).collect()).collect();
        let fw = w_on_map(&ff, &wide, &wide).unwrap();
        let r = restrict_r(&w2, &w1, DEFAULT_LIMIT).unwrap();
        prop_assert!(r.compose(&f2).equals(&f1.compose(&r)));
        let fr = frob_f(&w2, &wide).unwrap();
        prop_assert!(fr.compose(&f2).equals(&fw.compose(&fr)));
        let v = ver_v(&wide, &w2).unwrap();
        prop_assert!(v.compose(&fw).equals(&f2.compose(&v)));
    }

    #[test]
    fn teichmuller_is_natural(f in map(3, 2), m in prop::collection::vec(0u64..3, 2)) {
        let w = WittSpace::q(3, 1, 2, DEFAULT_LIMIT).unwrap();
        let image: Vec<u64> = (0..2).map(|i| (0..2).map(|j| f[i][j] as u64 * m[j]).sum::<u64>() % 3).collect();
        let lhs = w_on_map(&f, &w, &w).unwrap().apply(&teich_t(&w, &m));
        prop_assert!(w.group.is_zero(&w.group.add(&lhs, &w.group.scale(&teich_t(&w, &image), &BigInt::from(-1)))));
    }
}

#[test]
fn known_orders() {
    let cases = [(2u64, 1u32, 1u64, 2u64), (2, 2, 1, 4), (2, 1, 2, 4), (2, 2, 2, 32), (3, 1, 2, 9)];
    for (p, n, d, order) in cases {
        let w = WittSpace::q(p, n, d, DEFAULT_LIMIT).unwrap();
        assert_eq!(w.group.order(), Some(BigInt::from(order)), "W_{n}(F_{p}^{d})");
    }
}

#[test]
fn resource_limit_is_loud() {
    match WittSpace::q(2, 3, 4, DEFAULT_LIMIT) {
        Err(Error::ResourceLimit { requested, limit }) => {
            assert_eq!(requested, 65536);
            assert_eq!(limit, DEFAULT_LIMIT);
        }
        other => panic!("expected a resource error, got {other:?}"),
    }
}

#[test]
fn identity_map_is_identity() {
    let w = WittSpace::q(3, 1, 3, DEFAULT_LIMIT).unwrap();
    let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    assert!(w_on_map(&id, &w, &w).unwrap().equals(&GroupMap::identity(w.group.clone())));
}
