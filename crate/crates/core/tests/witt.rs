use num_bigint::BigInt;
use proptest::prelude::*;
use wittlab::exact::{Integers, MultiPoly, ZMod};
use wittlab::witt::big::{big_add, big_mul, from_series, ghost_big, to_series};
use wittlab::witt::classical::{ghost, witt_add, witt_frobenius, witt_mul, witt_neg, witt_r, witt_v};
use wittlab::witt::padic::{padic_convert, padic_to_witt};
use wittlab::witt::universal::{parse_rendered, render};
use wittlab::witt::{universal_polys, BigWitt, PolyKind, WittRing, WittVector};
use wittlab::CommRing;

fn witt(p: u64, n: usize) -> impl Strategy<Value = WittVector<BigInt>> {
    prop::collection::vec(-9i64..=9, n).prop_map(move |v| WittVector::new(p, v.into_iter().map(BigInt::from).collect()))
}

fn prime_and_len() -> impl Strategy<Value = (u64, usize)> {
    (prop::sample::select(vec![2u64, 3, 5]), 1usize..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ghost_is_additive_and_multiplicative((u, v) in prime_and_len().prop_flat_map(|(p, n)| (witt(p, n), witt(p, n)))) {
        let n = u.len();
        let z = Integers;
        let gu = ghost(&z, &u);
        let gv = ghost(&z, &v);
        let gs = ghost(&z, &witt_add(&z, &u, &v).unwrap());
        let gp = ghost(&z, &witt_mul(&z, &u, &v).unwrap());
        let gn = ghost(&z, &witt_neg(&z, &u).unwrap());
        for i in 0..n {
            prop_assert_eq!(&gs[i], &(&gu[i] + &gv[i]));
            prop_assert_eq!(&gp[i], &(&gu[i] * &gv[i]));
            prop_assert_eq!(&gn[i], &(-&gu[i]));
        }
    }

    #[test]
    fn ghost_frobenius_shift(u in witt(3, 3)) {
        let z = Integers;
        let f = witt_frobenius(&z, &u).unwrap();
        let gu = ghost(&z, &u);
        let gf = ghost(&z, &f);
        for i in 0..gf.len() {
            prop_assert_eq!(&gf[i], &gu[i + 1]);
        }
    }

    #[test]
    fn ring_axioms_mod_p2(a in witt(2, 3), b in witt(2, 3), c in witt(2, 3)) {
        let ring = WittRing::new(ZMod::new(2), 2, 3).unwrap();
        let red = |v: &WittVector<BigInt>| WittVector::new(2, v.comps.iter().map(|x| ring.base.from_int(x)).collect());
        let (a, b, c) = (red(&a), red(&b), red(&c));
        prop_assert_eq!(ring.mul(&ring.mul(&a, &b), &c), ring.mul(&a, &ring.mul(&b, &c)));
        prop_assert_eq!(ring.add(&ring.add(&a, &b), &c), ring.add(&a, &ring.add(&b, &c)));
        prop_assert_eq!(ring.mul(&a, &ring.add(&b, &c)), ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c)));
        prop_assert_eq!(ring.mul(&a, &b), ring.mul(&b, &a));
        prop_assert!(ring.is_zero(&ring.add(&a, &ring.neg(&a))));
        prop_assert_eq!(ring.mul(&a, &ring.one()), a.clone());
    }

    #[test]
    fn padic_roundtrip((p, n) in prime_and_len(), x in 0u64..1000) {
        let v = padic_to_witt(p, n, &BigInt::from(x));
        let modulus = BigInt::from(p).pow(n as u32);
        prop_assert_eq!(padic_convert(&v), BigInt::from(x) % modulus);
    }

    #[test]
    fn v_then_r_is_shift(u in witt(2, 3)) {
        let z = Integers;
        let v = witt_v(&z, &u);
        prop_assert_eq!(witt_r(&v).unwrap().comps[1..].to_vec(), u.comps[..2].to_vec());
    }

    #[test]
    fn big_series_roundtrip_and_ghost(a in prop::collection::vec(-5i64..=5, 1..=6), b in prop::collection::vec(-5i64..=5, 6)) {
        let z = Integers;
        let n = a.len();
        let u = BigWitt::new(a.into_iter().map(BigInt::from).collect());
        let v = BigWitt::new(b.into_iter().take(n).map(BigInt::from).collect());
        prop_assert_eq!(from_series(&z, &to_series(&z, &u)), u.clone());
        let (gu, gv) = (ghost_big(&z, &u), ghost_big(&z, &v));
        let gs = ghost_big(&z, &big_add(&z, &u, &v).unwrap());
        let gp = ghost_big(&z, &big_mul(&z, &u, &v).unwrap());
        for i in 0..n {
            prop_assert_eq!(&gs[i], &(&gu[i] + &gv[i]));
            prop_assert_eq!(&gp[i], &(&gu[i] * &gv[i]));
        }
    }
}

#[test]
fn rendered_polynomials_parse_back() {
    for (p, n) in [(2, 3), (3, 2), (5, 2)] {
        for kind in PolyKind::ALL {
            let polys = universal_polys(p, n, kind).unwrap();
            let parsed: Vec<MultiPoly> = parse_rendered(kind, n, &render(kind, &polys)).unwrap();
            assert_eq!(parsed, polys.to_vec(), "p={p} n={n} {kind}");
        }
    }
}

#[test]
fn published_low_degree_polynomials() {
    let s = universal_polys(2, 2, PolyKind::Sum).unwrap();
    assert_eq!(render(PolyKind::Sum, &s), "S0 = x0 + y0\nS1 = x1 + y1 - x0*y0\n");
    let p3 = universal_polys(3, 2, PolyKind::Sum).unwrap();
    let vars = PolyKind::Sum.variables(2);
    let expect = MultiPoly::parse("x1 + y1 - x0^2*y0 - x0*y0^2", &vars).unwrap();
    assert_eq!(p3[1], expect);
    let f = universal_polys(3, 2, PolyKind::Frobenius).unwrap();
    let expect = MultiPoly::parse("a0^3 + 3*a1", &PolyKind::Frobenius.variables(2)).unwrap();
    assert_eq!(f[0], expect);
}

#[test]
fn committed_golden_files_match() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("polys");
    for c in wittlab::verify::run_criterion(2, &wittlab::verify::VerifyConfig { golden_dir: dir, ..Default::default() }) {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
}
