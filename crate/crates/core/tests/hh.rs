use std::path::PathBuf;

use num_bigint::BigInt;
use wittlab::hh::cyclic::ANatural;
use wittlab::hh::whh::classical_witt_group;
use wittlab::hh::{hesselholt_seq_check, whh0, AlgebraSpec, WnANatural};
use wittlab::tate::DEFAULT_LIMIT;
use wittlab::Error;

fn algebra(name: &str) -> AlgebraSpec {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../algebras").join(format!("{name}.json"));
    AlgebraSpec::load(&path).unwrap()
}

#[test]
fn bundled_algebras_load() {
    for name in ["f2", "f3", "f4", "dual2", "upper2", "m2"] {
        let a = algebra(name);
        a.validate().unwrap();
        ANatural::new(a, 2).unwrap().check_identities().unwrap();
    }
    assert_eq!(algebra("f4"), AlgebraSpec::f4());
}

#[test]
fn rejects_bad_algebras() {
    let not_prime = r#"{"p":4,"dim":1,"basis":["1"],"unit":[1],"mul":[[[1]]]}"#;
    assert!(matches!(AlgebraSpec::from_json(not_prime), Err(Error::InvalidAlgebra(_))));
    let bad_unit = r#"{"p":2,"dim":2,"basis":["1","x"],"unit":[0,1],"mul":[[[1,0],[0,1]],[[0,1],[0,0]]]}"#;
    assert!(AlgebraSpec::from_json(bad_unit).is_err());
    // x·x = 1 but x·(x·y) ≠ (x·x)·y: not associative
    let nonassoc = r#"{"p":2,"dim":3,"basis":["1","x","y"],"unit":[1,0,0],
        "mul":[[[1,0,0],[0,1,0],[0,0,1]],[[0,1,0],[1,0,0],[0,0,0]],[[0,0,1],[0,0,1],[0,0,0]]]}"#;
    let err = AlgebraSpec::from_json(nonassoc).unwrap_err();
    assert!(err.to_string().contains("associativity"), "{err}");
    assert!(AlgebraSpec::from_json("{").is_err());
}

#[test]
fn whh0_matches_classical_on_files() {
    for name in ["f2", "f4", "dual2"] {
        let a = algebra(name);
        for n in 1..=2 {
            let w = whh0(&a, n, DEFAULT_LIMIT).unwrap();
            assert!(w.group.isomorphic(&classical_witt_group(&a, n as usize).unwrap()), "{name} n={n}");
        }
    }
    assert_eq!(whh0(&algebra("f4"), 2, DEFAULT_LIMIT).unwrap().group.order(), Some(BigInt::from(16)));
}

#[test]
fn noncommutative_degree_zero() {
    // M_2(F_2)/[M_2, M_2] is one-dimensional, as is the trace quotient of the upper-triangular algebra's W_1
    assert_eq!(whh0(&algebra("m2"), 1, DEFAULT_LIMIT).unwrap().group.order(), Some(BigInt::from(2)));
    let r = hesselholt_seq_check(&algebra("upper2"), 1, DEFAULT_LIMIT).unwrap();
    assert!(r.exact());
    assert_eq!(r.lower_order, "4");
}

#[test]
fn slices_and_homology() {
    let s = WnANatural::new(AlgebraSpec::dual_numbers(2), 2, 2, DEFAULT_LIMIT).unwrap();
    s.check_identities().unwrap();
    assert!(s.complex().unwrap().is_complex());
    assert!(matches!(WnANatural::new(AlgebraSpec::f4(), 3, 2, DEFAULT_LIMIT), Err(Error::ResourceLimit { .. })));
    // periodic resolution of k[x]/x²: the odd and even maps are 0 and multiplication by 2x
    let dual3 = ANatural::new(AlgebraSpec::dual_numbers(3), 3).unwrap();
    assert_eq!(dual3.hochschild_dims(2).unwrap(), vec![2, 1, 1]);
    let dual2 = ANatural::new(AlgebraSpec::dual_numbers(2), 3).unwrap();
    assert_eq!(dual2.hochschild_dims(2).unwrap(), vec![2, 2, 2]);
}
