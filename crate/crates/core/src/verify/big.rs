use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::Check;
use crate::error::Result;
use crate::exact::{CommRing, Integers, ZMod};
use crate::witt::big::{
    big_add, big_mul, big_one, big_product_polys, epsilon, from_series, ghost_big, idempotent, p_typical_decompose,
    render_product, series_inverse, to_series, BigWitt,
};
use crate::witt::classical::ghost;
use crate::witt::WittVector;

fn all_vectors(p: u64, n: usize) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<BigInt>| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(BigInt::from(x));
                    w
                })
            })
            .collect();
    }
    out
}

fn random_big(rng: &mut StdRng, n: usize) -> BigWitt<BigInt> {
    BigWitt::new((0..n).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect())
}

fn roundtrip_exhaustive() -> (bool, String) {
    for p in [2u64, 3] {
        let r = ZMod::new(p);
        for n in 1..=4 {
            for v in all_vectors(p, n) {
                let w = BigWitt::new(v.clone());
                if from_series(&r, &to_series(&r, &w)) != w {
                    return (false, format!("from∘to fails at {v:?} over F_{p}"));
                }
                let mut s = vec![BigInt::from(1)];
                s.extend(v.iter().cloned());
                if to_series(&r, &from_series(&r, &s)) != s {
                    return (false, format!("to∘from fails at 1 + {v:?} over F_{p}"));
                }
            }
        }
    }
    (true, "all vectors and series over F_2, F_3 with N ≤ 4".into())
}

fn random_integer_checks(rng: &mut StdRng) -> Result<Vec<(String, bool, String)>> {
    let z = Integers;
    let (mut inverse, mut genfun, mut ring_hom) = (true, true, true);
    let mut detail = [String::new(), String::new(), String::new()];
    for n in 1..=6 {
        for _ in 0..50 {
            let u = random_big(rng, n);
            let v = random_big(rng, n);
            let s = to_series(&z, &u);
            if from_series(&z, &s) != u {
                inverse = false;
                detail[0] = format!("{:?}", u.comps);
            }
            let mut t = vec![BigInt::from(1)];
            t.extend(v.comps.iter().cloned());
            if to_series(&z, &from_series(&z, &t)) != t {
                inverse = false;
                detail[0] = format!("series {t:?}");
            }
            // −t·d/dt log s = Σ ŵ_m t^m
            let deriv: Vec<BigInt> = (1..=n).map(|k| &s[k] * BigInt::from(k)).collect();
            let inv = series_inverse(&z, &s[..n]);
            let gh = ghost_big(&z, &u);
            for m in 1..=n {
                let q: BigInt = (0..m).map(|j| &deriv[j] * &inv[m - 1 - j]).sum();
                if -q != gh[m - 1] {
                    genfun = false;
                    detail[1] = format!("{:?} at m={m}", u.comps);
                }
            }
            let (gu, gv) = (ghost_big(&z, &u), ghost_big(&z, &v));
            let sum: Vec<BigInt> = gu.iter().zip(&gv).map(|(a, b)| a + b).collect();
            let prod: Vec<BigInt> = gu.iter().zip(&gv).map(|(a, b)| a * b).collect();
            if ghost_big(&z, &big_add(&z, &u, &v)?) != sum || ghost_big(&z, &big_mul(&z, &u, &v)?) != prod {
                ring_hom = false;
                detail[2] = format!("{:?}, {:?}", u.comps, v.comps);
            }
        }
    }
    let msg = |ok: bool, d: &str| if ok { "50 random vectors per N ≤ 6 over Z".to_string() } else { format!("fails at {d}") };
    Ok(vec![
        ("series bijection over Z".into(), inverse, msg(inverse, &detail[0])),
        ("ghost generating function".into(), genfun, msg(genfun, &detail[1])),
        ("ghost is a ring map".into(), ring_hom, msg(ring_hom, &detail[2])),
    ])
}

fn scaled<R: CommRing>(r: &R, k: usize, v: &BigWitt<R::Elem>) -> Result<BigWitt<R::Elem>> {
    let mut acc = BigWitt::new(vec![r.zero(); v.truncation()]);
    for _ in 0..k {
        acc = big_add(r, &acc, v)?;
    }
    Ok(acc)
}

fn epsilon_relations() -> Result<(bool, String)> {
    let z = Integers;
    let n = 12;
    for i in 1..=4 {
        for j in 1..=4 {
            let l = i.lcm(&j);
            let lhs = big_mul(&z, &epsilon(&z, i, n), &epsilon(&z, j, n))?;
            let rhs = scaled(&z, i * j / l, &epsilon(&z, l, n))?;
            if lhs != rhs {
                return Ok((false, format!("ε_{i}ε_{j} ≠ {}ε_{l}", i * j / l)));
            }
        }
    }
    Ok((true, "ε_iε_j = (ij/lcm)ε_lcm for i, j ≤ 4 at N = 12".into()))
}

fn decomposition_z8() -> Result<(bool, String)> {
    let r = ZMod::new(8);
    let n = 4;
    let e1 = idempotent(&r, 2, 1, n)?;
    let e3 = idempotent(&r, 2, 3, n)?;
    let one = big_one(&r, n);
    let zero = BigWitt::new(vec![r.zero(); n]);
    let ok = big_add(&r, &e1, &e3)? == one
        && big_mul(&r, &e1, &e1)? == e1
        && big_mul(&r, &e3, &e3)? == e3
        && big_mul(&r, &e1, &e3)? == zero;
    if !ok {
        return Ok((false, "idempotents are not complete and orthogonal".into()));
    }
    let v = BigWitt::new([3, 5, 7, 2].iter().map(|&x| BigInt::from(x)).collect());
    let lens: Vec<(usize, usize)> = p_typical_decompose(&r, 2, &v)?.iter().map(|(k, w)| (*k, w.len())).collect();
    Ok((lens == vec![(1, 3), (3, 1)], format!("E₁ + E₃ = 1, orthogonal; factor lengths {lens:?}")))
}

fn p_typical_compatibility(rng: &mut StdRng) -> (bool, String) {
    let z = Integers;
    for p in [2u64, 3] {
        for len in 1..=3 {
            let big_n = (p as usize).pow(len as u32 - 1);
            for _ in 0..20 {
                let a: Vec<BigInt> = (0..len).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
                let mut comps = vec![BigInt::from(0); big_n];
                for (i, x) in a.iter().enumerate() {
                    comps[(p as usize).pow(i as u32) - 1] = x.clone();
                }
                let gb = ghost_big(&z, &BigWitt::new(comps));
                let renumbered: Vec<BigInt> = (0..len).map(|i| gb[(p as usize).pow(i as u32) - 1].clone()).collect();
                if renumbered != ghost(&z, &WittVector::new(p, a.clone())) {
                    return (false, format!("p={p}, a={a:?}"));
                }
            }
        }
    }
    (true, "ghost at indices p^i equals the p-typical ghost".into())
}

fn golden_big(dir: &Path) -> Result<(bool, String)> {
    let text = render_product(&big_product_polys(6)?);
    let path = dir.join("big_n6_product.txt");
    match std::fs::read_to_string(&path) {
        Ok(committed) => Ok((committed == text, "big product polynomials for N = 6".into())),
        Err(e) => Ok((false, format!("cannot read {}: {e}", path.display()))),
    }
}

pub fn big_witt(golden_dir: &Path) -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(0xb16);
    let (ok, d) = roundtrip_exhaustive();
    let mut out = vec![Check::new(5, "series bijection over F_2, F_3", ok, d)];
    match random_integer_checks(&mut rng) {
        Ok(rows) => out.extend(rows.into_iter().map(|(n, ok, d)| Check::new(5, n, ok, d))),
        Err(e) => out.push(Check::error(5, "random checks over Z", &e)),
    }
    out.push(Check::from_result(5, "ε-algebra relations", epsilon_relations()));
    out.push(Check::from_result(5, "p-typical decomposition over Z/8", decomposition_z8()));
    let (ok, d) = p_typical_compatibility(&mut rng);
    out.push(Check::new(5, "p-typical ghost compatibility", ok, d));
    out.push(Check::from_result(5, "golden big_n6_product.txt", golden_big(golden_dir)));
    out
}
