use std::collections::HashSet;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::Check;
use crate::error::Result;
use crate::exact::{CommRing, FiniteRing, Integers, MultiPoly, ZMod};
use crate::witt::classical::{ghost, witt_add, witt_frobenius, witt_mul, witt_neg, witt_r, witt_v};
use crate::witt::padic::padic_convert;
use crate::witt::universal::render;
use crate::witt::{universal_polys, PolyKind, WittRing, WittVector};

pub const GOLDEN_SETS: [(u64, usize); 3] = [(2, 4), (3, 3), (5, 2)];

pub fn golden_file_name(p: u64, n: usize, kind: PolyKind) -> String {
    format!("p{p}_n{n}_{}.txt", kind.name())
}

/// Kinds with at least one polynomial at length `n`.
pub fn golden_kinds(n: usize) -> Vec<PolyKind> {
    PolyKind::ALL.into_iter().filter(|&k| k != PolyKind::Frobenius || n >= 2).collect()
}

fn random_vector(rng: &mut StdRng, p: u64, n: usize) -> WittVector<BigInt> {
    WittVector::new(p, (0..n).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect())
}

fn add_vec(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn ghost_case(rng: &mut StdRng, p: u64, n: usize, samples: usize) -> Result<(bool, String)> {
    let z = Integers;
    for _ in 0..samples {
        let (u, v) = (random_vector(rng, p, n), random_vector(rng, p, n));
        let (gu, gv) = (ghost(&z, &u), ghost(&z, &v));
        if ghost(&z, &witt_add(&z, &u, &v)?) != add_vec(&gu, &gv) {
            return Ok((false, format!("addition fails at u={:?}, v={:?}", u.comps, v.comps)));
        }
        let prod: Vec<BigInt> = gu.iter().zip(&gv).map(|(x, y)| x * y).collect();
        if ghost(&z, &witt_mul(&z, &u, &v)?) != prod {
            return Ok((false, format!("multiplication fails at u={:?}, v={:?}", u.comps, v.comps)));
        }
        let neg: Vec<BigInt> = gu.iter().map(|x| -x).collect();
        if ghost(&z, &witt_neg(&z, &u)?) != neg {
            return Ok((false, format!("negation fails at u={:?}", u.comps)));
        }
        if n >= 2 && ghost(&z, &witt_frobenius(&z, &u)?)[..] != gu[1..] {
            return Ok((false, format!("Frobenius fails at u={:?}", u.comps)));
        }
    }
    Ok((true, format!("{samples} random pairs")))
}

pub fn ghost_homomorphism() -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(0x9057);
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        for n in 1..=4 {
            let r = ghost_case(&mut rng, p, n, 200);
            out.push(Check::from_result(1, format!("ghost identities p={p} n={n}"), r));
        }
    }
    out
}

fn frobenius_congruence(p: u64, n: usize) -> Result<bool> {
    let polys = universal_polys(p, n, PolyKind::Frobenius)?;
    let vars = PolyKind::Frobenius.variables(n);
    let pb = BigInt::from(p);
    Ok(polys.iter().enumerate().all(|(k, f)| {
        let diff = f.sub(&MultiPoly::var(&vars, k).pow(p));
        let ok = diff.terms().all(|(_, c)| (c % &pb).is_zero());
        ok
    }))
}

pub fn golden_files(dir: &Path) -> Vec<Check> {
    let mut out = Vec::new();
    for (p, top) in GOLDEN_SETS {
        for n in 1..=top {
            for kind in golden_kinds(n) {
                let name = golden_file_name(p, n, kind);
                let r = (|| -> Result<(bool, String)> {
                    let text = render(kind, &universal_polys(p, n, kind)?);
                    match std::fs::read_to_string(dir.join(&name)) {
                        Ok(committed) if committed == text => Ok((true, "byte-identical".into())),
                        Ok(_) => Ok((false, "generated text differs from the committed file".into())),
                        Err(e) => Ok((false, format!("cannot read {}: {e}", dir.join(&name).display()))),
                    }
                })();
                out.push(Check::from_result(2, format!("golden {name}"), r));
            }
            if n >= 2 {
                let r = frobenius_congruence(p, n).map(|ok| (ok, "f_k − a_{k−1}^p ≡ 0 mod p".to_string()));
                out.push(Check::from_result(2, format!("Frobenius congruence p={p} n={n}"), r));
            }
        }
    }
    out
}

fn padic_case(p: u64, n: usize) -> Result<(bool, String)> {
    let base = ZMod::new(p);
    let ring = WittRing::new(base.clone(), p, n)?;
    let elems = ring.elements();
    let modulus = BigInt::from(p).pow(n as u32);
    let image: Vec<BigInt> = elems.iter().map(padic_convert).collect();
    let distinct: HashSet<_> = image.iter().cloned().collect();
    if distinct.len() != elems.len() || elems.len() != (p as usize).pow(n as u32) {
        return Ok((false, "not a bijection".into()));
    }
    if padic_convert(&ring.one()) != BigInt::from(1) % &modulus {
        return Ok((false, "unit not preserved".into()));
    }
    for (x, cx) in elems.iter().zip(&image) {
        for (y, cy) in elems.iter().zip(&image) {
            if padic_convert(&witt_add(&base, x, y)?) != (cx + cy) % &modulus {
                return Ok((false, format!("sum of {:?} and {:?}", x.comps, y.comps)));
            }
            if padic_convert(&witt_mul(&base, x, y)?) != (cx * cy) % &modulus {
                return Ok((false, format!("product of {:?} and {:?}", x.comps, y.comps)));
            }
        }
    }
    Ok((true, format!("all {} pairs", elems.len() * elems.len())))
}

pub fn padic_isomorphism() -> Vec<Check> {
    [(2u64, 2usize), (2, 3), (3, 2), (3, 3), (5, 2), (5, 3)]
        .into_iter()
        .map(|(p, n)| {
            Check::from_result(3, format!("W_{n}(F_{p}) ≅ Z/{}", p.pow(n as u32)), padic_case(p, n))
        })
        .collect()
}

fn times_p(base: &ZMod, x: &WittVector<BigInt>) -> Result<WittVector<BigInt>> {
    let mut acc = x.clone();
    for _ in 1..x.p {
        acc = witt_add(base, &acc, x)?;
    }
    Ok(acc)
}

fn rv_case(p: u64, big_n: usize) -> Result<(bool, String)> {
    let base = ZMod::new(p);
    let all = |len: usize| WittRing::new(base.clone(), p, len).map(|r| r.elements());
    let top = all(big_n)?;
    for n in 1..big_n {
        let m = big_n - n;
        let mut image = HashSet::new();
        for x in all(m)? {
            let mut y = x;
            for _ in 0..n {
                y = witt_v(&base, &y);
            }
            image.insert(y.comps);
        }
        let mut kernel = HashSet::new();
        for x in &top {
            let mut y = x.clone();
            for _ in 0..m {
                y = witt_r(&y)?;
            }
            if y.comps.iter().all(|c| base.is_zero(c)) {
                kernel.insert(x.comps.clone());
            }
        }
        if image != kernel {
            return Ok((false, format!("im V^{n} ≠ ker R^{m} on W_{big_n}")));
        }
    }
    for x in &top {
        if witt_v(&base, &witt_frobenius(&base, x)?) != times_p(&base, x)? {
            return Ok((false, format!("VF ≠ p at {:?}", x.comps)));
        }
    }
    for y in all(big_n - 1)? {
        if witt_frobenius(&base, &witt_v(&base, &y))? != times_p(&base, &y)? {
            return Ok((false, format!("FV ≠ p at {:?}", y.comps)));
        }
    }
    Ok((true, format!("exhaustive over {} elements", top.len())))
}

pub fn verschiebung_restriction() -> Vec<Check> {
    [(2u64, 3usize), (3, 2)]
        .into_iter()
        .map(|(p, n)| Check::from_result(4, format!("im V = ker R, VF = FV = p on W_{n}(F_{p})"), rv_case(p, n)))
        .collect()
}
