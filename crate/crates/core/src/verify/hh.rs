use std::collections::HashSet;

use num_bigint::BigInt;

use super::Check;
use crate::error::Result;
use crate::exact::FpMatrix;
use crate::hh::cyclic::{hochschild_homology_orders, ANatural};
use crate::hh::whh::{classical_witt_group, whh0, whh0_restriction, whh0_verschiebung};
use crate::hh::{hesselholt_seq_check, AlgebraRing, AlgebraSpec, WnANatural};
use crate::tate::maps::teich_t;
use crate::tate::{GroupMap, PresentedAbGroup, WittSpace};
use crate::witt::WittRing;
use crate::{CommRing, FiniteRing};

type Outcome = Result<(bool, String)>;

fn named() -> Vec<(&'static str, AlgebraSpec)> {
    vec![
        ("F2", AlgebraSpec::prime_field(2)),
        ("F3", AlgebraSpec::prime_field(3)),
        ("F4", AlgebraSpec::f4()),
        ("F2[x]/x^2", AlgebraSpec::dual_numbers(2)),
    ]
}

fn same(g: &PresentedAbGroup, a: &[BigInt], b: &[BigInt]) -> bool {
    g.is_zero(&g.add(a, &g.scale(b, &BigInt::from(-1))))
}

fn group_oracle(a: &AlgebraSpec, n: u32, limit: usize) -> Outcome {
    let w = whh0(a, n, limit)?;
    let classical = classical_witt_group(a, n as usize)?;
    Ok((
        w.group.isomorphic(&classical),
        format!("W_nHH_0 = {}, classical W_n = {}", w.group.structure(), classical.structure()),
    ))
}

/// `(a₀, a₁) ↦ [T₂(a₀)] + [V(T₁(a₁ ⊗ 1))]` is an additive bijection compatible with `R`.
fn identification(a: &AlgebraSpec, limit: usize) -> Outcome {
    let w1 = whh0(a, 1, limit)?;
    let w2 = whh0(a, 2, limit)?;
    let v = whh0_verschiebung(a, &w1, &w2, limit)?;
    let r = whh0_restriction(&w2, &w1, limit)?;
    let ring = WittRing::new(AlgebraRing::new(a.clone())?, a.p, 2)?;
    let g = &w2.group;
    let phi = |x: &crate::witt::WittVector<Vec<u64>>| -> Vec<BigInt> {
        g.add(&w2.teichmuller(&x.comps[0]), &v.apply(&w1.teichmuller(&x.comps[1])))
    };
    let elements = ring.elements();
    let images: Vec<Vec<BigInt>> = elements.iter().map(phi).collect();
    let distinct: HashSet<&Vec<BigInt>> = images.iter().collect();
    let bijective = distinct.len() == elements.len() && g.order() == Some(BigInt::from(elements.len()));
    for (x, fx) in elements.iter().zip(&images) {
        if !same(&w1.group, &r.apply(fx), &w1.teichmuller(&x.comps[0])) {
            return Ok((false, "R∘Φ₂ ≠ Φ₁∘R".into()));
        }
        for (y, fy) in elements.iter().zip(&images) {
            if !same(g, &phi(&ring.add(x, y)), &g.add(fx, fy)) {
                return Ok((false, format!("Φ not additive on {:?} + {:?}", x.comps, y.comps)));
            }
        }
    }
    Ok((bijective, format!("Φ additive on all {} pairs, bijective: {bijective}", elements.len().pow(2))))
}

pub fn commutative_oracle(limit: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for (name, a) in named() {
        for n in 1..=2 {
            out.push(Check::from_result(8, format!("{name} n={n}"), group_oracle(&a, n, limit)));
        }
        out.push(Check::from_result(8, format!("{name} identification at n=2"), identification(&a, limit)));
    }
    out
}

fn sequence(a: &AlgebraSpec, n: u32, limit: usize) -> Outcome {
    let r = hesselholt_seq_check(a, n, limit)?;
    Ok((
        r.exact(),
        format!(
            "W_{}HH_0 = {} → W_{}HH_0 = {}: right exact {}, middle exact {}, left injective {} (not asserted)",
            n + 1,
            r.upper_structure,
            n,
            r.lower_structure,
            r.right_exact,
            r.middle_exact,
            r.left_injective
        ),
    ))
}

pub fn hesselholt_sequence(limit: usize) -> Vec<Check> {
    let mut cases: Vec<(&str, AlgebraSpec, u32)> = named().into_iter().map(|(s, a)| (s, a, 1)).collect();
    cases.push(("upper triangular 2×2 over F2", AlgebraSpec::upper_triangular(2), 1));
    cases.push(("F2", AlgebraSpec::prime_field(2), 2));
    cases
        .into_iter()
        .map(|(name, a, n)| Check::from_result(9, format!("{name} n={n}"), sequence(&a, n, limit)))
        .collect()
}

fn slice_identities(a: &AlgebraSpec, n: u32, bound: usize, limit: usize) -> Outcome {
    let s = WnANatural::new(a.clone(), n, bound, limit)?;
    Ok(match s.check_identities() {
        Ok(()) => (true, format!("simplicial and cyclic identities on [1..{}]", bound + 1)),
        Err(e) => (false, e),
    })
}

/// `W₁(f)(T₁(e)) = T₁(f(e))` on basis vectors, i.e. `f` under `W₁ ≅ Id`.
fn matches_linear(map: &GroupMap, lin: &FpMatrix, src: &WittSpace, tgt: &WittSpace) -> bool {
    let rows = lin.to_rows();
    (0..src.d as usize).all(|i| {
        let mut e = vec![0u64; src.d as usize];
        e[i] = 1;
        let col: Vec<u64> = rows.iter().map(|r| r[i] as u64).collect();
        same(&tgt.group, &map.apply(&teich_t(src, &e)), &teich_t(tgt, &col))
    })
}

fn level_one_agrees(a: &AlgebraSpec, limit: usize) -> Outcome {
    let s = WnANatural::new(a.clone(), 1, 2, limit)?;
    for m in 1..=3 {
        if !matches_linear(s.rotation(m)?, &s.base.rotation(m)?, s.space(m), s.space(m)) {
            return Ok((false, format!("rotation differs on [{m}]")));
        }
        if m >= 2 {
            for i in 0..m {
                if !matches_linear(s.face(m, i)?, &s.base.face(m, i)?, s.space(m), s.space(m - 1)) {
                    return Ok((false, format!("d_{i} differs on [{m}]")));
                }
            }
        }
        if m <= 2 {
            for i in 0..m {
                if !matches_linear(s.degeneracy(m, i)?, &s.base.degeneracy(m, i)?, s.space(m), s.space(m + 1)) {
                    return Ok((false, format!("s_{i} differs on [{m}]")));
                }
            }
        }
    }
    Ok((true, "faces, degeneracies and rotation agree on [1..3]".into()))
}

fn etale_hkr() -> Outcome {
    let f4 = ANatural::new(AlgebraSpec::f4(), 3)?;
    let dims = f4.hochschild_dims(2)?;
    let b_zero = (0..=1).map(|k| f4.connes_b(k).map(|b| b.is_zero())).collect::<Result<Vec<_>>>()?;
    let ok = dims == vec![2, 0, 0] && b_zero.iter().all(|&z| z);
    Ok((ok, format!("dim HH_0..2 = {dims:?}, B = 0 in degrees 0, 1: {b_zero:?}")))
}

fn homology_consistent(a: &AlgebraSpec) -> Outcome {
    let s = ANatural::new(a.clone(), 3)?;
    let dims = s.hochschild_dims(2)?;
    let orders = hochschild_homology_orders(&s, 2)?;
    let expect: Vec<BigInt> = dims.iter().map(|&k| BigInt::from(a.p).pow(k as u32)).collect();
    let bb = s.connes_b(1)?.compose(&s.connes_b(0)?).is_zero();
    Ok((orders == expect && bb && s.complex()?.is_complex(), format!("dim HH_0..2 = {dims:?}, B∘B = 0: {bb}")))
}

pub fn cyclic_identities(limit: usize) -> Vec<Check> {
    let mut all = named();
    all.push(("upper triangular 2×2 over F2", AlgebraSpec::upper_triangular(2)));
    all.push(("M_2(F2)", AlgebraSpec::matrices2(2)));
    let mut out = Vec::new();
    for (name, a) in &all {
        let r = ANatural::new(a.clone(), 3).map(|s| match s.check_identities() {
            Ok(()) => (true, "simplicial and cyclic identities on [1..4]".to_string()),
            Err(e) => (false, e),
        });
        out.push(Check::from_result(10, format!("A^♮ {name}"), r));
    }
    for (name, a) in &all {
        out.push(Check::from_result(10, format!("W_1A^♮ {name}"), slice_identities(a, 1, 2, limit)));
    }
    for (name, a) in named() {
        out.push(Check::from_result(10, format!("W_2A^♮ {name}"), slice_identities(&a, 2, 2, limit)));
    }
    out.push(Check::from_result(
        10,
        "W_2A^♮ upper triangular 2×2 over F2",
        slice_identities(&AlgebraSpec::upper_triangular(2), 2, 1, limit),
    ));
    for (name, a) in &all {
        out.push(Check::from_result(10, format!("W_1A^♮ = A^♮ for {name}"), level_one_agrees(a, limit)));
    }
    out.push(Check::from_result(10, "étale HKR for F4/F2", etale_hkr()));
    for (name, a) in [("F2[x]/x^2", AlgebraSpec::dual_numbers(2)), ("M_2(F2)", AlgebraSpec::matrices2(2))] {
        out.push(Check::from_result(10, format!("Hochschild homology of {name}"), homology_consistent(&a)));
    }
    out
}

/// `FBV = B: W_1HH_0 → W_1HH_1` for `F₂` at `n = 2`.
fn fbv(limit: usize) -> Outcome {
    let s = WnANatural::new(AlgebraSpec::prime_field(2), 1, 2, limit)?;
    let h1 = s.complex()?.homology(1)?;
    let trivial = h1.group.is_trivial();
    Ok((
        trivial,
        format!(
            "W_1HH_1(F2) has order {}; both sides map into it, so the identity holds only vacuously",
            h1.group.order().unwrap_or_default()
        ),
    ))
}

pub fn fbv_stretch(limit: usize) -> Vec<Check> {
    let mut c = Check::from_result(11, "FBV = B in degree 0 for F2, n=2", fbv(limit));
    c.blocking = false;
    vec![c]
}
