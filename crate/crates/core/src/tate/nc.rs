//! Non-commutative polynomials `cᵢ(x₀, x₁)` with
//! `(x₀+x₁)^{⊗pⁿ} = x₀^{⊗pⁿ} + x₁^{⊗pⁿ} + Σ_{i≤n} (id + σ + … + σ^{pⁱ−1}) cᵢ^{⊗p^{n−i}}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{solve_integer_linear, FreeAlgElt, IntMatrix, MultiPoly};
use crate::tate::space::tuple_count;

fn rotate(w: &[u8]) -> Vec<u8> {
    let l = w.len();
    (0..l).map(|k| w[(k + l - 1) % l]).collect()
}

fn least_rotation(w: &[u8]) -> Vec<u8> {
    let mut best = w.to_vec();
    let mut cur = w.to_vec();
    for _ in 1..w.len() {
        cur = rotate(&cur);
        if cur < best {
            best = cur.clone();
        }
    }
    best
}

/// `(id + σ + … + σ^{k−1}) x` on a homogeneous element.
pub fn partial_norm(x: &FreeAlgElt, k: usize) -> FreeAlgElt {
    let mut out = FreeAlgElt::zero(x.bound());
    for (w, c) in x.terms() {
        let mut cur = w.clone();
        for _ in 0..k {
            out.add_term(cur.clone(), c.clone());
            cur = rotate(&cur);
        }
    }
    out
}

/// `x^{⊗k}` with the exact bound needed.
fn tensor_power(x: &FreeAlgElt, k: usize, bound: usize) -> FreeAlgElt {
    let mut lifted = FreeAlgElt::zero(bound);
    for (w, c) in x.terms() {
        lifted.add_term(w.clone(), c.clone());
    }
    lifted.pow(k as u32)
}

/// `(x₀+x₁)^{⊗pⁿ} − x₀^{⊗pⁿ} − x₁^{⊗pⁿ} − Σ_{i<m} Nᵢ(cᵢ^{⊗p^{m−i}})`, homogeneous of degree `pᵐ`.
pub fn difference(p: usize, m: u32, cs: &[FreeAlgElt]) -> FreeAlgElt {
    let deg = p.pow(m);
    let x0 = FreeAlgElt::generator(deg, 0);
    let x1 = FreeAlgElt::generator(deg, 1);
    let mut diff = x0.add(&x1).pow(deg as u32).sub(&x0.pow(deg as u32)).sub(&x1.pow(deg as u32));
    for (idx, c) in cs.iter().enumerate().take(m as usize - 1) {
        let i = idx as u32 + 1;
        let term = partial_norm(&tensor_power(c, p.pow(m - i), deg), p.pow(i));
        diff = diff.sub(&term);
    }
    diff.graded_part(deg)
}

/// Solve `(id + σ + … + σ^{pᵐ−1}) x = diff` orbit by orbit, then collapse each orbit's
/// coefficients onto its least rotation.
fn solve_norm(diff: &FreeAlgElt, deg: usize) -> Result<FreeAlgElt> {
    let mut orbits: BTreeMap<Vec<u8>, Vec<Vec<u8>>> = BTreeMap::new();
    for (w, _) in diff.terms() {
        let rep = least_rotation(w);
        orbits.entry(rep.clone()).or_insert_with(|| {
            let mut members = vec![rep.clone()];
            let mut cur = rotate(&rep);
            while cur != rep {
                members.push(cur.clone());
                cur = rotate(&cur);
            }
            members
        });
    }
    let mut out = FreeAlgElt::zero(deg);
    for (rep, members) in orbits {
        let k = members.len();
        let index = |w: &[u8]| members.iter().position(|m| m == w).expect("orbit closed under σ");
        let mut a = IntMatrix::zeros(k, k);
        for (j, w) in members.iter().enumerate() {
            let mut cur = w.clone();
            for _ in 0..deg {
                a[(index(&cur), j)] += 1;
                cur = rotate(&cur);
            }
        }
        let b: Vec<BigInt> = members.iter().map(|w| diff.coefficient(w)).collect();
        let x = solve_integer_linear(&a, &b).ok_or_else(|| Error::Internal(format!("norm equation unsolvable on orbit of {rep:?}")))?;
        let total: BigInt = x.iter().sum();
        out.add_term(rep, total);
    }
    Ok(out)
}

/// `c₁, …, c_{upto}` for the prime `p`.
pub fn solve_nc_c(p: u64, upto: u32, limit: usize) -> Result<Vec<FreeAlgElt>> {
    if !crate::exact::int::is_prime(p) || upto == 0 {
        return Err(Error::ParameterMismatch(format!("need p prime and i ≥ 1, got p={p}, i={upto}")));
    }
    let p = p as usize;
    let deg = p.checked_pow(upto).ok_or(Error::ResourceLimit { requested: u128::MAX, limit })?;
    tuple_count(2, deg, limit)?;
    let mut cs: Vec<FreeAlgElt> = Vec::new();
    for m in 1..=upto {
        let diff = difference(p, m, &cs);
        cs.push(solve_norm(&diff, p.pow(m))?);
    }
    Ok(cs)
}

/// Check the defining identity for all `n ≤ cs.len()` by expansion.
pub fn verify_nc(p: u64, cs: &[FreeAlgElt]) -> bool {
    let p = p as usize;
    (1..=cs.len() as u32).all(|n| {
        let deg = p.pow(n);
        let x0 = FreeAlgElt::generator(deg, 0);
        let x1 = FreeAlgElt::generator(deg, 1);
        let mut rhs = x0.pow(deg as u32).add(&x1.pow(deg as u32));
        for i in 1..=n {
            rhs = rhs.add(&partial_norm(&tensor_power(&cs[i as usize - 1], p.pow(n - i), deg), p.pow(i)));
        }
        x0.add(&x1).pow(deg as u32).graded_part(deg) == rhs.graded_part(deg)
    })
}

/// Image in ℤ[x0, x1].
pub fn commutative_projection(x: &FreeAlgElt) -> MultiPoly {
    let vars = Arc::new(vec!["x0".to_string(), "x1".to_string()]);
    let mut out = MultiPoly::zero(&vars);
    for (w, c) in x.terms() {
        let e0 = w.iter().filter(|&&g| g == 0).count() as u64;
        let e1 = w.len() as u64 - e0;
        let mono = MultiPoly::var(&vars, 0).pow(e0).mul(&MultiPoly::var(&vars, 1).pow(e1));
        out = out.add(&mono.scale(c));
    }
    out
}

/// `(x₀+x₁)^{pⁿ} = x₀^{pⁿ} + x₁^{pⁿ} + Σ pⁱ c̄ᵢ^{p^{n−i}}` for all `n ≤ cs.len()`.
pub fn verify_commutative(p: u64, cs: &[MultiPoly]) -> bool {
    if cs.is_empty() {
        return true;
    }
    let vars = cs[0].vars().clone();
    let (x0, x1) = (MultiPoly::var(&vars, 0), MultiPoly::var(&vars, 1));
    (1..=cs.len() as u32).all(|n| {
        let e = p.pow(n);
        let mut rhs = x0.pow(e).add(&x1.pow(e));
        for i in 1..=n {
            rhs = rhs.add(&cs[i as usize - 1].pow(p.pow(n - i)).scale(&BigInt::from(p).pow(i)));
        }
        x0.add(&x1).pow(e) == rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tate::DEFAULT_LIMIT;

    #[test]
    fn small_cases() {
        let c = solve_nc_c(2, 2, DEFAULT_LIMIT).unwrap();
        assert_eq!(c[0].to_string(), "x0.x1");
        assert_eq!(c[1].to_string(), "x0.x0.x0.x1 + x0.x0.x1.x1 + x0.x1.x1.x1");
        assert!(verify_nc(2, &c));
        let c3 = solve_nc_c(3, 1, DEFAULT_LIMIT).unwrap();
        assert_eq!(c3[0].to_string(), "x0.x0.x1 + x0.x1.x1");
        assert!(verify_nc(3, &c3));
        let proj: Vec<_> = c.iter().map(commutative_projection).collect();
        assert!(verify_commutative(2, &proj));
    }
}
