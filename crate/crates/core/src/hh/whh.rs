//! `W_nA^♮`, degree-0 Hochschild-Witt homology and its `R`, `V` maps.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::algebra::{AlgebraRing, AlgebraSpec};
use super::complex::ChainComplex;
use super::cyclic::{check_cyclic_identities, ANatural};
use crate::error::{Error, Result};
use crate::tate::maps::{restrict_r, teich_t, to_sparse, trace_twist_tau, ver_v_power, w_on_map};
use crate::tate::{exact_at, GroupMap, PresentedAbGroup, WittSpace};
use crate::witt::WittRing;
use crate::FiniteRing;

/// Values `W_n(A^{⊗m})`, `m = 1, …, D+1`, with faces, degeneracies and the twist rotation.
#[derive(Clone, Debug)]
pub struct WnANatural {
    pub base: ANatural,
    pub n: u32,
    pub spaces: Vec<Arc<WittSpace>>,
    faces: Vec<Vec<GroupMap>>,
    degeneracies: Vec<Vec<GroupMap>>,
    rotations: Vec<GroupMap>,
}

impl WnANatural {
    pub fn new(algebra: AlgebraSpec, n: u32, bound: usize, limit: usize) -> Result<Self> {
        if bound > 2 {
            return Err(Error::ParameterMismatch("W_nA^♮ is built only up to degree 2".into()));
        }
        if n == 0 {
            return Err(Error::ParameterMismatch("level n must be at least 1".into()));
        }
        let base = ANatural::new(algebra, bound)?;
        let p = base.p();
        let d = base.algebra.dim as u64;
        let spaces = (1..=bound + 1)
            .map(|m| WittSpace::q(p, n, d.pow(m as u32), limit))
            .collect::<Result<Vec<_>>>()?;
        let sp = |m: usize| &spaces[m - 1];
        let mut rotations = Vec::new();
        for m in 1..=bound + 1 {
            rotations.push(trace_twist_tau(sp(m), sp(m), d.pow(m as u32 - 1), d)?);
        }
        let mut faces = vec![Vec::new()];
        for m in 2..=bound + 1 {
            let mut fs = Vec::new();
            for i in 0..m - 1 {
                fs.push(w_on_map(&base.face(m, i)?.to_rows(), sp(m), sp(m - 1))?);
            }
            let last = fs[0].compose(&rotations[m - 1]);
            fs.push(last);
            faces.push(fs);
        }
        let mut degeneracies = Vec::new();
        for m in 1..=bound {
            degeneracies.push(
                (0..m)
                    .map(|i| w_on_map(&base.degeneracy(m, i)?.to_rows(), sp(m), sp(m + 1)))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(WnANatural { base, n, spaces, faces, degeneracies, rotations })
    }

    pub fn bound(&self) -> usize {
        self.base.bound
    }

    pub fn space(&self, m: usize) -> &Arc<WittSpace> {
        &self.spaces[m - 1]
    }

    fn lookup<'a>(&self, v: Option<&'a GroupMap>, what: String) -> Result<&'a GroupMap> {
        v.ok_or_else(|| Error::ParameterMismatch(format!("{what} is outside the built range")))
    }

    pub fn face(&self, m: usize, i: usize) -> Result<&GroupMap> {
        self.lookup(self.faces.get(m.wrapping_sub(1)).and_then(|f| f.get(i)), format!("d_{i} on [{m}]"))
    }

    pub fn degeneracy(&self, m: usize, i: usize) -> Result<&GroupMap> {
        self.lookup(self.degeneracies.get(m.wrapping_sub(1)).and_then(|f| f.get(i)), format!("s_{i} on [{m}]"))
    }

    pub fn rotation(&self, m: usize) -> Result<&GroupMap> {
        self.lookup(self.rotations.get(m.wrapping_sub(1)), format!("t on [{m}]"))
    }

    pub fn check_identities(&self) -> std::result::Result<(), String> {
        check_cyclic_identities(
            self.bound(),
            &|m, i| self.face(m, i).cloned(),
            &|m, i| self.degeneracy(m, i).cloned(),
            &|m| self.rotation(m).cloned(),
            &|m| GroupMap::identity(self.space(m).group.clone()),
        )
    }

    /// The complex `W_n(A) ← W_n(A^{⊗2}) ← …` with alternating face sums.
    pub fn complex(&self) -> Result<ChainComplex> {
        let groups: Vec<_> = self.spaces.iter().map(|s| s.group.clone()).collect();
        let mut diffs = Vec::new();
        for m in 2..=self.bound() + 1 {
            let mut b = GroupMap::zero(groups[m - 1].clone(), groups[m - 2].clone());
            for (j, f) in self.faces[m - 1].iter().enumerate() {
                b = if j % 2 == 0 { b.add(f) } else { b.sub(f) };
            }
            diffs.push(b);
        }
        ChainComplex::new(groups, diffs)
    }
}

/// `W_nHH₀(A) = coker(W_n(d₀) − W_n(d₁))` with the projection from `W_n(A)`.
#[derive(Clone, Debug)]
pub struct Whh0 {
    pub n: u32,
    pub space: Arc<WittSpace>,
    pub group: Arc<PresentedAbGroup>,
    pub projection: GroupMap,
}

pub fn whh0(algebra: &AlgebraSpec, n: u32, limit: usize) -> Result<Whh0> {
    let slice = WnANatural::new(algebra.clone(), n, 1, limit)?;
    let diff = slice.face(2, 0)?.sub(slice.face(2, 1)?);
    let (group, projection) = diff.cokernel_projection();
    Ok(Whh0 { n, space: slice.space(1).clone(), group, projection })
}

impl Whh0 {
    /// Class of `T_n(a)` for `a ∈ A`.
    pub fn teichmuller(&self, a: &[u64]) -> Vec<BigInt> {
        self.projection.apply(&teich_t(&self.space, a))
    }

    /// Descend a map `W_n(A) → W_m(A)` to `W_nHH₀ → W_mHH₀`.
    pub fn descend(&self, target: &Whh0, f: &GroupMap) -> Result<GroupMap> {
        let images: Vec<_> = (0..self.space.group.rank_reduced())
            .map(|j| target.projection.apply(&f.apply(&self.space.group.basis(j))))
            .collect();
        GroupMap::from_reduced_generator_images(self.group.clone(), target.group.clone(), &images)
    }
}

/// `R: W_{n+1}HH₀(A) → W_nHH₀(A)`.
pub fn whh0_restriction(upper: &Whh0, lower: &Whh0, limit: usize) -> Result<GroupMap> {
    if upper.n != lower.n + 1 {
        return Err(Error::ParameterMismatch("R lowers the level by one".into()));
    }
    upper.descend(lower, &restrict_r(&upper.space, &lower.space, limit)?)
}

/// `W_1(A) → W_{n+1}(A)`, `T₁(a) ↦ Vⁿ(T₁(a ⊗ 1 ⊗ … ⊗ 1))`.
pub fn verschiebung_lift(algebra: &AlgebraSpec, n: u32, base: &WittSpace, top: &WittSpace, limit: usize) -> Result<GroupMap> {
    let p = algebra.p;
    let d = algebra.dim;
    let copies = (p as usize).pow(n);
    let wide = WittSpace::q(p, 1, (d as u64).pow(copies as u32), limit)?;
    let v = ver_v_power(&wide, top, n)?;
    let mut tail = vec![1u64];
    for _ in 1..copies {
        tail = tail.iter().flat_map(|&x| algebra.unit.iter().map(move |&u| x * u % p)).collect();
    }
    let k = base.group.rank_reduced();
    let mut cols = vec![Vec::new(); k];
    for i in 0..d {
        let ei = algebra.basis_vec(i);
        let src = teich_t(base, &ei);
        let j = src
            .iter()
            .position(|c| !c.is_zero())
            .filter(|&j| src[j].is_one() && src.iter().filter(|c| !c.is_zero()).count() == 1)
            .ok_or_else(|| Error::Internal("T₁ of a basis vector is not a basis class".into()))?;
        let word: Vec<u64> = ei.iter().flat_map(|&a| tail.iter().map(move |&b| a * b % p)).collect();
        cols[j] = to_sparse(&v.apply(&teich_t(&wide, &word)));
    }
    let m = crate::exact::IntMatrix::from_columns(top.group.rank_reduced(), &cols);
    GroupMap::from_reduced_matrix(base.group.clone(), top.group.clone(), m)
}

/// `Vⁿ: HH₀(A) = W_1HH₀(A) → W_{n+1}HH₀(A)`.
pub fn whh0_verschiebung(algebra: &AlgebraSpec, hh0: &Whh0, upper: &Whh0, limit: usize) -> Result<GroupMap> {
    if hh0.n != 1 {
        return Err(Error::ParameterMismatch("Vⁿ starts at W_1HH₀".into()));
    }
    let lift = verschiebung_lift(algebra, upper.n - 1, &hh0.space, &upper.space, limit)?;
    hh0.descend(upper, &lift)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct HesselholtReport {
    pub n: u32,
    pub hh0_order: String,
    pub upper_order: String,
    pub lower_order: String,
    pub upper_structure: String,
    pub lower_structure: String,
    pub right_exact: bool,
    pub middle_exact: bool,
    pub left_injective: bool,
}

impl HesselholtReport {
    pub fn exact(&self) -> bool {
        self.right_exact && self.middle_exact
    }
}

/// `A/[A,A] →Vⁿ→ W_{n+1}HH₀(A) →R→ W_nHH₀(A) → 0`.
pub fn hesselholt_seq_check(algebra: &AlgebraSpec, n: u32, limit: usize) -> Result<HesselholtReport> {
    let hh0 = whh0(algebra, 1, limit)?;
    let upper = whh0(algebra, n + 1, limit)?;
    let lower = if n == 1 { hh0.clone() } else { whh0(algebra, n, limit)? };
    let r = whh0_restriction(&upper, &lower, limit)?;
    let v = whh0_verschiebung(algebra, &hh0, &upper, limit)?;
    let order = |g: &PresentedAbGroup| g.order().map(|o| o.to_string()).unwrap_or_else(|| "infinite".into());
    Ok(HesselholtReport {
        n,
        hh0_order: order(&hh0.group),
        upper_order: order(&upper.group),
        lower_order: order(&lower.group),
        upper_structure: upper.group.structure(),
        lower_structure: lower.group.structure(),
        right_exact: r.is_surjective(),
        middle_exact: exact_at(&v, &r),
        left_injective: v.is_injective(),
    })
}

/// Additive group of the classical `W_n(A)` for commutative `A`, from counts of `pᵏ`-torsion.
pub fn classical_witt_group(algebra: &AlgebraSpec, n: usize) -> Result<PresentedAbGroup> {
    let ring = WittRing::new(AlgebraRing::new(algebra.clone())?, algebra.p, n)?;
    let elements = ring.elements();
    let p = algebra.p;
    // orders[x] = log_p of the additive order of x
    let mut exps = Vec::with_capacity(elements.len());
    for x in &elements {
        let mut e = 0usize;
        let mut acc = x.clone();
        while !crate::CommRing::is_zero(&ring, &acc) {
            let mut next = acc.clone();
            for _ in 1..p {
                next = crate::CommRing::add(&ring, &next, &acc);
            }
            acc = next;
            e += 1;
        }
        exps.push(e);
    }
    let max = exps.iter().copied().max().unwrap_or(0);
    // s_k = log_p #{x : pᵏx = 0}; number of cyclic factors of order ≥ pᵏ is s_k − s_{k−1}.
    let log_count = |k: usize| -> usize {
        let c = exps.iter().filter(|&&e| e <= k).count();
        let mut l = 0;
        let mut v = 1usize;
        while v < c {
            v *= p as usize;
            l += 1;
        }
        l
    };
    let mut factors = Vec::new();
    for k in 1..=max {
        let at_least_k = log_count(k) - log_count(k - 1);
        let at_least_next = if k < max { log_count(k + 1) - log_count(k) } else { 0 };
        for _ in 0..at_least_k - at_least_next {
            factors.push(BigInt::from(p).pow(k as u32));
        }
    }
    Ok(PresentedAbGroup::from_diagonal(factors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tate::DEFAULT_LIMIT;

    #[test]
    fn slices_satisfy_identities() {
        for a in [AlgebraSpec::prime_field(2), AlgebraSpec::f4(), AlgebraSpec::dual_numbers(2)] {
            let s = WnANatural::new(a, 1, 2, DEFAULT_LIMIT).unwrap();
            s.check_identities().unwrap();
        }
        let s = WnANatural::new(AlgebraSpec::f4(), 2, 2, DEFAULT_LIMIT).unwrap();
        s.check_identities().unwrap();
        assert_eq!(s.space(1).group.order().unwrap(), BigInt::from(32));
    }

    #[test]
    fn whh0_matches_classical_orders() {
        for a in [AlgebraSpec::prime_field(2), AlgebraSpec::f4(), AlgebraSpec::dual_numbers(2), AlgebraSpec::prime_field(3)] {
            for n in 1..=2 {
                let w = whh0(&a, n, DEFAULT_LIMIT).unwrap();
                let c = classical_witt_group(&a, n as usize).unwrap();
                assert!(w.group.isomorphic(&c), "{:?} n={n}: {} vs {}", a.basis, w.group.structure(), c.structure());
            }
        }
    }

    #[test]
    fn hesselholt_sequence() {
        for a in [AlgebraSpec::prime_field(2), AlgebraSpec::f4(), AlgebraSpec::upper_triangular(2)] {
            let r = hesselholt_seq_check(&a, 1, DEFAULT_LIMIT).unwrap();
            assert!(r.exact(), "{:?}: {r:?}", a.basis);
        }
    }
}
