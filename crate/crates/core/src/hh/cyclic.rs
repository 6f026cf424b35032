//! The cyclic vector space `A^♮`: `[m] ↦ A^{⊗m}`, Hochschild homology and Connes' `B`.

use std::sync::Arc;

use super::algebra::AlgebraSpec;
use super::complex::{elementary, fp_group_map, induced_map, ChainComplex};
use crate::error::{Error, Result};
use crate::exact::FpMatrix;
use crate::tate::GroupMap;

/// Values and structure maps of `A^♮` at `[1], …, [D+1]`.
///
/// Words in `A^{⊗m}` are encoded big-endian in base `d`. Faces `dᵢ: [m] → [m−1]` multiply the
/// factors `i, i+1`; the last one multiplies the last factor into the first. Degeneracies
/// `sᵢ: [m] → [m+1]` insert the unit after factor `i`, and `t(a₀, …, a_{m−1}) = (a_{m−1}, a₀, …)`.
#[derive(Clone, Debug)]
pub struct ANatural {
    pub algebra: AlgebraSpec,
    pub bound: usize,
}

fn word(code: usize, d: usize, m: usize) -> Vec<usize> {
    let mut w = vec![0; m];
    let mut c = code;
    for k in (0..m).rev() {
        w[k] = c % d;
        c /= d;
    }
    w
}

fn code(w: &[usize], d: usize) -> usize {
    w.iter().fold(0, |acc, &x| acc * d + x)
}

impl ANatural {
    pub fn new(algebra: AlgebraSpec, bound: usize) -> Result<Self> {
        if bound == 0 {
            return Err(Error::ParameterMismatch("degree bound must be at least 1".into()));
        }
        algebra.validate()?;
        Ok(ANatural { algebra, bound })
    }

    pub fn p(&self) -> u64 {
        self.algebra.p
    }

    pub fn dim(&self, m: usize) -> usize {
        self.algebra.dim.pow(m as u32)
    }

    fn check_object(&self, m: usize) -> Result<()> {
        if m == 0 || m > self.bound + 1 {
            return Err(Error::ParameterMismatch(format!("object [{m}] outside [1, {}]", self.bound + 1)));
        }
        Ok(())
    }

    /// Linear map `A^{⊗m} → A^{⊗m'}` given on basis words as lists of (word, coefficient).
    fn linear(&self, m: usize, m_out: usize, f: impl Fn(&[usize]) -> Vec<(Vec<usize>, u64)>) -> FpMatrix {
        let d = self.algebra.dim;
        let mut out = FpMatrix::zeros(self.p(), self.dim(m_out), self.dim(m));
        for c in 0..self.dim(m) {
            for (w, x) in f(&word(c, d, m)) {
                out.add_to(code(&w, d), c, x as i64);
            }
        }
        out
    }

    pub fn face(&self, m: usize, i: usize) -> Result<FpMatrix> {
        self.check_object(m)?;
        if m < 2 || i >= m {
            return Err(Error::ParameterMismatch(format!("no face d_{i} on [{m}]")));
        }
        let a = &self.algebra;
        Ok(self.linear(m, m - 1, |w| {
            let (x, y) = if i + 1 < m { (w[i], w[i + 1]) } else { (w[m - 1], w[0]) };
            let prod = a.mul_vec(&a.basis_vec(x), &a.basis_vec(y));
            prod.into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(r, c)| {
                    let mut out = w.to_vec();
                    if i + 1 < m {
                        out[i] = r;
                        out.remove(i + 1);
                    } else {
                        out[0] = r;
                        out.pop();
                    }
                    (out, c)
                })
                .collect()
        }))
    }

    pub fn degeneracy(&self, m: usize, i: usize) -> Result<FpMatrix> {
        self.check_object(m + 1)?;
        if i >= m {
            return Err(Error::ParameterMismatch(format!("no degeneracy s_{i} on [{m}]")));
        }
        Ok(self.insert_unit(m, i + 1))
    }

    /// Insert the unit so that it becomes factor `pos` of the result.
    fn insert_unit(&self, m: usize, pos: usize) -> FpMatrix {
        let unit = self.algebra.unit.clone();
        self.linear(m, m + 1, |w| {
            unit.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(r, &c)| {
                    let mut out = w.to_vec();
                    out.insert(pos, r);
                    (out, c)
                })
                .collect()
        })
    }

    pub fn rotation(&self, m: usize) -> Result<FpMatrix> {
        self.check_object(m)?;
        Ok(self.linear(m, m, |w| {
            let mut out = w.to_vec();
            out.rotate_right(1);
            vec![(out, 1)]
        }))
    }

    /// All simplicial and cyclic identities in the built range; the first failure is named.
    pub fn check_identities(&self) -> std::result::Result<(), String> {
        check_cyclic_identities(self.bound, &|m, i| self.face(m, i), &|m, i| self.degeneracy(m, i), &|m| {
            self.rotation(m)
        }, &|m| FpMatrix::identity(self.p(), self.dim(m)))
    }

    /// Hochschild differential `b = Σ (−1)ʲ dⱼ: C_k → C_{k−1}` with `C_k = A^{⊗(k+1)}`.
    pub fn hochschild_differential(&self, k: usize) -> Result<FpMatrix> {
        let m = k + 1;
        let mut b = FpMatrix::zeros(self.p(), self.dim(m - 1), self.dim(m));
        for j in 0..m {
            b = b.add(&self.face(m, j)?.scale(if j % 2 == 0 { 1 } else { -1 }));
        }
        Ok(b)
    }

    /// `dim_{𝔽_p} HH_k(A)` for `k = 0, …, top` (needs `top + 1 ≤ D`), by ranks.
    pub fn hochschild_dims(&self, top: usize) -> Result<Vec<usize>> {
        if top + 1 > self.bound {
            return Err(Error::ParameterMismatch(format!("HH_{top} needs degree bound {}", top + 1)));
        }
        let ranks: Vec<usize> =
            (1..=top + 1).map(|k| self.hochschild_differential(k).map(|b| b.rank())).collect::<Result<_>>()?;
        Ok((0..=top)
            .map(|k| {
                let incoming = ranks[k];
                let outgoing = if k == 0 { 0 } else { ranks[k - 1] };
                self.dim(k + 1) - incoming - outgoing
            })
            .collect())
    }

    /// The unnormalized Hochschild complex `C_0 ← … ← C_D` over presented groups.
    pub fn complex(&self) -> Result<ChainComplex> {
        let groups: Vec<_> = (0..=self.bound).map(|k| elementary(self.p(), self.dim(k + 1))).collect();
        let diffs = (1..=self.bound)
            .map(|k| fp_group_map(&self.hochschild_differential(k)?, &groups[k], &groups[k - 1]))
            .collect::<Result<Vec<_>>>()?;
        ChainComplex::new(groups, diffs)
    }

    /// Signed cyclic operator `(−1)^k t` on `C_k`.
    fn signed_t(&self, k: usize) -> Result<FpMatrix> {
        Ok(self.rotation(k + 1)?.scale(if k.is_multiple_of(2) { 1 } else { -1 }))
    }

    /// Connes' operator `B = (1 − t)·s·N: C_k → C_{k+1}` with `s` prepending the unit.
    pub fn connes_b_chains(&self, k: usize) -> Result<FpMatrix> {
        self.check_object(k + 2)?;
        let p = self.p();
        let t = self.signed_t(k)?;
        let mut norm = FpMatrix::zeros(p, self.dim(k + 1), self.dim(k + 1));
        let mut power = FpMatrix::identity(p, self.dim(k + 1));
        for _ in 0..=k {
            norm = norm.add(&power);
            power = t.mul(&power);
        }
        let s = self.insert_unit(k + 1, 0);
        let one_minus_t = FpMatrix::identity(p, self.dim(k + 2)).add(&self.signed_t(k + 1)?.scale(-1));
        Ok(one_minus_t.mul(&s).mul(&norm))
    }

    /// `B: HH_k → HH_{k+1}` (needs `k + 2 ≤ D`).
    pub fn connes_b(&self, k: usize) -> Result<GroupMap> {
        if k + 2 > self.bound {
            return Err(Error::ParameterMismatch(format!("B on HH_{k} needs degree bound {}", k + 2)));
        }
        let cx = self.complex()?;
        let b = fp_group_map(&self.connes_b_chains(k)?, &cx.groups[k], &cx.groups[k + 1])?;
        induced_map(&cx.homology(k)?, &cx.homology(k + 1)?, &b)
    }
}

/// Composition and equality of structure maps, for identity checking.
pub trait SliceMap: Sized {
    fn comp(&self, other: &Self) -> Self;
    fn same(&self, other: &Self) -> bool;
}

impl SliceMap for FpMatrix {
    fn comp(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn same(&self, other: &Self) -> bool {
        self == other
    }
}

impl SliceMap for GroupMap {
    fn comp(&self, other: &Self) -> Self {
        self.compose(other)
    }
    fn same(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

type Face<'a, M> = dyn Fn(usize, usize) -> Result<M> + 'a;
type Rot<'a, M> = dyn Fn(usize) -> Result<M> + 'a;

pub(crate) fn check_cyclic_identities<M: SliceMap>(
    bound: usize,
    face: &Face<M>,
    degen: &Face<M>,
    rot: &Rot<M>,
    id: &dyn Fn(usize) -> M,
) -> std::result::Result<(), String> {
    let e = |r: Result<M>| r.map_err(|e| e.to_string());
    let top = bound + 1;
    let expect = |ok: bool, what: String| if ok { Ok(()) } else { Err(what) };
    for m in 1..=top {
        let t = e(rot(m))?;
        let mut power = id(m);
        for _ in 0..m {
            power = t.comp(&power);
        }
        expect(power.same(&id(m)), format!("t^{m} ≠ id on [{m}]"))?;
    }
    for m in 3..=top {
        for j in 0..m {
            for i in 0..j {
                let lhs = e(face(m - 1, i))?.comp(&e(face(m, j))?);
                let rhs = e(face(m - 1, j - 1))?.comp(&e(face(m, i))?);
                expect(lhs.same(&rhs), format!("d_{i} d_{j} ≠ d_{} d_{i} on [{m}]", j - 1))?;
            }
        }
    }
    for m in 2..=top {
        let t = e(rot(m))?;
        let t1 = e(rot(m - 1))?;
        expect(e(face(m, 0))?.comp(&t).same(&e(face(m, m - 1))?), format!("d_0 t ≠ d_last on [{m}]"))?;
        for i in 1..m {
            let lhs = e(face(m, i))?.comp(&t);
            let rhs = t1.comp(&e(face(m, i - 1))?);
            expect(lhs.same(&rhs), format!("d_{i} t ≠ t d_{} on [{m}]", i - 1))?;
        }
    }
    for m in 1..top {
        for j in 0..m {
            for i in 0..=m {
                let lhs = e(face(m + 1, i))?.comp(&e(degen(m, j))?);
                let rhs = if i < j {
                    e(degen(m - 1, j - 1))?.comp(&e(face(m, i))?)
                } else if i == j || i == j + 1 {
                    id(m)
                } else {
                    e(degen(m - 1, j))?.comp(&e(face(m, i - 1))?)
                };
                expect(lhs.same(&rhs), format!("d_{i} s_{j} identity fails on [{m}]"))?;
            }
        }
        let t = e(rot(m))?;
        let t1 = e(rot(m + 1))?;
        for i in 1..m {
            let lhs = e(degen(m, i))?.comp(&t);
            let rhs = t1.comp(&e(degen(m, i - 1))?);
            expect(lhs.same(&rhs), format!("s_{i} t ≠ t s_{} on [{m}]", i - 1))?;
        }
        let lhs = e(degen(m, 0))?.comp(&t);
        let rhs = t1.comp(&t1).comp(&e(degen(m, m - 1))?);
        expect(lhs.same(&rhs), format!("s_0 t ≠ t² s_last on [{m}]"))?;
    }
    for m in 1..top.saturating_sub(1) {
        for j in 0..m {
            for i in 0..=j {
                let lhs = e(degen(m + 1, i))?.comp(&e(degen(m, j))?);
                let rhs = e(degen(m + 1, j + 1))?.comp(&e(degen(m, i))?);
                expect(lhs.same(&rhs), format!("s_{i} s_{j} ≠ s_{} s_{i} on [{m}]", j + 1))?;
            }
        }
    }
    Ok(())
}

pub fn hochschild_homology_orders(slice: &ANatural, top: usize) -> Result<Vec<num_bigint::BigInt>> {
    let cx = slice.complex()?;
    (0..=top)
        .map(|k| {
            let h = cx.homology(k)?;
            h.group.order().ok_or_else(|| Error::Internal("homology of a finite complex is finite".into()))
        })
        .collect()
}

pub fn elementary_group(p: u64, dim: usize) -> Arc<crate::tate::PresentedAbGroup> {
    elementary(p, dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold() {
        for a in [AlgebraSpec::prime_field(2), AlgebraSpec::f4(), AlgebraSpec::upper_triangular(2), AlgebraSpec::dual_numbers(3)]
        {
            ANatural::new(a, 2).unwrap().check_identities().unwrap();
        }
    }

    #[test]
    fn hochschild_examples() {
        let f4 = ANatural::new(AlgebraSpec::f4(), 2).unwrap();
        assert_eq!(f4.hochschild_dims(1).unwrap(), vec![2, 0]);
        let m2 = ANatural::new(AlgebraSpec::matrices2(2), 1).unwrap();
        assert_eq!(m2.hochschild_dims(0).unwrap(), vec![1]);
        let dual = ANatural::new(AlgebraSpec::dual_numbers(2), 1).unwrap();
        assert_eq!(dual.face(2, 0).unwrap(), dual.face(2, 1).unwrap());
    }

    #[test]
    fn connes_b_anticommutes_with_b() {
        let a = ANatural::new(AlgebraSpec::dual_numbers(2), 3).unwrap();
        for k in 1..=2 {
            let lhs = a.hochschild_differential(k + 1).unwrap().mul(&a.connes_b_chains(k).unwrap());
            let rhs = a.connes_b_chains(k - 1).unwrap().mul(&a.hochschild_differential(k).unwrap());
            assert!(lhs.add(&rhs).is_zero(), "bB + Bb ≠ 0 in degree {k}");
        }
    }
}
