//! Finitely generated abelian groups given by generators and relations.
//!
//! Every group keeps a *reduced* coordinate system coming from the Smith normal
//! form of its relation matrix: coordinate `i` lives in `ℤ/fᵢ` (`fᵢ = 0` means ℤ),
//! and trivial factors are dropped. Maps between groups are integer matrices in
//! reduced coordinates.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::snf::solve_with;
use crate::exact::{smith_normal_form, IntMatrix, SparseVec};

#[derive(Clone, Debug)]
pub struct PresentedAbGroup {
    ngens: usize,
    relations: Vec<SparseVec>,
    factors: Vec<BigInt>,
    /// Reduced coordinates of each original generator.
    gen_images: Vec<SparseVec>,
    /// A lift of each reduced basis vector to original generators.
    lifts: Vec<SparseVec>,
}

fn add_into(acc: &mut [BigInt], v: &[(usize, BigInt)], k: &BigInt) {
    for (i, c) in v {
        acc[*i] += c * k;
    }
}

impl PresentedAbGroup {
    /// `ℤ^ngens / ⟨relations⟩`.
    pub fn new(ngens: usize, relations: Vec<SparseVec>) -> Self {
        let relations: Vec<SparseVec> = relations
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, c)| !c.is_zero()).collect::<SparseVec>())
            .filter(|r| !r.is_empty())
            .collect();
        let a = IntMatrix::from_columns(ngens, &relations);
        let sd = smith_normal_form(&a);
        let mut factors = Vec::new();
        let mut gen_images = vec![Vec::new(); ngens];
        let mut lifts = Vec::new();
        for i in 0..ngens {
            let f = sd.diagonal.get(i).cloned().unwrap_or_default();
            if f.is_one() {
                continue;
            }
            let k = factors.len();
            for (j, img) in gen_images.iter_mut().enumerate() {
                let c = &sd.u[(i, j)];
                if !c.is_zero() {
                    img.push((k, c.clone()));
                }
            }
            lifts.push((0..ngens).filter(|&j| !sd.u_inv[(j, i)].is_zero()).map(|j| (j, sd.u_inv[(j, i)].clone())).collect());
            factors.push(f);
        }
        PresentedAbGroup { ngens, relations, factors, gen_images, lifts }
    }

    /// `⊕ ℤ/fⱼ` on generators `j`, with `fⱼ = 0` for a free generator.
    pub fn from_diagonal(diag: Vec<BigInt>) -> Self {
        let ngens = diag.len();
        let mut factors = Vec::new();
        let mut gen_images = vec![Vec::new(); ngens];
        let mut lifts = Vec::new();
        let mut relations = Vec::new();
        for (j, f) in diag.into_iter().enumerate() {
            let f = f.abs();
            if !f.is_zero() {
                relations.push(vec![(j, f.clone())]);
            }
            if f.is_one() {
                continue;
            }
            gen_images[j].push((factors.len(), BigInt::one()));
            lifts.push(vec![(j, BigInt::one())]);
            factors.push(f);
        }
        PresentedAbGroup { ngens, relations, factors, gen_images, lifts }
    }

    pub fn trivial() -> Self {
        Self::from_diagonal(Vec::new())
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &[SparseVec] {
        &self.relations
    }

    /// Factors of the reduced coordinates (none equal to 1; 0 for ℤ).
    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn rank_reduced(&self) -> usize {
        self.factors.len()
    }

    pub fn lift(&self, i: usize) -> &SparseVec {
        &self.lifts[i]
    }

    pub fn gen_image(&self, j: usize) -> &SparseVec {
        &self.gen_images[j]
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|f| !f.is_zero())
    }

    /// Order, or `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.factors.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Canonical invariant factors `d₁ | d₂ | …` (nontrivial, free summands as trailing `0`s).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let finite: Vec<BigInt> = self.factors.iter().filter(|f| !f.is_zero()).cloned().collect();
        let free = self.factors.len() - finite.len();
        let sd = smith_normal_form(&IntMatrix::diagonal(&finite));
        let mut out: Vec<BigInt> = sd.diagonal.into_iter().filter(|d| !d.is_one()).collect();
        out.extend(std::iter::repeat_n(BigInt::zero(), free));
        out
    }

    /// Human-readable structure such as `Z/2 + Z/4` or `0`.
    pub fn structure(&self) -> String {
        let inv = self.invariant_factors();
        if inv.is_empty() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < inv.len() {
            let mut j = i;
            while j < inv.len() && inv[j] == inv[i] {
                j += 1;
            }
            let base = if inv[i].is_zero() { "Z".to_string() } else { format!("Z/{}", inv[i]) };
            parts.push(if j - i == 1 { base } else { format!("({base})^{}", j - i) });
            i = j;
        }
        parts.join(" + ")
    }

    /// Normalize reduced coordinates into `[0, fᵢ)`.
    pub fn normalize(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        assert_eq!(v.len(), self.factors.len(), "wrong reduced length");
        for (x, f) in v.iter_mut().zip(&self.factors) {
            if !f.is_zero() {
                *x = x.mod_floor(f);
            }
        }
        v
    }

    /// Reduced coordinates of a combination of original generators.
    pub fn reduce_sparse(&self, v: &[(usize, BigInt)]) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); self.factors.len()];
        for (j, c) in v {
            add_into(&mut acc, &self.gen_images[*j], c);
        }
        self.normalize(acc)
    }

    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ngens);
        let sparse: SparseVec = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, c.clone())).collect();
        self.reduce_sparse(&sparse)
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.factors.len()]
    }

    pub fn basis(&self, i: usize) -> Vec<BigInt> {
        let mut v = self.zero();
        v[i] = BigInt::one();
        self.normalize(v)
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.normalize(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn scale(&self, a: &[BigInt], k: &BigInt) -> Vec<BigInt> {
        self.normalize(a.iter().map(|x| x * k).collect())
    }

    pub fn is_zero(&self, a: &[BigInt]) -> bool {
        self.normalize(a.to_vec()).iter().all(Zero::is_zero)
    }

    /// Additive order of an element (`None` if infinite).
    pub fn element_order(&self, a: &[BigInt]) -> Option<BigInt> {
        let mut ord = BigInt::one();
        for (x, f) in self.normalize(a.to_vec()).iter().zip(&self.factors) {
            if x.is_zero() {
                continue;
            }
            if f.is_zero() {
                return None;
            }
            ord = ord.lcm(&(f / x.gcd(f)));
        }
        Some(ord)
    }

    /// All elements of a finite group, in reduced coordinates.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let mut out = vec![Vec::new()];
        for f in &self.factors {
            let f: u64 = f.try_into().expect("factor too large to enumerate");
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..f).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(BigInt::from(x));
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Matrix `[gens | diag(factors)]` in reduced coordinates.
    fn span_matrix(&self, gens: &[Vec<BigInt>]) -> IntMatrix {
        let k = self.factors.len();
        let mut cols: Vec<SparseVec> = gens
            .iter()
            .map(|g| g.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect())
            .collect();
        for (i, f) in self.factors.iter().enumerate() {
            if !f.is_zero() {
                cols.push(vec![(i, f.clone())]);
            }
        }
        IntMatrix::from_columns(k, &cols)
    }

    /// `G / ⟨gens⟩`, with generators the reduced coordinates of `G`.
    pub fn quotient(&self, gens: &[Vec<BigInt>]) -> PresentedAbGroup {
        let m = self.span_matrix(gens);
        let cols: Vec<SparseVec> = (0..m.cols())
            .map(|j| (0..m.rows()).filter(|&i| !m[(i, j)].is_zero()).map(|i| (i, m[(i, j)].clone())).collect())
            .collect();
        PresentedAbGroup::new(self.factors.len(), cols)
    }

    /// Order of the subgroup generated by `gens` (finite groups only).
    pub fn subgroup_order(&self, gens: &[Vec<BigInt>]) -> BigInt {
        let total = self.order().expect("subgroup order needs a finite group");
        let q = self.quotient(gens).order().expect("quotient of a finite group is finite");
        total / q
    }

    /// Whether `x ∈ ⟨gens⟩`.
    pub fn contains(&self, gens: &[Vec<BigInt>], x: &[BigInt]) -> bool {
        self.solve_in(gens, x).is_some()
    }

    /// Integers `c` with `Σ cᵢ·gensᵢ = x` in the group, if any.
    pub fn solve_in(&self, gens: &[Vec<BigInt>], x: &[BigInt]) -> Option<Vec<BigInt>> {
        let m = self.span_matrix(gens);
        let mut sol = solve_with(&smith_normal_form(&m), x)?;
        sol.truncate(gens.len());
        Some(sol)
    }

    /// `⟨k⟩ / ⟨i⟩` for subgroups `⟨i⟩ ⊆ ⟨k⟩` given by reduced generators.
    pub fn subquotient(&self, k_gens: &[Vec<BigInt>], i_gens: &[Vec<BigInt>]) -> Result<PresentedAbGroup> {
        let r = k_gens.len();
        let m = self.span_matrix(k_gens);
        let sd = smith_normal_form(&m);
        let mut relations: Vec<SparseVec> = sd
            .kernel_basis()
            .into_iter()
            .map(|v| v.into_iter().take(r).enumerate().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        for g in i_gens {
            let sol = solve_with(&sd, g)
                .ok_or_else(|| Error::Internal("subquotient: numerator does not contain denominator".into()))?;
            relations.push(sol.into_iter().take(r).enumerate().filter(|(_, c)| !c.is_zero()).collect());
        }
        Ok(PresentedAbGroup::new(r, relations))
    }

    /// Same abstract group (equal invariant factors).
    pub fn isomorphic(&self, other: &PresentedAbGroup) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }
}

/// Homomorphism between presented groups, as a matrix in reduced coordinates.
#[derive(Clone, Debug)]
pub struct GroupMap {
    pub source: Arc<PresentedAbGroup>,
    pub target: Arc<PresentedAbGroup>,
    matrix: IntMatrix,
}

impl GroupMap {
    /// From images of the source's original generators, written on the target's
    /// original generators. Fails unless relations map into relations.
    pub fn from_generator_images(
        source: Arc<PresentedAbGroup>,
        target: Arc<PresentedAbGroup>,
        images: &[SparseVec],
    ) -> Result<GroupMap> {
        assert_eq!(images.len(), source.ngens(), "one image per source generator");
        let reduced: Vec<Vec<BigInt>> = images.iter().map(|img| target.reduce_sparse(img)).collect();
        Self::from_reduced_generator_images(source, target, &reduced)
    }

    /// Same as [`from_generator_images`](Self::from_generator_images) with images already
    /// in reduced target coordinates.
    pub fn from_reduced_generator_images(
        source: Arc<PresentedAbGroup>,
        target: Arc<PresentedAbGroup>,
        reduced: &[Vec<BigInt>],
    ) -> Result<GroupMap> {
        let kt = target.rank_reduced();
        for rel in source.relations() {
            let mut acc = vec![BigInt::zero(); kt];
            for (j, c) in rel {
                for (i, x) in reduced[*j].iter().enumerate() {
                    acc[i] += x * c;
                }
            }
            if !target.is_zero(&acc) {
                return Err(Error::Internal("map does not respect relations".into()));
            }
        }
        let ks = source.rank_reduced();
        let mut matrix = IntMatrix::zeros(kt, ks);
        for s in 0..ks {
            let mut acc = vec![BigInt::zero(); kt];
            for (j, c) in source.lift(s) {
                for (i, x) in reduced[*j].iter().enumerate() {
                    acc[i] += x * c;
                }
            }
            for (i, x) in target.normalize(acc).into_iter().enumerate() {
                matrix[(i, s)] = x;
            }
        }
        Ok(GroupMap { source, target, matrix })
    }

    /// From a matrix in reduced coordinates; checks well-definedness.
    pub fn from_reduced_matrix(source: Arc<PresentedAbGroup>, target: Arc<PresentedAbGroup>, m: IntMatrix) -> Result<GroupMap> {
        assert_eq!(m.shape(), (target.rank_reduced(), source.rank_reduced()));
        for (s, f) in source.factors().iter().enumerate() {
            let col: Vec<BigInt> = m.column(s).iter().map(|x| x * f).collect();
            if !target.is_zero(&col) {
                return Err(Error::Internal("map does not respect relations".into()));
            }
        }
        let mut matrix = m;
        for s in 0..matrix.cols() {
            let col = target.normalize(matrix.column(s));
            for (i, x) in col.into_iter().enumerate() {
                matrix[(i, s)] = x;
            }
        }
        Ok(GroupMap { source, target, matrix })
    }

    pub fn identity(g: Arc<PresentedAbGroup>) -> GroupMap {
        let k = g.rank_reduced();
        GroupMap::from_reduced_matrix(g.clone(), g, IntMatrix::identity(k)).expect("identity is well defined")
    }

    pub fn zero(source: Arc<PresentedAbGroup>, target: Arc<PresentedAbGroup>) -> GroupMap {
        let m = IntMatrix::zeros(target.rank_reduced(), source.rank_reduced());
        GroupMap { source, target, matrix: m }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.normalize(self.matrix.mul_vec(x))
    }

    /// Image of an original generator combination of the source.
    pub fn apply_sparse(&self, x: &[(usize, BigInt)]) -> Vec<BigInt> {
        self.apply(&self.source.reduce_sparse(x))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupMap) -> GroupMap {
        assert!(
            Arc::ptr_eq(&other.target, &self.source) || other.target.factors() == self.source.factors(),
            "composition of incompatible maps"
        );
        let m = self.matrix.mul(&other.matrix);
        GroupMap::from_reduced_matrix(other.source.clone(), self.target.clone(), m).expect("composite of maps")
    }

    fn same_ends(&self, other: &GroupMap) {
        assert_eq!(self.source.factors(), other.source.factors(), "different sources");
        assert_eq!(self.target.factors(), other.target.factors(), "different targets");
    }

    pub fn add(&self, other: &GroupMap) -> GroupMap {
        self.same_ends(other);
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] += &other.matrix[(i, j)];
            }
        }
        GroupMap::from_reduced_matrix(self.source.clone(), self.target.clone(), m).expect("sum of maps")
    }

    pub fn scale(&self, k: &BigInt) -> GroupMap {
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] *= k;
            }
        }
        GroupMap::from_reduced_matrix(self.source.clone(), self.target.clone(), m).expect("multiple of a map")
    }

    pub fn sub(&self, other: &GroupMap) -> GroupMap {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.target.is_zero(&self.matrix.column(j)))
    }

    pub fn equals(&self, other: &GroupMap) -> bool {
        self.sub(other).is_zero()
    }

    /// Generators of the image, in target reduced coordinates.
    pub fn image_gens(&self) -> Vec<Vec<BigInt>> {
        (0..self.matrix.cols()).map(|j| self.target.normalize(self.matrix.column(j))).collect()
    }

    /// Generators of the kernel, in source reduced coordinates.
    pub fn kernel_gens(&self) -> Vec<Vec<BigInt>> {
        let ks = self.source.rank_reduced();
        let m = self.matrix.hcat(&IntMatrix::diagonal(self.target.factors()));
        let sd = smith_normal_form(&m);
        sd.kernel_basis()
            .into_iter()
            .map(|v| self.source.normalize(v.into_iter().take(ks).collect()))
            .filter(|v| !v.iter().all(Zero::is_zero))
            .collect()
    }

    pub fn image_order(&self) -> BigInt {
        self.target.subgroup_order(&self.image_gens())
    }

    pub fn kernel_order(&self) -> BigInt {
        self.source.subgroup_order(&self.kernel_gens())
    }

    pub fn cokernel(&self) -> PresentedAbGroup {
        self.target.quotient(&self.image_gens())
    }

    /// The cokernel together with the projection from the target onto it.
    pub fn cokernel_projection(&self) -> (Arc<PresentedAbGroup>, GroupMap) {
        let coker = Arc::new(self.cokernel());
        let kt = self.target.rank_reduced();
        let cols: Vec<Vec<BigInt>> = (0..kt).map(|i| coker.reduce_sparse(&[(i, BigInt::one())])).collect();
        let m = IntMatrix::from_columns(coker.rank_reduced(), &cols.iter().map(|c| crate::tate::maps::to_sparse(c)).collect::<Vec<_>>());
        let proj = GroupMap { source: self.target.clone(), target: coker.clone(), matrix: m };
        (coker, proj)
    }

    pub fn is_injective(&self) -> bool {
        match self.source.order() {
            Some(o) => self.image_order() == o,
            None => self.kernel_gens().is_empty(),
        }
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<GroupMap> {
        if !self.is_isomorphism() {
            return Err(Error::Internal("map is not invertible".into()));
        }
        let ks = self.source.rank_reduced();
        let kt = self.target.rank_reduced();
        let m = self.matrix.hcat(&IntMatrix::diagonal(self.target.factors()));
        let sd = smith_normal_form(&m);
        let mut inv = IntMatrix::zeros(ks, kt);
        for i in 0..kt {
            let e = self.target.basis(i);
            let sol = solve_with(&sd, &e).ok_or_else(|| Error::Internal("inverse: basis vector not hit".into()))?;
            for (r, x) in self.source.normalize(sol.into_iter().take(ks).collect()).into_iter().enumerate() {
                inv[(r, i)] = x;
            }
        }
        GroupMap::from_reduced_matrix(self.target.clone(), self.source.clone(), inv)
    }
}

/// `A →f→ B →g→ C` is exact at `B`.
pub fn exact_at(f: &GroupMap, g: &GroupMap) -> bool {
    g.compose(f).is_zero() && f.image_order() == g.kernel_order()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn cyclic_presentation() {
        // Z^2 / <(2,0),(0,3)> = Z/6
        let g = PresentedAbGroup::new(2, vec![vec![(0, b(2))], vec![(1, b(3))]]);
        assert_eq!(g.invariant_factors(), vec![b(6)]);
        assert_eq!(g.order(), Some(b(6)));
        assert_eq!(g.element_order(&g.reduce(&[b(1), b(0)])), Some(b(2)));
    }

    #[test]
    fn diagonal_groups() {
        let g = PresentedAbGroup::from_diagonal(vec![b(4), b(1), b(2), b(0)]);
        assert_eq!(g.rank_reduced(), 3);
        assert_eq!(g.structure(), "Z/2 + Z/4 + Z");
        assert!(g.is_zero(&g.reduce(&[b(4), b(7), b(2), b(0)])));
    }

    #[test]
    fn maps_and_sequences() {
        let z2 = Arc::new(PresentedAbGroup::from_diagonal(vec![b(2)]));
        let z4 = Arc::new(PresentedAbGroup::from_diagonal(vec![b(4)]));
        let times2 = GroupMap::from_generator_images(z2.clone(), z4.clone(), &[vec![(0, b(2))]]).unwrap();
        let red = GroupMap::from_generator_images(z4.clone(), z2.clone(), &[vec![(0, b(1))]]).unwrap();
        assert!(times2.is_injective());
        assert!(red.is_surjective());
        assert!(exact_at(&times2, &red));
        assert!(GroupMap::from_generator_images(z2.clone(), z4.clone(), &[vec![(0, b(1))]]).is_err());
        let unit = GroupMap::from_generator_images(z4.clone(), z4.clone(), &[vec![(0, b(3))]]).unwrap();
        let inv = unit.inverse().unwrap();
        assert!(inv.compose(&unit).equals(&GroupMap::identity(z4.clone())));
        assert!(times2.inverse().is_err());
    }

    #[test]
    fn subquotients() {
        // Z/8 ⊇ <2> ⊇ <4>: quotient Z/2.
        let g = PresentedAbGroup::from_diagonal(vec![b(8)]);
        let h = g.subquotient(&[vec![b(2)]], &[vec![b(4)]]).unwrap();
        assert_eq!(h.invariant_factors(), vec![b(2)]);
        assert!(g.contains(&[vec![b(2)]], &[b(6)]));
        assert!(!g.contains(&[vec![b(2)]], &[b(3)]));
    }
}
