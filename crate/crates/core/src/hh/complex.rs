//! Bounded chain complexes of presented abelian groups.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::FpMatrix;
use crate::tate::maps::to_sparse;
use crate::tate::{GroupMap, PresentedAbGroup};

/// `C_0 ← C_1 ← … ← C_k`; `diffs[i]: C_{i+1} → C_i`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub groups: Vec<Arc<PresentedAbGroup>>,
    pub diffs: Vec<GroupMap>,
}

/// `H_i` with its generators written in the reduced coordinates of `C_i`.
#[derive(Clone, Debug)]
pub struct Homology {
    pub group: Arc<PresentedAbGroup>,
    pub cycles: Vec<Vec<BigInt>>,
    pub boundaries: Vec<Vec<BigInt>>,
}

impl ChainComplex {
    pub fn new(groups: Vec<Arc<PresentedAbGroup>>, diffs: Vec<GroupMap>) -> Result<Self> {
        if diffs.len() + 1 != groups.len() {
            return Err(Error::ParameterMismatch("need one differential per positive degree".into()));
        }
        Ok(ChainComplex { groups, diffs })
    }

    pub fn top(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn is_complex(&self) -> bool {
        self.diffs.windows(2).all(|w| w[0].compose(&w[1]).is_zero())
    }

    /// `H_i` for `i < top` (the top degree has no incoming differential).
    pub fn homology(&self, i: usize) -> Result<Homology> {
        if i >= self.top() {
            return Err(Error::ParameterMismatch(format!("homology in degree {i} needs C_{}", i + 1)));
        }
        let c = &self.groups[i];
        let cycles = if i == 0 {
            (0..c.rank_reduced()).map(|j| c.basis(j)).collect()
        } else {
            self.diffs[i - 1].kernel_gens()
        };
        let boundaries = self.diffs[i].image_gens();
        let group = Arc::new(c.subquotient(&cycles, &boundaries)?);
        Ok(Homology { group, cycles, boundaries })
    }
}

/// Map `H(src) → H(tgt)` induced by `f: C_src → C_tgt` sending cycles to cycles and boundaries
/// to boundaries.
pub fn induced_map(src: &Homology, tgt: &Homology, f: &GroupMap) -> Result<GroupMap> {
    let ambient = &f.target;
    let images = src
        .cycles
        .iter()
        .map(|z| {
            let fz = f.apply(z);
            ambient
                .solve_in(&tgt.cycles, &fz)
                .map(|c| to_sparse(&c))
                .ok_or_else(|| Error::Internal("map does not send cycles to cycles".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    GroupMap::from_generator_images(src.group.clone(), tgt.group.clone(), &images)
}

/// `(ℤ/p)^{rows}`-valued map from a matrix over 𝔽_p between elementary abelian groups.
pub fn fp_group_map(m: &FpMatrix, src: &Arc<PresentedAbGroup>, tgt: &Arc<PresentedAbGroup>) -> Result<GroupMap> {
    let images: Vec<_> = (0..m.cols())
        .map(|j| (0..m.rows()).filter(|&i| m.get(i, j) != 0).map(|i| (i, BigInt::from(m.get(i, j)))).collect())
        .collect();
    GroupMap::from_generator_images(src.clone(), tgt.clone(), &images)
}

pub fn elementary(p: u64, dim: usize) -> Arc<PresentedAbGroup> {
    Arc::new(PresentedAbGroup::from_diagonal(vec![BigInt::from(p); dim]))
}
