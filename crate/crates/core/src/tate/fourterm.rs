//! The sequence `0 → M → (M^{⊗p})_σ → (M^{⊗p})^σ → M → 0` for `M = 𝔽_p^d`.

use crate::error::Result;
use crate::exact::FpMatrix;
use crate::tate::space::WittSpace;

pub struct FourTerm {
    pub p: u64,
    pub d: u64,
    /// `M → (M^{⊗p})_σ`, `m ↦ [m^{⊗p}]`.
    pub psi: FpMatrix,
    /// Norm `(M^{⊗p})_σ → (M^{⊗p})^σ` on orbit representatives / orbit sums.
    pub tr: FpMatrix,
    /// `(M^{⊗p})^σ → M`, the coefficients on diagonal tuples.
    pub psi_hat: FpMatrix,
    space: std::sync::Arc<WittSpace>,
}

impl FourTerm {
    pub fn new(p: u64, d: u64, limit: usize) -> Result<FourTerm> {
        let space = WittSpace::q(p, 1, d, limit)?;
        let k = space.orbits.len();
        let mut ft = FourTerm {
            p,
            d,
            psi: FpMatrix::zeros(p, k, d as usize),
            tr: FpMatrix::zeros(p, k, k),
            psi_hat: FpMatrix::zeros(p, d as usize, k),
            space,
        };
        for i in 0..d as usize {
            let mut e = vec![0; d as usize];
            e[i] = 1;
            let col = ft.psi_of(&e);
            for (r, v) in col.into_iter().enumerate() {
                ft.psi.set(r, i, v);
            }
        }
        for (o, orbit) in ft.space.orbits.iter().enumerate() {
            ft.tr.set(o, o, (p as usize / orbit.size) as u64 % p);
            if orbit.size == 1 {
                let letter = ft.space.decode(orbit.rep)[0];
                ft.psi_hat.set(letter as usize, o, 1);
            }
        }
        Ok(ft)
    }

    /// Coinvariant class of `m̃^{⊗p}`, computed by full expansion.
    pub fn psi_of(&self, m: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0u64; self.space.orbits.len()];
        for code in 0..self.space.num_tuples() as u64 {
            let coeff = self.space.decode(code).iter().fold(1u64, |acc, &i| acc * (m[i as usize] % p) % p);
            if coeff != 0 {
                let o = self.space.orbit_of(code);
                out[o] = (out[o] + coeff) % p;
            }
        }
        out
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.d as usize, self.space.orbits.len())
    }

    /// Exactness at all four spots.
    pub fn is_exact(&self) -> bool {
        let (d, k) = self.dims();
        let r_psi = self.psi.rank();
        let r_tr = self.tr.rank();
        let r_hat = self.psi_hat.rank();
        self.tr.mul(&self.psi).is_zero()
            && self.psi_hat.mul(&self.tr).is_zero()
            && r_psi == d
            && r_psi == k - r_tr
            && r_tr == k - r_hat
            && r_hat == d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tate::DEFAULT_LIMIT;

    #[test]
    fn exact_small() {
        for (p, d) in [(2, 1), (2, 2), (3, 2)] {
            assert!(FourTerm::new(p, d, DEFAULT_LIMIT).unwrap().is_exact());
        }
    }
}
