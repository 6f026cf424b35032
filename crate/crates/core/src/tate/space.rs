//! Cyclic tensor powers `N^{⊗L}` of `N = ℤ^d` and their norm cokernels.
//!
//! A basis tuple `t ∈ [0,d)^L` is encoded big-endian: `code = Σ t[k]·d^{L−1−k}`.
//! The generator acts by `σ(t)[k] = t[k−1]`. Invariants have the orbit sums as
//! basis, so the norm cokernel is diagonal: `⊕_O ℤ/(L/|O|)` for `Q_n` and
//! `⊕_O ℤ/(p·L/|O|)` for `Q′_n`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::group::PresentedAbGroup;
use crate::error::{Error, Result};

pub const DEFAULT_LIMIT: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `Q_n`: norm of `σ` over `pⁿ` steps.
    Q,
    /// `Q′_n`: norm over `p^{n+1}` steps.
    QPrime,
}

#[derive(Clone, Debug)]
pub struct Orbit {
    /// Least code in the orbit.
    pub rep: u64,
    pub size: usize,
}

#[derive(Debug)]
pub struct WittSpace {
    pub p: u64,
    pub n: u32,
    pub d: u64,
    pub len: usize,
    pub flavor: Flavor,
    pub orbits: Vec<Orbit>,
    orbit_of: Vec<u32>,
    pub group: Arc<PresentedAbGroup>,
}

/// Number of basis tuples `d^L`, or a resource error.
pub fn tuple_count(d: u64, len: usize, limit: usize) -> Result<usize> {
    let mut count: u128 = 1;
    for _ in 0..len {
        count = count.saturating_mul(d as u128);
        if count > limit as u128 {
            let full = (d as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
            return Err(Error::ResourceLimit { requested: full, limit });
        }
    }
    Ok(count as usize)
}

impl WittSpace {
    pub fn new(p: u64, n: u32, d: u64, flavor: Flavor, limit: usize) -> Result<Arc<WittSpace>> {
        if !crate::exact::int::is_prime(p) {
            return Err(Error::ParameterMismatch(format!("p = {p} is not prime")));
        }
        let len = (p as usize)
            .checked_pow(n)
            .ok_or(Error::ResourceLimit { requested: u128::MAX, limit })?;
        let total = tuple_count(d, len, limit)?;
        let mut orbit_of = vec![u32::MAX; total];
        let mut orbits = Vec::new();
        let top = if len == 0 { 1 } else { d.pow(len as u32 - 1) };
        for code in 0..total as u64 {
            if orbit_of[code as usize] != u32::MAX {
                continue;
            }
            let idx = orbits.len() as u32;
            let mut c = code;
            let mut size = 0;
            loop {
                orbit_of[c as usize] = idx;
                size += 1;
                c = (c % d) * top + c / d;
                if c == code {
                    break;
                }
            }
            orbits.push(Orbit { rep: code, size });
        }
        let scale = match flavor {
            Flavor::Q => 1,
            Flavor::QPrime => p as usize,
        };
        let diag = orbits.iter().map(|o| BigInt::from(scale * len / o.size)).collect();
        let group = Arc::new(PresentedAbGroup::from_diagonal(diag));
        Ok(Arc::new(WittSpace { p, n, d, len, flavor, orbits, orbit_of, group }))
    }

    pub fn q(p: u64, n: u32, d: u64, limit: usize) -> Result<Arc<WittSpace>> {
        Self::new(p, n, d, Flavor::Q, limit)
    }

    pub fn q_prime(p: u64, n: u32, d: u64, limit: usize) -> Result<Arc<WittSpace>> {
        Self::new(p, n, d, Flavor::QPrime, limit)
    }

    pub fn num_tuples(&self) -> usize {
        self.orbit_of.len()
    }

    pub fn orbit_of(&self, code: u64) -> usize {
        self.orbit_of[code as usize] as usize
    }

    pub fn is_rep(&self, code: u64) -> bool {
        self.orbits[self.orbit_of(code)].rep == code
    }

    pub fn rotate(&self, code: u64) -> u64 {
        let top = self.d.pow(self.len as u32 - 1);
        (code % self.d) * top + code / self.d
    }

    /// The codes of an orbit, starting at its representative.
    pub fn orbit_codes(&self, o: usize) -> Vec<u64> {
        let rep = self.orbits[o].rep;
        let mut out = Vec::with_capacity(self.orbits[o].size);
        let mut c = rep;
        loop {
            out.push(c);
            c = self.rotate(c);
            if c == rep {
                break;
            }
        }
        out
    }

    pub fn decode(&self, code: u64) -> Vec<u64> {
        let mut t = vec![0; self.len];
        let mut c = code;
        for k in (0..self.len).rev() {
            t[k] = c % self.d;
            c /= self.d;
        }
        t
    }

    pub fn encode(&self, t: &[u64]) -> u64 {
        t.iter().fold(0, |acc, &x| acc * self.d + x)
    }

    /// Cyclic factor of orbit `o` in the norm cokernel.
    pub fn factor(&self, o: usize) -> u64 {
        let scale = match self.flavor {
            Flavor::Q => 1,
            Flavor::QPrime => self.p as usize,
        };
        (scale * self.len / self.orbits[o].size) as u64
    }

    /// Modulus large enough for every coefficient that matters.
    pub fn modulus(&self) -> i128 {
        (self.p as i128).pow(self.n + 1)
    }

    /// Reduced class of an invariant vector given by orbit-sum coefficients.
    pub fn class_of(&self, orbit_coeffs: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(orbit_coeffs.len(), self.orbits.len());
        self.group.reduce(orbit_coeffs)
    }

    /// Orbit-sum coefficients of a σ-invariant vector on the full lattice.
    pub fn invariant_coeffs(&self, full: &[BigInt]) -> Result<Vec<BigInt>> {
        assert_eq!(full.len(), self.num_tuples());
        let mut out = Vec::with_capacity(self.orbits.len());
        for (o, orbit) in self.orbits.iter().enumerate() {
            let c = &full[orbit.rep as usize];
            if self.orbit_codes(o).iter().any(|&x| &full[x as usize] != c) {
                return Err(Error::ParameterMismatch("vector is not σ-invariant".into()));
            }
            out.push(c.clone());
        }
        Ok(out)
    }

    /// Lattice vector `Σ_{k<L} σᵏ(e_t)` for the coinvariant class of `e_t`.
    pub fn norm_of_tuple(&self, code: u64) -> Vec<BigInt> {
        let mut full = vec![BigInt::zero(); self.num_tuples()];
        let steps = match self.flavor {
            Flavor::Q => self.len,
            Flavor::QPrime => self.len * self.p as usize,
        };
        let mut c = code;
        for _ in 0..steps {
            full[c as usize] += 1;
            c = self.rotate(c);
        }
        full
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let q = WittSpace::q(2, 2, 2, DEFAULT_LIMIT).unwrap();
        assert_eq!(q.group.order(), Some(BigInt::from(32)));
        let q1 = WittSpace::q(2, 1, 2, DEFAULT_LIMIT).unwrap();
        assert_eq!(q1.group.structure(), "(Z/2)^2");
        let qp = WittSpace::q_prime(2, 1, 2, DEFAULT_LIMIT).unwrap();
        assert_eq!(qp.group.order(), Some(BigInt::from(32)));
        let rank1 = WittSpace::q(3, 3, 1, DEFAULT_LIMIT).unwrap();
        assert_eq!(rank1.group.structure(), "Z/27");
    }

    #[test]
    fn limit() {
        assert!(matches!(WittSpace::q(2, 3, 4, DEFAULT_LIMIT), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn rotation_direction() {
        let q = WittSpace::q(3, 1, 3, DEFAULT_LIMIT).unwrap();
        let t = q.encode(&[0, 1, 2]);
        assert_eq!(q.decode(q.rotate(t)), vec![2, 0, 1]);
    }
}
