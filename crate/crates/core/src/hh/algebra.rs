//! Finite-dimensional associative unital 𝔽_p-algebras given by structure constants.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{CommRing, FiniteRing, FpMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub p: u64,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<u64>,
    /// `mul[i][j]` is the coefficient vector of `bᵢ·bⱼ`.
    pub mul: Vec<Vec<Vec<u64>>>,
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<AlgebraSpec> {
        let mut spec: AlgebraSpec = serde_json::from_str(text).map_err(|e| Error::InvalidAlgebra(e.to_string()))?;
        spec.normalize();
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<AlgebraSpec> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidAlgebra(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("algebra serializes")
    }

    fn normalize(&mut self) {
        let p = self.p.max(1);
        for x in &mut self.unit {
            *x %= p;
        }
        for row in &mut self.mul {
            for v in row {
                for x in v {
                    *x %= p;
                }
            }
        }
    }

    /// Shapes, associativity and the two-sided unit.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim;
        if !crate::exact::int::is_prime(self.p) {
            return Err(Error::InvalidAlgebra(format!("p = {} is not prime", self.p)));
        }
        if d == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if self.basis.len() != d || self.unit.len() != d {
            return Err(Error::InvalidAlgebra("basis and unit must have length dim".into()));
        }
        if self.mul.len() != d || self.mul.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) {
            return Err(Error::InvalidAlgebra("mul must be a dim×dim×dim tensor".into()));
        }
        for i in 0..d {
            let e = self.basis_vec(i);
            if self.mul_vec(&self.unit, &e) != e || self.mul_vec(&e, &self.unit) != e {
                return Err(Error::InvalidAlgebra(format!("unit fails on basis element {}", self.basis[i])));
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (a, b, c) = (self.basis_vec(i), self.basis_vec(j), self.basis_vec(k));
                    if self.mul_vec(&self.mul_vec(&a, &b), &c) != self.mul_vec(&a, &self.mul_vec(&b, &c)) {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis[i], self.basis[j], self.basis[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn basis_vec(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn mul_vec(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0u64; self.dim];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = x * y % p;
                for (o, &c) in out.iter_mut().zip(&self.mul[i][j]) {
                    *o = (*o + xy * c) % p;
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.mul[i][j] == self.mul[j][i]))
    }

    /// Multiplication `A ⊗ A → A` as a `d × d²` matrix; column `i·d + j` is `bᵢ·bⱼ`.
    pub fn mult_matrix(&self) -> Vec<Vec<i64>> {
        let d = self.dim;
        (0..d).map(|r| (0..d * d).map(|c| self.mul[c / d][c % d][r] as i64).collect()).collect()
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.dim {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..self.p).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// `A / [A, A]` dimension, by brute force over basis commutators.
    pub fn trace_quotient_dim(&self) -> usize {
        let d = self.dim;
        let p = self.p;
        let mut m = FpMatrix::zeros(p, d, d * d);
        for i in 0..d {
            for j in 0..d {
                let ab = self.mul_vec(&self.basis_vec(i), &self.basis_vec(j));
                let ba = self.mul_vec(&self.basis_vec(j), &self.basis_vec(i));
                for r in 0..d {
                    m.set(r, i * d + j, (ab[r] + p - ba[r]) % p);
                }
            }
        }
        d - m.rank()
    }

    pub fn prime_field(p: u64) -> AlgebraSpec {
        AlgebraSpec { p, dim: 1, basis: vec!["1".into()], unit: vec![1], mul: vec![vec![vec![1]]] }
    }

    /// 𝔽₄ = 𝔽₂[w]/(w² + w + 1).
    pub fn f4() -> AlgebraSpec {
        AlgebraSpec {
            p: 2,
            dim: 2,
            basis: vec!["1".into(), "w".into()],
            unit: vec![1, 0],
            mul: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]],
        }
    }

    /// 𝔽_p[x]/(x²).
    pub fn dual_numbers(p: u64) -> AlgebraSpec {
        AlgebraSpec {
            p,
            dim: 2,
            basis: vec!["1".into(), "x".into()],
            unit: vec![1, 0],
            mul: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]],
        }
    }

    /// Upper-triangular 2×2 matrices with basis `e11, e12, e22`.
    pub fn upper_triangular(p: u64) -> AlgebraSpec {
        let z = vec![0, 0, 0];
        let e = |i: usize| {
            let mut v = vec![0, 0, 0];
            v[i] = 1;
            v
        };
        AlgebraSpec {
            p,
            dim: 3,
            basis: vec!["e11".into(), "e12".into(), "e22".into()],
            unit: vec![1, 0, 1],
            mul: vec![
                vec![e(0), e(1), z.clone()],
                vec![z.clone(), z.clone(), e(1)],
                vec![z.clone(), z.clone(), e(2)],
            ],
        }
    }

    /// Full 2×2 matrices with basis `e11, e12, e21, e22`.
    pub fn matrices2(p: u64) -> AlgebraSpec {
        let idx = |r: usize, c: usize| 2 * r + c;
        let mut mul = vec![vec![vec![0; 4]; 4]; 4];
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for (c, d) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                if b == c {
                    mul[idx(a, b)][idx(c, d)][idx(a, d)] = 1;
                }
            }
        }
        AlgebraSpec {
            p,
            dim: 4,
            basis: vec!["e11".into(), "e12".into(), "e21".into(), "e22".into()],
            unit: vec![1, 0, 0, 1],
            mul,
        }
    }
}

/// A commutative algebra as a ring context (elements are coefficient vectors).
#[derive(Clone, Debug)]
pub struct AlgebraRing {
    pub spec: AlgebraSpec,
}

impl AlgebraRing {
    pub fn new(spec: AlgebraSpec) -> Result<Self> {
        if !spec.is_commutative() {
            return Err(Error::InvalidAlgebra("ring context needs a commutative algebra".into()));
        }
        Ok(AlgebraRing { spec })
    }
}

impl CommRing for AlgebraRing {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.spec.dim]
    }
    fn one(&self) -> Vec<u64> {
        self.spec.unit.clone()
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.spec.p).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| (self.spec.p - x) % self.spec.p).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.spec.mul_vec(a, b)
    }
    fn from_int(&self, n: &BigInt) -> Vec<u64> {
        let p = BigInt::from(self.spec.p);
        let r: u64 = ((n % &p + &p) % &p).try_into().expect("residue fits");
        self.spec.unit.iter().map(|u| u * r % self.spec.p).collect()
    }
    fn characteristic(&self) -> BigInt {
        BigInt::from(self.spec.p)
    }
    fn inverse(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        self.spec.elements().into_iter().find(|b| self.mul(a, b) == self.one())
    }
}

impl FiniteRing for AlgebraRing {
    fn elements(&self) -> Vec<Vec<u64>> {
        self.spec.elements()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for a in [
            AlgebraSpec::prime_field(3),
            AlgebraSpec::f4(),
            AlgebraSpec::dual_numbers(2),
            AlgebraSpec::upper_triangular(2),
            AlgebraSpec::matrices2(2),
        ] {
            a.validate().unwrap();
        }
        assert_eq!(AlgebraSpec::matrices2(2).trace_quotient_dim(), 1);
        assert_eq!(AlgebraSpec::f4().trace_quotient_dim(), 2);
    }

    #[test]
    fn json_roundtrip_and_errors() {
        let text = r#"{"p":2,"dim":2,"basis":["1","x"],"unit":[1,0],"mul":[[[1,0],[0,1]],[[0,1],[0,0]]]}"#;
        let a = AlgebraSpec::from_json(text).unwrap();
        assert_eq!(a, AlgebraSpec::dual_numbers(2));
        let bad = r#"{"p":2,"dim":2,"basis":["1","x"],"unit":[0,1],"mul":[[[1,0],[0,1]],[[0,1],[0,0]]]}"#;
        assert!(matches!(AlgebraSpec::from_json(bad), Err(Error::InvalidAlgebra(_))));
    }
}
