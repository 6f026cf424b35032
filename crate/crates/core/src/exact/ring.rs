//! Commutative base rings, passed around as context objects.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::int::mod_inverse;

#[allow(clippy::wrong_self_convention)]
pub trait CommRing {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// Characteristic, with `0` for characteristic zero.
    fn characteristic(&self) -> BigInt;
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

pub trait FiniteRing: CommRing {
    /// All elements, in a fixed order.
    fn elements(&self) -> Vec<Self::Elem>;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl CommRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn characteristic(&self) -> BigInt {
        BigInt::zero()
    }
    fn inverse(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }
}

/// ℤ/mℤ with representatives in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMod {
    pub modulus: BigInt,
}

impl ZMod {
    pub fn new(modulus: impl Into<BigInt>) -> Self {
        let modulus = modulus.into();
        assert!(modulus.is_positive(), "modulus must be positive");
        ZMod { modulus }
    }

    fn reduce(&self, a: BigInt) -> BigInt {
        a.mod_floor(&self.modulus)
    }
}

impl CommRing for ZMod {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        self.reduce(BigInt::one())
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a + b)
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(-a)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a * b)
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a - b)
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        self.reduce(n.clone())
    }
    fn characteristic(&self) -> BigInt {
        self.modulus.clone()
    }
    fn inverse(&self, a: &BigInt) -> Option<BigInt> {
        mod_inverse(a, &self.modulus)
    }
}

impl FiniteRing for ZMod {
    fn elements(&self) -> Vec<BigInt> {
        let m: u64 = (&self.modulus).try_into().expect("modulus too large to enumerate");
        (0..m).map(BigInt::from).collect()
    }
}

/// `(ℤ/m)[t]/(f)` for a monic `f`; elements are coefficient vectors of length `deg f`,
/// lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyQuotient {
    base: ZMod,
    /// Coefficients of `f` below the leading one, lowest degree first.
    tail: Vec<BigInt>,
}

impl PolyQuotient {
    /// `monic` lists the coefficients of `f` from degree 0 up to and including the leading `1`.
    pub fn new(modulus: impl Into<BigInt>, monic: &[i64]) -> Self {
        assert!(monic.len() >= 2 && monic[monic.len() - 1] == 1, "polynomial must be monic of degree ≥ 1");
        let base = ZMod::new(modulus);
        let tail = monic[..monic.len() - 1].iter().map(|&c| base.from_i64(c)).collect();
        PolyQuotient { base, tail }
    }

    /// 𝔽₄ = 𝔽₂[ω]/(ω² + ω + 1).
    pub fn f4() -> Self {
        Self::new(2, &[1, 1, 1])
    }

    /// 𝔽₂[ε]/(ε²).
    pub fn dual_numbers(p: u64) -> Self {
        Self::new(p, &[0, 0, 1])
    }

    pub fn degree(&self) -> usize {
        self.tail.len()
    }

    pub fn generator(&self) -> Vec<BigInt> {
        let mut g = vec![BigInt::zero(); self.degree()];
        if self.degree() == 1 {
            g[0] = self.base.neg(&self.tail[0]);
        } else {
            g[1] = BigInt::one();
        }
        g
    }

    pub fn element(&self, coeffs: &[i64]) -> Vec<BigInt> {
        let mut e = vec![BigInt::zero(); self.degree()];
        for (i, &c) in coeffs.iter().enumerate() {
            let mut mono = vec![BigInt::zero(); self.degree()];
            if i < self.degree() {
                mono[i] = BigInt::one();
            } else {
                mono = self.pow(&self.generator(), i as u64);
            }
            let term: Vec<BigInt> = mono.iter().map(|m| self.base.mul(m, &self.base.from_i64(c))).collect();
            e = self.add(&e, &term);
        }
        e
    }
}

impl CommRing for PolyQuotient {
    type Elem = Vec<BigInt>;

    fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.degree()]
    }
    fn one(&self) -> Vec<BigInt> {
        let mut e = self.zero();
        e[0] = self.base.one();
        e
    }
    fn add(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn neg(&self, a: &Vec<BigInt>) -> Vec<BigInt> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        let k = self.degree();
        let mut prod = vec![BigInt::zero(); 2 * k - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        // t^k = -tail(t)
        for deg in (k..prod.len()).rev() {
            let c = std::mem::take(&mut prod[deg]);
            if c.is_zero() {
                continue;
            }
            for (i, t) in self.tail.iter().enumerate() {
                prod[deg - k + i] -= &c * t;
            }
        }
        prod.truncate(k);
        prod.into_iter().map(|x| self.base.reduce(x)).collect()
    }
    fn from_int(&self, n: &BigInt) -> Vec<BigInt> {
        let mut e = self.zero();
        e[0] = self.base.from_int(n);
        e
    }
    fn characteristic(&self) -> BigInt {
        self.base.modulus.clone()
    }
    fn inverse(&self, a: &Vec<BigInt>) -> Option<Vec<BigInt>> {
        self.elements().into_iter().find(|b| self.mul(a, b) == self.one())
    }
}

impl FiniteRing for PolyQuotient {
    fn elements(&self) -> Vec<Vec<BigInt>> {
        let digits = self.base.elements();
        let mut out = vec![Vec::new()];
        for _ in 0..self.degree() {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    digits.iter().map(move |d| {
                        let mut v = prefix.clone();
                        v.push(d.clone());
                        v
                    })
                })
                .collect();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_is_a_field() {
        let f4 = PolyQuotient::f4();
        let w = f4.generator();
        let w2 = f4.mul(&w, &w);
        assert_eq!(f4.add(&f4.add(&w2, &w), &f4.one()), f4.zero());
        assert_eq!(f4.pow(&w, 3), f4.one());
        for x in f4.elements() {
            if x != f4.zero() {
                assert!(f4.inverse(&x).is_some());
            }
        }
    }

    #[test]
    fn dual_numbers() {
        let r = PolyQuotient::dual_numbers(2);
        let e = r.generator();
        assert_eq!(r.mul(&e, &e), r.zero());
        assert!(r.inverse(&e).is_none());
        assert_eq!(r.elements().len(), 4);
    }

    #[test]
    fn zmod() {
        let z = ZMod::new(9);
        assert_eq!(z.pow(&BigInt::from(2), 3), BigInt::from(8));
        assert_eq!(z.inverse(&BigInt::from(3)), None);
        assert_eq!(z.inverse(&BigInt::from(2)), Some(BigInt::from(5)));
    }
}
