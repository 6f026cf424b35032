use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision signed integer.
pub type IntScalar = BigInt;

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `base^exp` as a `u64`, `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// Canonical representative of `a` modulo `m > 0`, in `[0, m)`.
pub fn modulo(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// An element of ℤ/mℤ with its modulus attached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModScalar {
    modulus: BigInt,
    value: BigInt,
}

impl ModScalar {
    pub fn new(value: impl Into<BigInt>, modulus: impl Into<BigInt>) -> Self {
        let modulus = modulus.into();
        assert!(modulus.is_positive(), "modulus must be positive");
        let value = value.into().mod_floor(&modulus);
        ModScalar { modulus, value }
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn pow(&self, exp: &BigInt) -> ModScalar {
        ModScalar {
            modulus: self.modulus.clone(),
            value: self.value.modpow(exp, &self.modulus),
        }
    }

    pub fn inverse(&self) -> Option<ModScalar> {
        mod_inverse(&self.value, &self.modulus).map(|v| ModScalar::new(v, self.modulus.clone()))
    }

    fn check(&self, other: &ModScalar) {
        assert_eq!(self.modulus, other.modulus, "mismatched moduli");
    }
}

impl fmt::Debug for ModScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl fmt::Display for ModScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl Add for &ModScalar {
    type Output = ModScalar;
    fn add(self, rhs: &ModScalar) -> ModScalar {
        self.check(rhs);
        ModScalar::new(&self.value + &rhs.value, self.modulus.clone())
    }
}

impl Sub for &ModScalar {
    type Output = ModScalar;
    fn sub(self, rhs: &ModScalar) -> ModScalar {
        self.check(rhs);
        ModScalar::new(&self.value - &rhs.value, self.modulus.clone())
    }
}

impl Mul for &ModScalar {
    type Output = ModScalar;
    fn mul(self, rhs: &ModScalar) -> ModScalar {
        self.check(rhs);
        ModScalar::new(&self.value * &rhs.value, self.modulus.clone())
    }
}

impl Neg for &ModScalar {
    type Output = ModScalar;
    fn neg(self) -> ModScalar {
        ModScalar::new(-&self.value, self.modulus.clone())
    }
}

impl ModScalar {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn mod_scalar_arithmetic() {
        let a = ModScalar::new(7, 25);
        let b = ModScalar::new(-3, 25);
        assert_eq!(b.value(), &int(22));
        assert_eq!((&a + &b).value(), &int(4));
        assert_eq!((&a * &b).value(), &int(4));
        assert_eq!(a.pow(&int(5)), a);
        assert_eq!((&a * &a.inverse().unwrap()).value(), &int(1));
        assert!(ModScalar::new(5, 25).inverse().is_none());
    }
}
