//! p-typical Witt vectors `W_n(A)` over a commutative ring.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::universal::{universal_polys, PolyKind};
use crate::error::{Error, Result};
use crate::exact::{CommRing, FiniteRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittVector<E> {
    pub p: u64,
    pub comps: Vec<E>,
}

impl<E> WittVector<E> {
    pub fn new(p: u64, comps: Vec<E>) -> Self {
        assert!(!comps.is_empty(), "Witt vectors have length ≥ 1");
        WittVector { p, comps }
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }
}

fn check_pair<E>(u: &WittVector<E>, v: &WittVector<E>) -> Result<()> {
    if u.p != v.p || u.len() != v.len() {
        return Err(Error::ParameterMismatch(format!(
            "W_{}(p={}) vs W_{}(p={})",
            u.comps.len(),
            u.p,
            v.comps.len(),
            v.p
        )));
    }
    Ok(())
}

/// `w_m = Σ_{i≤m} p^i a_i^{p^{m−i}}` for `m < n`.
pub fn ghost<R: CommRing>(ring: &R, v: &WittVector<R::Elem>) -> Vec<R::Elem> {
    let p = v.p;
    (0..v.len())
        .map(|m| {
            let mut acc = ring.zero();
            for i in 0..=m {
                let term = ring.pow(&v.comps[i], p.pow((m - i) as u32));
                let scaled = ring.mul(&ring.from_int(&BigInt::from(p).pow(i as u32)), &term);
                acc = ring.add(&acc, &scaled);
            }
            acc
        })
        .collect()
}

fn eval_all<R: CommRing>(ring: &R, p: u64, n: usize, kind: PolyKind, args: &[R::Elem]) -> Result<Vec<R::Elem>> {
    let polys = universal_polys(p, n, kind)?;
    Ok(polys.iter().map(|q| q.eval(ring, args)).collect())
}

pub fn witt_add<R: CommRing>(ring: &R, u: &WittVector<R::Elem>, v: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
    check_pair(u, v)?;
    let args: Vec<_> = u.comps.iter().chain(&v.comps).cloned().collect();
    Ok(WittVector::new(u.p, eval_all(ring, u.p, u.len(), PolyKind::Sum, &args)?))
}

pub fn witt_mul<R: CommRing>(ring: &R, u: &WittVector<R::Elem>, v: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
    check_pair(u, v)?;
    let args: Vec<_> = u.comps.iter().chain(&v.comps).cloned().collect();
    Ok(WittVector::new(u.p, eval_all(ring, u.p, u.len(), PolyKind::Product, &args)?))
}

pub fn witt_neg<R: CommRing>(ring: &R, u: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
    Ok(WittVector::new(u.p, eval_all(ring, u.p, u.len(), PolyKind::Negation, &u.comps)?))
}

pub fn witt_sub<R: CommRing>(ring: &R, u: &WittVector<R::Elem>, v: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
    witt_add(ring, u, &witt_neg(ring, v)?)
}

/// `F: W_{n+1}(A) → W_n(A)`.
pub fn witt_frobenius<R: CommRing>(ring: &R, v: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
    if v.len() < 2 {
        return Err(Error::ParameterMismatch("Frobenius needs length ≥ 2".into()));
    }
    Ok(WittVector::new(v.p, eval_all(ring, v.p, v.len(), PolyKind::Frobenius, &v.comps)?))
}

/// `V: W_n(A) → W_{n+1}(A)`, `⟨a₀,…⟩ ↦ ⟨0,a₀,…⟩`.
pub fn witt_v<R: CommRing>(ring: &R, v: &WittVector<R::Elem>) -> WittVector<R::Elem> {
    let mut comps = Vec::with_capacity(v.len() + 1);
    comps.push(ring.zero());
    comps.extend(v.comps.iter().cloned());
    WittVector::new(v.p, comps)
}

/// `R: W_{n+1}(A) → W_n(A)`, dropping the last component.
pub fn witt_r<E: Clone>(v: &WittVector<E>) -> Result<WittVector<E>> {
    if v.len() < 2 {
        return Err(Error::ParameterMismatch("restriction needs length ≥ 2".into()));
    }
    Ok(WittVector::new(v.p, v.comps[..v.len() - 1].to_vec()))
}

pub fn teichmuller<R: CommRing>(ring: &R, p: u64, a: &R::Elem, n: usize) -> WittVector<R::Elem> {
    let mut comps = vec![ring.zero(); n];
    comps[0] = a.clone();
    WittVector::new(p, comps)
}

/// `W_n(A)` as a ring context.
#[derive(Clone, Debug)]
pub struct WittRing<R> {
    pub base: R,
    pub p: u64,
    pub n: usize,
}

impl<R: CommRing> WittRing<R> {
    pub fn new(base: R, p: u64, n: usize) -> Result<Self> {
        if !crate::exact::int::is_prime(p) || n == 0 {
            return Err(Error::ParameterMismatch(format!("need p prime and n ≥ 1, got p={p}, n={n}")));
        }
        Ok(WittRing { base, p, n })
    }

    pub fn vector(&self, comps: Vec<R::Elem>) -> WittVector<R::Elem> {
        assert_eq!(comps.len(), self.n);
        WittVector::new(self.p, comps)
    }

    pub fn ghost(&self, v: &WittVector<R::Elem>) -> Vec<R::Elem> {
        ghost(&self.base, v)
    }

    pub fn teichmuller(&self, a: &R::Elem) -> WittVector<R::Elem> {
        teichmuller(&self.base, self.p, a, self.n)
    }

    fn scalar(&self, k: &BigInt) -> WittVector<R::Elem> {
        let mut acc = self.zero();
        let mut base = self.one();
        let mut k_abs = k.abs();
        let two = BigInt::from(2);
        while !k_abs.is_zero() {
            if (&k_abs % &two) == BigInt::from(1) {
                acc = self.add(&acc, &base);
            }
            k_abs /= &two;
            if !k_abs.is_zero() {
                base = self.add(&base, &base);
            }
        }
        if k.is_negative() {
            self.neg(&acc)
        } else {
            acc
        }
    }
}

impl<R: CommRing> CommRing for WittRing<R> {
    type Elem = WittVector<R::Elem>;

    fn zero(&self) -> Self::Elem {
        self.vector(vec![self.base.zero(); self.n])
    }
    fn one(&self) -> Self::Elem {
        self.teichmuller(&self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        witt_add(&self.base, a, b).expect("length fixed by the ring")
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        witt_neg(&self.base, a).expect("length fixed by the ring")
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        witt_mul(&self.base, a, b).expect("length fixed by the ring")
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.scalar(n)
    }
    fn characteristic(&self) -> BigInt {
        let c = self.base.characteristic();
        if c.is_zero() {
            return c;
        }
        let mut order = c.clone();
        while self.scalar(&order) != self.zero() {
            order *= &c;
        }
        for q in primes_dividing(&c) {
            let q = BigInt::from(q);
            while (&order % &q).is_zero() && self.scalar(&(&order / &q)) == self.zero() {
                order /= &q;
            }
        }
        order
    }
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        // The product's m-th component is affine in the m-th component of either factor.
        let inv0 = self.base.inverse(&a.comps[0])?;
        let mut u = self.zero();
        u.comps[0] = inv0;
        for m in 1..self.n {
            u.comps[m] = self.base.zero();
            let at0 = self.mul(&u, a).comps[m].clone();
            u.comps[m] = self.base.one();
            let at1 = self.mul(&u, a).comps[m].clone();
            let slope = self.base.sub(&at1, &at0);
            let c = self.base.inverse(&slope)?;
            u.comps[m] = self.base.mul(&c, &self.base.neg(&at0));
        }
        (self.mul(&u, a) == self.one()).then_some(u)
    }
}

fn primes_dividing(n: &BigInt) -> Vec<u64> {
    let mut n: u64 = n.try_into().expect("characteristic too large");
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl<R: FiniteRing> FiniteRing for WittRing<R> {
    fn elements(&self) -> Vec<Self::Elem> {
        let base = self.base.elements();
        let mut out: Vec<Vec<R::Elem>> = vec![Vec::new()];
        for _ in 0..self.n {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    base.iter().map(move |b| {
                        let mut v = prefix.clone();
                        v.push(b.clone());
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|c| WittVector::new(self.p, c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Integers, PolyQuotient, ZMod};

    fn zv(p: u64, c: &[i64]) -> WittVector<BigInt> {
        WittVector::new(p, c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn ghost_examples() {
        assert_eq!(ghost(&Integers, &zv(2, &[3, 5])), vec![BigInt::from(3), BigInt::from(19)]);
        assert_eq!(ghost(&Integers, &zv(3, &[1, 0, 0])), vec![BigInt::from(1); 3]);
        assert_eq!(ghost(&Integers, &zv(2, &[0, 7])), vec![BigInt::from(0), BigInt::from(14)]);
    }

    #[test]
    fn w2_f2_is_z4() {
        let f2 = ZMod::new(2);
        let one = zv(2, &[1, 0]);
        assert_eq!(witt_add(&f2, &one, &one).unwrap(), zv(2, &[0, 1]));
        let w = WittRing::new(f2, 2, 2).unwrap();
        assert_eq!(w.characteristic(), BigInt::from(4));
    }

    #[test]
    fn product_example() {
        let r = witt_mul(&Integers, &zv(2, &[1, 0]), &zv(2, &[0, 1])).unwrap();
        assert_eq!(r, zv(2, &[0, 1]));
    }

    #[test]
    fn f4_teichmuller() {
        let f4 = PolyQuotient::f4();
        let w = f4.generator();
        let w2 = f4.mul(&w, &w);
        let ring = WittRing::new(f4.clone(), 2, 2).unwrap();
        let prod = ring.mul(&ring.teichmuller(&w), &ring.teichmuller(&w2));
        assert_eq!(prod, ring.one());
    }

    #[test]
    fn mismatched_lengths() {
        assert!(matches!(
            witt_add(&Integers, &zv(2, &[1]), &zv(2, &[1, 0])),
            Err(Error::ParameterMismatch(_))
        ));
        assert!(witt_frobenius(&Integers, &zv(2, &[1])).is_err());
    }

    #[test]
    fn units_of_w2_f3() {
        let ring = WittRing::new(ZMod::new(3), 3, 2).unwrap();
        let units = ring.elements().into_iter().filter(|x| ring.inverse(x).is_some()).count();
        assert_eq!(units, 6);
    }
}
