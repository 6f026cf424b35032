//! Big Witt vectors `𝕎(A)` truncated at `N` components `a₁, …, a_N`.
//!
//! The series model is `a ↦ ∏ᵢ (1 − aᵢ tⁱ)`; addition is multiplication of series.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::classical::WittVector;
use crate::error::{Error, Result};
use crate::exact::{CommRing, FiniteRing, MultiPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigWitt<E> {
    /// `comps[m − 1] = a_m`.
    pub comps: Vec<E>,
}

impl<E> BigWitt<E> {
    pub fn new(comps: Vec<E>) -> Self {
        assert!(!comps.is_empty(), "truncation must be ≥ 1");
        BigWitt { comps }
    }

    pub fn truncation(&self) -> usize {
        self.comps.len()
    }

    /// Component `a_m`, `1 ≤ m ≤ N`.
    pub fn get(&self, m: usize) -> &E {
        &self.comps[m - 1]
    }
}

fn divisors(m: usize) -> impl Iterator<Item = usize> {
    (1..=m).filter(move |d| m.is_multiple_of(*d))
}

pub fn ghost_big<R: CommRing>(ring: &R, v: &BigWitt<R::Elem>) -> Vec<R::Elem> {
    (1..=v.truncation())
        .map(|m| {
            let mut acc = ring.zero();
            for d in divisors(m) {
                let term = ring.mul(&ring.from_i64(d as i64), &ring.pow(v.get(d), (m / d) as u64));
                acc = ring.add(&acc, &term);
            }
            acc
        })
        .collect()
}

/// Truncated series `1 + c₁t + … + c_N t^N`, stored as `[1, c₁, …, c_N]`.
pub type TruncSeries<E> = Vec<E>;

fn series_mul<R: CommRing>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let n = a.len();
    let mut out = vec![ring.zero(); n];
    for (i, x) in a.iter().enumerate() {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
        }
    }
    out
}

/// `1 / (1 − c t^m)` truncated to length `len`.
fn geometric<R: CommRing>(ring: &R, c: &R::Elem, m: usize, len: usize) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); len];
    let mut power = ring.one();
    let mut k = 0;
    while k < len {
        out[k] = power.clone();
        power = ring.mul(&power, c);
        k += m;
    }
    out
}

pub fn series_inverse<R: CommRing>(ring: &R, s: &[R::Elem]) -> Vec<R::Elem> {
    assert!(s[0] == ring.one(), "constant term must be 1");
    let n = s.len();
    let mut inv = vec![ring.zero(); n];
    inv[0] = ring.one();
    for k in 1..n {
        let mut acc = ring.zero();
        for j in 1..=k {
            acc = ring.add(&acc, &ring.mul(&s[j], &inv[k - j]));
        }
        inv[k] = ring.neg(&acc);
    }
    inv
}

pub fn to_series<R: CommRing>(ring: &R, v: &BigWitt<R::Elem>) -> TruncSeries<R::Elem> {
    let len = v.truncation() + 1;
    let mut s = vec![ring.zero(); len];
    s[0] = ring.one();
    for m in 1..len {
        let mut factor = vec![ring.zero(); len];
        factor[0] = ring.one();
        factor[m] = ring.neg(v.get(m));
        s = series_mul(ring, &s, &factor);
    }
    s
}

pub fn from_series<R: CommRing>(ring: &R, s: &[R::Elem]) -> BigWitt<R::Elem> {
    assert!(s.len() >= 2 && s[0] == ring.one(), "series must be 1 + O(t) with N ≥ 1");
    let len = s.len();
    let mut rest = s.to_vec();
    let mut comps = Vec::with_capacity(len - 1);
    for m in 1..len {
        let a = ring.neg(&rest[m]);
        rest = series_mul(ring, &rest, &geometric(ring, &a, m, len));
        comps.push(a);
    }
    BigWitt::new(comps)
}

fn check_pair<E>(u: &BigWitt<E>, v: &BigWitt<E>) -> Result<()> {
    if u.truncation() != v.truncation() {
        return Err(Error::ParameterMismatch(format!(
            "truncations {} and {} differ",
            u.truncation(),
            v.truncation()
        )));
    }
    Ok(())
}

pub fn big_add<R: CommRing>(ring: &R, u: &BigWitt<R::Elem>, v: &BigWitt<R::Elem>) -> Result<BigWitt<R::Elem>> {
    check_pair(u, v)?;
    Ok(from_series(ring, &series_mul(ring, &to_series(ring, u), &to_series(ring, v))))
}

pub fn big_neg<R: CommRing>(ring: &R, u: &BigWitt<R::Elem>) -> BigWitt<R::Elem> {
    from_series(ring, &series_inverse(ring, &to_series(ring, u)))
}

pub fn big_sub<R: CommRing>(ring: &R, u: &BigWitt<R::Elem>, v: &BigWitt<R::Elem>) -> Result<BigWitt<R::Elem>> {
    big_add(ring, u, &big_neg(ring, v))
}

/// Variables `x1..xN, y1..yN`.
pub fn big_variables(n: usize) -> Arc<Vec<String>> {
    Arc::new((1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("y{i}"))).collect())
}

fn ghost_poly_big(comps: &[MultiPoly], m: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(comps[0].vars());
    for d in divisors(m) {
        acc = acc.add(&comps[d - 1].pow((m / d) as u64).scale(&BigInt::from(d)));
    }
    acc
}

/// Solve `ŵ_m(Q) = targets[m − 1]` for `m = 1..`.
fn invert_ghost_big(targets: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    let mut out: Vec<MultiPoly> = Vec::with_capacity(targets.len());
    for (idx, target) in targets.iter().enumerate() {
        let m = idx + 1;
        let mut rest = target.clone();
        for d in divisors(m).filter(|&d| d < m) {
            rest = rest.sub(&out[d - 1].pow((m / d) as u64).scale(&BigInt::from(d)));
        }
        out.push(rest.exact_div(&BigInt::from(m))?);
    }
    Ok(out)
}

type PolyCache = Mutex<HashMap<(usize, usize), Arc<Vec<MultiPoly>>>>;

fn cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached(key: (usize, usize), make: impl FnOnce() -> Result<Vec<MultiPoly>>) -> Result<Arc<Vec<MultiPoly>>> {
    if let Some(hit) = cache().lock().expect("poly cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let polys = Arc::new(make()?);
    Ok(cache().lock().expect("poly cache poisoned").entry(key).or_insert(polys).clone())
}

/// Product polynomials `P₁..P_N` in `x1..xN, y1..yN`.
pub fn big_product_polys(n: usize) -> Result<Arc<Vec<MultiPoly>>> {
    cached((0, n), || {
        let vars = big_variables(n);
        let x: Vec<_> = (0..n).map(|i| MultiPoly::var(&vars, i)).collect();
        let y: Vec<_> = (n..2 * n).map(|i| MultiPoly::var(&vars, i)).collect();
        let targets: Vec<_> = (1..=n).map(|m| ghost_poly_big(&x, m).mul(&ghost_poly_big(&y, m))).collect();
        invert_ghost_big(&targets)
    })
}

/// Big Frobenius `F_k: 𝕎_N → 𝕎_{⌊N/k⌋}` with `ŵ_m(F_k a) = ŵ_{km}(a)`, in `x1..xN`.
pub fn big_frobenius_polys(k: usize, n: usize) -> Result<Arc<Vec<MultiPoly>>> {
    assert!(k >= 1 && k <= n);
    cached((k, n), || {
        let vars = Arc::new((1..=n).map(|i| format!("x{i}")).collect::<Vec<_>>());
        let x: Vec<_> = (0..n).map(|i| MultiPoly::var(&vars, i)).collect();
        let targets: Vec<_> = (1..=n / k).map(|m| ghost_poly_big(&x, k * m)).collect();
        invert_ghost_big(&targets)
    })
}

pub fn big_mul<R: CommRing>(ring: &R, u: &BigWitt<R::Elem>, v: &BigWitt<R::Elem>) -> Result<BigWitt<R::Elem>> {
    check_pair(u, v)?;
    let polys = big_product_polys(u.truncation())?;
    let args: Vec<_> = u.comps.iter().chain(&v.comps).cloned().collect();
    Ok(BigWitt::new(polys.iter().map(|q| q.eval(ring, &args)).collect()))
}

pub fn big_frobenius<R: CommRing>(ring: &R, k: usize, v: &BigWitt<R::Elem>) -> Result<BigWitt<R::Elem>> {
    if k == 0 || k > v.truncation() {
        return Err(Error::ParameterMismatch(format!("F_{k} on truncation {}", v.truncation())));
    }
    let polys = big_frobenius_polys(k, v.truncation())?;
    Ok(BigWitt::new(polys.iter().map(|q| q.eval(ring, &v.comps)).collect()))
}

pub fn big_one<R: CommRing>(ring: &R, n: usize) -> BigWitt<R::Elem> {
    let mut comps = vec![ring.zero(); n];
    comps[0] = ring.one();
    BigWitt::new(comps)
}

/// `ε_k`: the component `a_k = 1`, all others `0`; its ghost is `k·[k | m]`.
pub fn epsilon<R: CommRing>(ring: &R, k: usize, n: usize) -> BigWitt<R::Elem> {
    let mut comps = vec![ring.zero(); n];
    if k <= n {
        comps[k - 1] = ring.one();
    }
    BigWitt::new(comps)
}

/// Multiplication by `ε_k`.
pub fn eps_action<R: CommRing>(ring: &R, k: usize, v: &BigWitt<R::Elem>) -> Result<BigWitt<R::Elem>> {
    big_mul(ring, &epsilon(ring, k, v.truncation()), v)
}

/// Image of a `p`-local rational in `A`.
fn rational_in<R: CommRing>(ring: &R, p: u64, q: &BigRational) -> Result<R::Elem> {
    let den = q.denom();
    let inv = ring.inverse(&ring.from_int(den)).ok_or_else(|| Error::NotPLocal {
        p,
        n: den.try_into().unwrap_or(u64::MAX),
    })?;
    Ok(ring.mul(&ring.from_int(q.numer()), &inv))
}

/// `c·1 ∈ 𝕎_N(A)` for a `p`-local rational `c`, via the series `(1 − t)^c`.
pub fn big_scalar<R: CommRing>(ring: &R, p: u64, c: &BigRational, n: usize) -> Result<BigWitt<R::Elem>> {
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut binom = BigRational::one();
    for k in 0..=n {
        if k > 0 {
            binom = binom * (c - BigRational::from_integer(BigInt::from(k - 1))) / BigRational::from_integer(BigInt::from(k));
        }
        let signed = if k % 2 == 1 { -binom.clone() } else { binom.clone() };
        coeffs.push(rational_in(ring, p, &signed)?);
    }
    Ok(from_series(ring, &coeffs))
}

fn mobius(mut k: usize) -> i64 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= k {
        if k.is_multiple_of(d) {
            k /= d;
            if k.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if k > 1 {
        sign = -sign;
    }
    sign
}

/// Orthogonal idempotent `E_n = Σ_{k prime to p} μ(k)/(nk) · ε_{nk}`; its ghost is the
/// indicator of `{n·pʲ}`.
pub fn idempotent<R: CommRing>(ring: &R, p: u64, n: usize, big_n: usize) -> Result<BigWitt<R::Elem>> {
    let mut acc = BigWitt::new(vec![ring.zero(); big_n]);
    for k in (1..=big_n / n).filter(|k| (*k as u64).gcd(&p) == 1) {
        let mu = mobius(k);
        if mu == 0 {
            continue;
        }
        let coeff = BigRational::new(BigInt::from(mu), BigInt::from(n * k));
        let term = big_mul(ring, &big_scalar(ring, p, &coeff, big_n)?, &epsilon(ring, n * k, big_n))?;
        acc = big_add(ring, &acc, &term)?;
    }
    Ok(acc)
}

/// For each `n ≤ N` prime to `p`, the p-typical Witt vector of length `⌊log_p(N/n)⌋ + 1`
/// obtained by restricting `F_n(E_n·v)` to the indices `pʲ`.
pub fn p_typical_decompose<R: CommRing>(
    ring: &R,
    p: u64,
    v: &BigWitt<R::Elem>,
) -> Result<Vec<(usize, WittVector<R::Elem>)>> {
    let big_n = v.truncation();
    let mut out = Vec::new();
    for n in (1..=big_n).filter(|n| (*n as u64).gcd(&p) == 1) {
        let e = idempotent(ring, p, n, big_n)?;
        let projected = big_frobenius(ring, n, &big_mul(ring, &e, v)?)?;
        let mut comps = Vec::new();
        let mut idx = 1;
        while idx <= big_n / n {
            comps.push(projected.get(idx).clone());
            idx *= p as usize;
        }
        out.push((n, WittVector::new(p, comps)));
    }
    Ok(out)
}

/// `𝕎_N(A)` as a ring context.
#[derive(Clone, Debug)]
pub struct BigWittRing<R> {
    pub base: R,
    pub n: usize,
}

impl<R: CommRing> CommRing for BigWittRing<R> {
    type Elem = BigWitt<R::Elem>;

    fn zero(&self) -> Self::Elem {
        BigWitt::new(vec![self.base.zero(); self.n])
    }
    fn one(&self) -> Self::Elem {
        big_one(&self.base, self.n)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        big_add(&self.base, a, b).expect("truncation fixed by the ring")
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        big_neg(&self.base, a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        big_mul(&self.base, a, b).expect("truncation fixed by the ring")
    }
    fn from_int(&self, k: &BigInt) -> Self::Elem {
        let series = (0..=self.n)
            .map(|i| {
                let b = binomial_int(k, i);
                self.base.from_int(&if i % 2 == 1 { -b } else { b })
            })
            .collect::<Vec<_>>();
        from_series(&self.base, &series)
    }
    fn characteristic(&self) -> BigInt {
        BigInt::zero()
    }
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let _ = a;
        None
    }
}

/// `binom(k, i)` for any integer `k`.
fn binomial_int(k: &BigInt, i: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..i {
        num *= k - BigInt::from(j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

impl<R: FiniteRing> FiniteRing for BigWittRing<R> {
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
        out.into_iter().map(BigWitt::new).collect()
    }
}

/// Render the product polynomials as `P1 = …` lines.
pub fn render_product(polys: &[MultiPoly]) -> String {
    polys.iter().enumerate().map(|(i, q)| format!("P{} = {}\n", i + 1, q)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Integers, ZMod};

    fn z(c: &[i64]) -> BigWitt<BigInt> {
        BigWitt::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn ghost_examples() {
        assert_eq!(ghost_big(&Integers, &z(&[1, 1, 0, 0])), z(&[1, 3, 1, 3]).comps);
        assert_eq!(ghost_big(&Integers, &z(&[0, 1, 0, 0])), z(&[0, 2, 0, 2]).comps);
        assert_eq!(ghost_big(&Integers, &z(&[5, 0, 0])), z(&[5, 25, 125]).comps);
    }

    #[test]
    fn series() {
        assert_eq!(to_series(&Integers, &z(&[1, 0, 0])), z(&[1, -1, 0, 0]).comps);
        assert_eq!(to_series(&Integers, &z(&[0, 0])), z(&[1, 0, 0]).comps);
        assert_eq!(from_series(&Integers, &z(&[1, -2, 1, 0]).comps), z(&[2, -1, -2]));
        assert_eq!(big_add(&Integers, &z(&[1, 0, 0]), &z(&[1, 0, 0])).unwrap(), z(&[2, -1, -2]));
    }

    #[test]
    fn epsilons() {
        let r = Integers;
        let n = 6;
        let e = |k| epsilon(&r, k, n);
        assert_eq!(big_mul(&r, &e(2), &e(3)).unwrap(), e(6));
        let two_e2 = big_add(&r, &e(2), &e(2)).unwrap();
        assert_eq!(big_mul(&r, &e(2), &e(2)).unwrap(), two_e2);
    }

    #[test]
    fn decompose_z8() {
        let r = ZMod::new(8);
        let v = BigWitt::new(vec![BigInt::from(3), BigInt::from(5), BigInt::from(7), BigInt::from(2)]);
        let parts = p_typical_decompose(&r, 2, &v).unwrap();
        let lens: Vec<_> = parts.iter().map(|(n, w)| (*n, w.len())).collect();
        assert_eq!(lens, vec![(1, 3), (3, 1)]);
    }

    #[test]
    fn not_p_local() {
        let r = ZMod::new(6);
        let v = big_one(&r, 3);
        assert!(matches!(p_typical_decompose(&r, 2, &v), Err(Error::NotPLocal { .. })));
    }
}
