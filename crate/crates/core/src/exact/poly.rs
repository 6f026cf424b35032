//! Multivariate polynomials over ℤ.
//!
//! Terms print in graded lexicographic order: ascending total degree, and
//! within a degree the lexicographically larger exponent vector first, so
//! `x1 + y1 - x0*y0` is canonical in the variables `x0, x1, y0, y1`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ring::CommRing;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, BigInt>,
}

/// Variable names `prefix0, prefix1, …`.
pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

impl MultiPoly {
    pub fn zero(vars: &Arc<Vec<String>>) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Arc<Vec<String>>, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial(vec![0; vars.len()]), c.into());
        p
    }

    pub fn var(vars: &Arc<Vec<String>>, i: usize) -> Self {
        assert!(i < vars.len());
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(Monomial(e), BigInt::one());
        p
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_vars(&self, other: &MultiPoly) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variable sets"
        );
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> MultiPoly {
        if k.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_vars(other);
        let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_default() += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (Monomial(e), c)).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, mut e: u64) -> MultiPoly {
        let mut result = Self::constant(&self.vars, 1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `f / k`, failing with the first monomial whose coefficient is not divisible.
    pub fn exact_div(&self, k: &BigInt) -> Result<MultiPoly> {
        assert!(!k.is_zero(), "division by zero");
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return Err(Error::NotDivisible { monomial: self.monomial_text(m), divisor: k.clone() });
            }
            terms.insert(m.clone(), q);
        }
        Ok(MultiPoly { vars: self.vars.clone(), terms })
    }

    /// Reduce every coefficient mod `m` into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> MultiPoly {
        let mut out = Self::zero(&self.vars);
        for (mono, c) in &self.terms {
            out.add_term(mono.clone(), c.mod_floor(m));
        }
        out
    }

    /// Evaluate in any commutative ring.
    pub fn eval<R: CommRing>(&self, ring: &R, values: &[R::Elem]) -> R::Elem {
        assert_eq!(values.len(), self.vars.len(), "wrong number of values");
        let mut powers: Vec<Vec<R::Elem>> = values.iter().map(|v| vec![ring.one(), v.clone()]).collect();
        let mut total = ring.zero();
        for (m, c) in &self.terms {
            let mut term = ring.from_int(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = ring.mul(cache.last().unwrap(), &cache[1]);
                    cache.push(next);
                }
                term = ring.mul(&term, &cache[e as usize]);
            }
            total = ring.add(&total, &term);
        }
        total
    }

    /// Substitute polynomials (over a common variable set) for the variables.
    pub fn compose(&self, values: &[MultiPoly]) -> MultiPoly {
        let target = values.first().map(|v| v.vars.clone()).expect("need at least one value");
        self.eval(&PolyRing::new(target), values)
    }

    fn monomial_text(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], e) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Parse the canonical text format (`+`, `-`, `*`, `^`, integer coefficients).
    pub fn parse(text: &str, vars: &Arc<Vec<String>>) -> Result<MultiPoly> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Self::zero(vars);
        let mut rest = s.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let (sign, body_start) = match rest.as_bytes()[0] {
                b'+' => (1, 1),
                b'-' => (-1, 1),
                _ if first => (1, 0),
                _ => return Err(Error::Parse(format!("expected sign in {text:?}"))),
            };
            first = false;
            rest = &rest[body_start..];
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in {text:?}")));
            }
            let mut coeff = BigInt::from(sign);
            let mut exps = vec![0u32; vars.len()];
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {text:?}")));
                }
                if factor.as_bytes()[0].is_ascii_digit() {
                    let c: BigInt = factor.parse().map_err(|_| Error::Parse(format!("bad coefficient {factor:?}")))?;
                    coeff *= c;
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?),
                    None => (factor, 1),
                };
                let idx = vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                exps[idx] += e;
            }
            out.add_term(Monomial(exps), coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (k, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let abs = c.abs();
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", self.monomial_text(m))?;
            } else {
                write!(f, "{abs}*{}", self.monomial_text(m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

/// ℤ[vars] as a ring context.
#[derive(Clone, Debug)]
pub struct PolyRing {
    pub vars: Arc<Vec<String>>,
}

impl PolyRing {
    pub fn new(vars: Arc<Vec<String>>) -> Self {
        PolyRing { vars }
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        MultiPoly::var(&self.vars, i)
    }
}

impl CommRing for PolyRing {
    type Elem = MultiPoly;

    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(&self.vars)
    }
    fn one(&self) -> MultiPoly {
        MultiPoly::constant(&self.vars, 1)
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.add(b)
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        a.neg()
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.mul(b)
    }
    fn sub(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.sub(b)
    }
    fn from_int(&self, n: &BigInt) -> MultiPoly {
        MultiPoly::constant(&self.vars, n.clone())
    }
    fn characteristic(&self) -> BigInt {
        BigInt::zero()
    }
    fn inverse(&self, a: &MultiPoly) -> Option<MultiPoly> {
        let one = self.one();
        if *a == one || *a == one.neg() {
            Some(a.clone())
        } else {
            None
        }
    }
    fn pow(&self, a: &MultiPoly, e: u64) -> MultiPoly {
        a.pow(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<Vec<String>> {
        Arc::new(vec!["x".into(), "y".into()])
    }

    #[test]
    fn exact_division() {
        let v = xy();
        let (x, y) = (MultiPoly::var(&v, 0), MultiPoly::var(&v, 1));
        let f = x.scale(&2.into()).add(&y.scale(&4.into()));
        assert_eq!(f.exact_div(&2.into()).unwrap(), x.add(&y.scale(&2.into())));
        assert!(MultiPoly::zero(&v).exact_div(&7.into()).unwrap().is_zero());
        let g = x.add(&y).pow(2).sub(&x.pow(2)).sub(&y.pow(2));
        assert_eq!(g.exact_div(&2.into()).unwrap(), x.mul(&y));
        match x.add(&y.scale(&2.into())).exact_div(&2.into()) {
            Err(Error::NotDivisible { monomial, .. }) => assert_eq!(monomial, "x"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn canonical_text() {
        let v = Arc::new(var_names("x", 2).into_iter().chain(var_names("y", 2)).collect::<Vec<_>>());
        let p = MultiPoly::var(&v, 1).add(&MultiPoly::var(&v, 3)).sub(&MultiPoly::var(&v, 0).mul(&MultiPoly::var(&v, 2)));
        assert_eq!(p.to_string(), "x1 + y1 - x0*y0");
        assert_eq!(MultiPoly::parse("x1 + y1 - x0*y0", &v).unwrap(), p);
        let q = MultiPoly::parse("-3 + 2*x0^2*y1 - x1", &v).unwrap();
        assert_eq!(q.to_string(), "-3 - x1 + 2*x0^2*y1");
        assert_eq!(MultiPoly::zero(&v).to_string(), "0");
    }

    #[test]
    fn evaluation() {
        let v = xy();
        let f = MultiPoly::parse("x^2 - 3*x*y + 1", &v).unwrap();
        let val = f.eval(&super::super::ring::Integers, &[BigInt::from(2), BigInt::from(5)]);
        assert_eq!(val, BigInt::from(4 - 30 + 1));
    }
}
