//! Truncated free associative algebras over ℤ.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A word in the generators `x0, x1, …`.
pub type FreeWord = Vec<u8>;

/// Element of ℤ⟨x0, …, x_{g−1}⟩ with all words of length above `bound` discarded.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeAlgElt {
    bound: usize,
    terms: BTreeMap<FreeWord, BigInt>,
}

impl FreeAlgElt {
    pub fn zero(bound: usize) -> Self {
        FreeAlgElt { bound, terms: BTreeMap::new() }
    }

    pub fn one(bound: usize) -> Self {
        Self::word(bound, Vec::new(), BigInt::one())
    }

    pub fn generator(bound: usize, g: u8) -> Self {
        Self::word(bound, vec![g], BigInt::one())
    }

    pub fn word(bound: usize, w: FreeWord, c: BigInt) -> Self {
        let mut e = Self::zero(bound);
        e.add_term(w, c);
        e
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &[u8]) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: FreeWord, c: BigInt) {
        if c.is_zero() || w.len() > self.bound {
            return;
        }
        let entry = self.terms.entry(w).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &FreeAlgElt) -> FreeAlgElt {
        let mut out = FreeAlgElt { bound: self.bound.min(other.bound), terms: BTreeMap::new() };
        for (w, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> FreeAlgElt {
        FreeAlgElt { bound: self.bound, terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &FreeAlgElt) -> FreeAlgElt {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> FreeAlgElt {
        let mut out = Self::zero(self.bound);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &FreeAlgElt) -> FreeAlgElt {
        let bound = self.bound.min(other.bound);
        let mut out = Self::zero(bound);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                if wa.len() + wb.len() > bound {
                    continue;
                }
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_term(w, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> FreeAlgElt {
        (0..e).fold(Self::one(self.bound), |acc, _| acc.mul(self))
    }

    /// Homogeneous component of word length `k`.
    pub fn graded_part(&self, k: usize) -> FreeAlgElt {
        FreeAlgElt {
            bound: self.bound,
            terms: self.terms.iter().filter(|(w, _)| w.len() == k).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Parse `2*x0.x1 - x1.x0 + 3`.
    pub fn parse(text: &str, bound: usize) -> Result<FreeAlgElt> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = Self::zero(bound);
        if s == "0" {
            return Ok(out);
        }
        let mut rest = s.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let (sign, skip) = match rest.as_bytes()[0] {
                b'+' => (1, 1),
                b'-' => (-1, 1),
                _ if first => (1, 0),
                _ => return Err(Error::Parse(format!("expected sign in {text:?}"))),
            };
            first = false;
            rest = &rest[skip..];
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            let (coeff, word) = match term.split_once('*') {
                Some((c, w)) => (c.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?, w),
                None if term.starts_with('x') => (BigInt::one(), term),
                None => (term.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad term {term:?}")))?, ""),
            };
            let mut w = Vec::new();
            if !word.is_empty() {
                for letter in word.split('.') {
                    let g = letter
                        .strip_prefix('x')
                        .and_then(|i| i.parse::<u8>().ok())
                        .ok_or_else(|| Error::Parse(format!("bad generator {letter:?}")))?;
                    w.push(g);
                }
            }
            out.add_term(w, coeff * sign);
        }
        Ok(out)
    }
}

fn word_text(w: &[u8]) -> String {
    w.iter().map(|g| format!("x{g}")).collect::<Vec<_>>().join(".")
}

impl fmt::Display for FreeAlgElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        for (k, (w, c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if w.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", word_text(w))?;
            } else {
                write!(f, "{abs}*{}", word_text(w))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeAlgElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeAlgElt({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noncommutative_square() {
        let x0 = FreeAlgElt::generator(4, 0);
        let x1 = FreeAlgElt::generator(4, 1);
        let s = x0.add(&x1).pow(2).sub(&x0.pow(2)).sub(&x1.pow(2));
        assert_eq!(s.to_string(), "x0.x1 + x1.x0");
        assert_eq!(FreeAlgElt::parse("x0.x1 + x1.x0", 4).unwrap(), s);
        assert!(x0.pow(5).is_zero());
    }
}
