//! `expr := term ('+' term)*`, `term := atom ('*' atom)*`,
//! `atom := int | '(' expr ')' | ('F'|'V'|'R') '(' expr ')' | 'T' '(' int ')'`.

use num_bigint::BigInt;
use wittlab::exact::ZMod;
use wittlab::witt::classical::{witt_r, witt_v};
use wittlab::witt::{WittRing, WittVector};
use wittlab::{CommRing, Error, Result};

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ring: &'a WittRing<ZMod>,
}

type V = WittVector<BigInt>;

impl Parser<'_> {
    fn peek(&mut self) -> Option<char> {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            other => Err(self.error(&format!("expected '{c}', found {}", describe(other)))),
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {}", self.pos))
    }

    fn same_length(&self, a: &V, b: &V) -> Result<()> {
        if a.len() != b.len() {
            return Err(Error::ParameterMismatch(format!("operands have lengths {} and {}", a.len(), b.len())));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<V> {
        let mut acc = self.term()?;
        while self.peek() == Some('+') {
            self.pos += 1;
            let rhs = self.term()?;
            self.same_length(&acc, &rhs)?;
            acc = ring_at(self.ring, acc.len()).add(&acc, &rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<V> {
        let mut acc = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let rhs = self.atom()?;
            self.same_length(&acc, &rhs)?;
            acc = ring_at(self.ring, acc.len()).mul(&acc, &rhs);
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.peek();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<V> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.integer()?;
                Ok(ring_at(self.ring, self.ring.n).from_int(&k))
            }
            Some(op @ ('F' | 'V' | 'R' | 'T')) => {
                self.pos += 1;
                self.expect('(')?;
                let out = if op == 'T' {
                    let k = self.integer()?;
                    self.ring.teichmuller(&self.ring.base.from_int(&k))
                } else {
                    let v = self.expr()?;
                    let n = v.len();
                    match op {
                        'F' => {
                            let base = &self.ring.base;
                            WittVector::new(v.p, v.comps.iter().map(|a| base.pow(a, self.ring.p)).collect())
                        }
                        'V' => {
                            let mut w = witt_v(&self.ring.base, &v);
                            w.comps.truncate(n);
                            w
                        }
                        _ => witt_r(&v)?,
                    }
                };
                self.expect(')')?;
                Ok(out)
            }
            other => Err(self.error(&format!("unexpected {}", describe(other)))),
        }
    }
}

fn describe(c: Option<char>) -> String {
    c.map(|c| format!("'{c}'")).unwrap_or_else(|| "end of input".into())
}

fn ring_at(ring: &WittRing<ZMod>, n: usize) -> WittRing<ZMod> {
    WittRing { base: ring.base.clone(), p: ring.p, n }
}

/// Evaluate in `W_n(𝔽_p)`; `R` shortens the length by one, `F` is the Frobenius of `𝔽_p`
/// acting on components and `V` is truncated back to the operand's length.
pub fn evaluate(p: u64, n: usize, src: &str) -> Result<WittVector<BigInt>> {
    let ring = WittRing::new(ZMod::new(p), p, n)?;
    let mut parser = Parser { chars: src.chars().collect(), pos: 0, ring: &ring };
    let v = parser.expr()?;
    if let Some(c) = parser.peek() {
        return Err(parser.error(&format!("unexpected '{c}'")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(p: u64, n: usize, s: &str) -> Vec<i64> {
        evaluate(p, n, s).unwrap().comps.iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn teichmuller_sums() {
        assert_eq!(show(2, 2, "T(1)+T(1)"), vec![0, 1]);
        assert_eq!(show(2, 2, "V(T(1))"), vec![0, 1]);
        assert_eq!(show(2, 2, "T(0)"), vec![0, 0]);
        assert_eq!(show(3, 2, "2 * (T(1) + 1)"), vec![1, 1]);
        assert_eq!(show(2, 3, "R(3)"), vec![1, 1]);
    }

    #[test]
    fn errors() {
        assert!(matches!(evaluate(2, 2, "T(1)+"), Err(Error::Parse(_))));
        assert!(matches!(evaluate(2, 2, "T(1)+R(T(1))"), Err(Error::ParameterMismatch(_))));
        assert!(matches!(evaluate(2, 2, "Q(1)"), Err(Error::Parse(_))));
    }
}
