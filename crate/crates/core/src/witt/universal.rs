//! Universal Witt polynomials, generated by inverting the ghost map.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::pow;

use crate::error::{Error, Result};
use crate::exact::{var_names, MultiPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolyKind {
    Sum,
    Product,
    Negation,
    Frobenius,
}

impl PolyKind {
    pub const ALL: [PolyKind; 4] = [PolyKind::Sum, PolyKind::Product, PolyKind::Negation, PolyKind::Frobenius];

    pub fn name(self) -> &'static str {
        match self {
            PolyKind::Sum => "sum",
            PolyKind::Product => "product",
            PolyKind::Negation => "negation",
            PolyKind::Frobenius => "frobenius",
        }
    }

    /// Symbol used when printing the `i`-th polynomial.
    pub fn symbol(self) -> &'static str {
        match self {
            PolyKind::Sum => "S",
            PolyKind::Product => "P",
            PolyKind::Negation => "N",
            PolyKind::Frobenius => "f",
        }
    }

    /// Number of the first polynomial of the family (Frobenius starts at `f1`).
    pub fn first_index(self) -> usize {
        match self {
            PolyKind::Frobenius => 1,
            _ => 0,
        }
    }

    pub fn variables(self, n: usize) -> Arc<Vec<String>> {
        let names = match self {
            PolyKind::Sum | PolyKind::Product => var_names("x", n).into_iter().chain(var_names("y", n)).collect(),
            PolyKind::Negation => var_names("x", n),
            PolyKind::Frobenius => var_names("a", n),
        };
        Arc::new(names)
    }
}

impl fmt::Display for PolyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PolyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown polynomial kind {s:?}")))
    }
}

/// Ghost component `w_m = Σ_{i≤m} p^i a_i^{p^{m−i}}` of the given polynomial vector.
pub fn ghost_poly(p: u64, comps: &[MultiPoly], m: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(comps[0].vars());
    for (i, a) in comps.iter().enumerate().take(m + 1) {
        let term = a.pow(p.pow((m - i) as u32)).scale(&pow(BigInt::from(p), i));
        acc = acc.add(&term);
    }
    acc
}

/// Solve `w_m(Q) = targets[m]` for `Q` one component at a time.
fn invert_ghost(p: u64, targets: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    let mut out: Vec<MultiPoly> = Vec::with_capacity(targets.len());
    for (m, target) in targets.iter().enumerate() {
        let mut rest = target.clone();
        for (i, q) in out.iter().enumerate() {
            let term = q.pow(p.pow((m - i) as u32)).scale(&pow(BigInt::from(p), i));
            rest = rest.sub(&term);
        }
        out.push(rest.exact_div(&pow(BigInt::from(p), m))?);
    }
    Ok(out)
}

/// Generate the polynomials of one kind for length-`n` Witt vectors.
///
/// Sum and product use `x0..x{n-1}, y0..y{n-1}`, negation uses `x0..x{n-1}`;
/// these have `n` members. Frobenius uses `a0..a{n-1}` and has `n − 1` members
/// `f1..f{n-1}`, mapping length `n` to length `n − 1`.
pub fn generate(p: u64, n: usize, kind: PolyKind) -> Result<Vec<MultiPoly>> {
    if !crate::exact::int::is_prime(p) || n == 0 {
        return Err(Error::ParameterMismatch(format!("need p prime and n ≥ 1, got p={p}, n={n}")));
    }
    let vars = kind.variables(n);
    let v = |i| MultiPoly::var(&vars, i);
    match kind {
        PolyKind::Sum | PolyKind::Product => {
            let x: Vec<_> = (0..n).map(v).collect();
            let y: Vec<_> = (n..2 * n).map(v).collect();
            let targets: Vec<_> = (0..n)
                .map(|m| {
                    let (gx, gy) = (ghost_poly(p, &x, m), ghost_poly(p, &y, m));
                    if kind == PolyKind::Sum {
                        gx.add(&gy)
                    } else {
                        gx.mul(&gy)
                    }
                })
                .collect();
            invert_ghost(p, &targets)
        }
        PolyKind::Negation => {
            let x: Vec<_> = (0..n).map(v).collect();
            let targets: Vec<_> = (0..n).map(|m| ghost_poly(p, &x, m).neg()).collect();
            invert_ghost(p, &targets)
        }
        PolyKind::Frobenius => {
            let a: Vec<_> = (0..n).map(v).collect();
            let targets: Vec<_> = (1..n).map(|m| ghost_poly(p, &a, m)).collect();
            if targets.is_empty() {
                return Ok(Vec::new());
            }
            invert_ghost(p, &targets)
        }
    }
}

type Cache = Mutex<HashMap<(u64, usize, PolyKind), Arc<Vec<MultiPoly>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized [`generate`].
pub fn universal_polys(p: u64, n: usize, kind: PolyKind) -> Result<Arc<Vec<MultiPoly>>> {
    let key = (p, n, kind);
    if let Some(hit) = cache().lock().expect("poly cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let polys = Arc::new(generate(p, n, kind)?);
    let mut guard = cache().lock().expect("poly cache poisoned");
    Ok(guard.entry(key).or_insert(polys).clone())
}

/// Text form used by the golden files: one `NAME = polynomial` line per member.
pub fn render(kind: PolyKind, polys: &[MultiPoly]) -> String {
    let mut s = String::new();
    for (i, q) in polys.iter().enumerate() {
        s.push_str(&format!("{}{} = {}\n", kind.symbol(), i + kind.first_index(), q));
    }
    s
}

/// Inverse of [`render`].
pub fn parse_rendered(kind: PolyKind, n: usize, text: &str) -> Result<Vec<MultiPoly>> {
    let vars = kind.variables(n);
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let (_, body) = line.split_once('=').ok_or_else(|| Error::Parse(format!("missing '=' in {line:?}")))?;
            MultiPoly::parse(body, &vars)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(kind: PolyKind, n: usize, s: &str) -> MultiPoly {
        MultiPoly::parse(s, &kind.variables(n)).unwrap()
    }

    #[test]
    fn sum_p2() {
        let s = universal_polys(2, 2, PolyKind::Sum).unwrap();
        assert_eq!(s[0].to_string(), "x0 + y0");
        assert_eq!(s[1].to_string(), "x1 + y1 - x0*y0");
    }

    #[test]
    fn product_p2() {
        let pr = universal_polys(2, 2, PolyKind::Product).unwrap();
        assert_eq!(pr[0], parse(PolyKind::Product, 2, "x0*y0"));
        assert_eq!(pr[1], parse(PolyKind::Product, 2, "x0^2*y1 + y0^2*x1 + 2*x1*y1"));
    }

    #[test]
    fn frobenius_p2() {
        let f = universal_polys(2, 3, PolyKind::Frobenius).unwrap();
        assert_eq!(f[0], parse(PolyKind::Frobenius, 3, "a0^2 + 2*a1"));
        assert_eq!(f[1], parse(PolyKind::Frobenius, 3, "-a1^2 + 2*a2 - 2*a0^2*a1"));
        let f3 = universal_polys(3, 2, PolyKind::Frobenius).unwrap();
        assert_eq!(f3[0], parse(PolyKind::Frobenius, 2, "a0^3 + 3*a1"));
    }

    #[test]
    fn negation() {
        let neg2 = universal_polys(2, 2, PolyKind::Negation).unwrap();
        assert_eq!(neg2[1], parse(PolyKind::Negation, 2, "-x0^2 - x1"));
        let neg3 = universal_polys(3, 3, PolyKind::Negation).unwrap();
        for (i, q) in neg3.iter().enumerate() {
            assert_eq!(*q, MultiPoly::var(q.vars(), i).neg());
        }
    }

    #[test]
    fn render_roundtrip() {
        let s = universal_polys(3, 2, PolyKind::Product).unwrap();
        let text = render(PolyKind::Product, &s);
        assert_eq!(parse_rendered(PolyKind::Product, 2, &text).unwrap(), *s);
    }
}
