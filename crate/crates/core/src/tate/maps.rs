//! Structure maps between norm cokernels, all computed on orbit-sum coordinates.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::group::{GroupMap, PresentedAbGroup};
use super::space::{Flavor, WittSpace};
use crate::error::{Error, Result};
use crate::exact::SparseVec;

/// Images of each source letter: target words (all of one length `w`) with coefficients.
type LetterImages = Vec<Vec<(Vec<u64>, i128)>>;

fn check_same_p(a: &WittSpace, b: &WittSpace) -> Result<()> {
    if a.p != b.p {
        return Err(Error::ParameterMismatch(format!("primes {} and {} differ", a.p, b.p)));
    }
    Ok(())
}

/// For every source orbit `O`, the orbit-sum coefficients of `Σ_{t∈O} ⊗ₖ g(t_k)` where the
/// word `g(t_k)` is written at target positions `place(k, j)`.
fn expand(
    src: &WittSpace,
    tgt: &WittSpace,
    images: &LetterImages,
    word_len: usize,
    place: impl Fn(usize, usize) -> usize,
) -> Vec<SparseVec> {
    assert_eq!(src.len * word_len, tgt.len, "tensor lengths do not match");
    let modulus = tgt.modulus();
    let mut out = Vec::with_capacity(src.orbits.len());
    let mut word = vec![0u64; tgt.len];
    for o in 0..src.orbits.len() {
        let mut acc: HashMap<usize, i128> = HashMap::new();
        for code in src.orbit_codes(o) {
            let t = src.decode(code);
            expand_rec(tgt, images, &place, &t, 0, 1, &mut word, modulus, &mut acc);
        }
        let mut col: SparseVec = acc
            .into_iter()
            .filter(|(_, c)| c.rem_euclid(modulus) != 0)
            .map(|(i, c)| (i, BigInt::from(c.rem_euclid(modulus))))
            .collect();
        col.sort_by_key(|(i, _)| *i);
        out.push(col);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn expand_rec(
    tgt: &WittSpace,
    images: &LetterImages,
    place: &impl Fn(usize, usize) -> usize,
    t: &[u64],
    k: usize,
    coeff: i128,
    word: &mut [u64],
    modulus: i128,
    acc: &mut HashMap<usize, i128>,
) {
    if k == t.len() {
        let code = tgt.encode(word);
        if tgt.is_rep(code) {
            *acc.entry(tgt.orbit_of(code)).or_insert(0) += coeff;
        }
        return;
    }
    for (img, c) in &images[t[k] as usize] {
        for (j, &letter) in img.iter().enumerate() {
            word[place(k, j)] = letter;
        }
        let next = (coeff * c).rem_euclid(modulus);
        if next != 0 {
            expand_rec(tgt, images, place, t, k + 1, next, word, modulus, acc);
        }
    }
}

fn orbit_map(src: &WittSpace, tgt: &WittSpace, images: &[SparseVec]) -> Result<GroupMap> {
    GroupMap::from_generator_images(src.group.clone(), tgt.group.clone(), images)
}

/// Reduced class of `m̃^{⊗L}` for an integer vector `m̃`.
pub fn teich_lift(space: &WittSpace, lift: &[i64]) -> Vec<BigInt> {
    assert_eq!(lift.len() as u64, space.d, "vector has wrong length");
    let coeffs: Vec<BigInt> = space
        .orbits
        .iter()
        .map(|o| {
            space.decode(o.rep).iter().fold(BigInt::from(1), |acc, &i| acc * lift[i as usize])
        })
        .collect();
    space.class_of(&coeffs)
}

/// Teichmüller class `T_n(m)` of a vector over 𝔽_p, lifted to `[0, p)`.
pub fn teich_t(space: &WittSpace, m: &[u64]) -> Vec<BigInt> {
    let lift: Vec<i64> = m.iter().map(|&x| (x % space.p) as i64).collect();
    teich_lift(space, &lift)
}

/// `f^{⊗L}` for an integer matrix `f` (rows index the target basis).
pub fn w_on_integer_map(f: &[Vec<i64>], src: &WittSpace, tgt: &WittSpace) -> Result<GroupMap> {
    check_same_p(src, tgt)?;
    if src.len != tgt.len || src.flavor != tgt.flavor {
        return Err(Error::ParameterMismatch("source and target must have the same level".into()));
    }
    if f.len() as u64 != tgt.d || f.iter().any(|r| r.len() as u64 != src.d) {
        return Err(Error::ParameterMismatch(format!("matrix is not {}×{}", tgt.d, src.d)));
    }
    let images: LetterImages = (0..src.d as usize)
        .map(|a| (0..tgt.d as usize).filter(|&b| f[b][a] != 0).map(|b| (vec![b as u64], f[b][a] as i128)).collect())
        .collect();
    orbit_map(src, tgt, &expand(src, tgt, &images, 1, |k, _| k))
}

/// `W_n(f)` for a matrix over 𝔽_p, lifted entrywise to `[0, p)`.
pub fn w_on_map(f: &[Vec<i64>], src: &WittSpace, tgt: &WittSpace) -> Result<GroupMap> {
    let p = src.p as i64;
    let lifted: Vec<Vec<i64>> = f.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    w_on_integer_map(&lifted, src, tgt)
}

fn level_check(src: &WittSpace, tgt: &WittSpace, k: u32) -> Result<()> {
    check_same_p(src, tgt)?;
    let ok = src.flavor == Flavor::Q
        && tgt.flavor == Flavor::Q
        && src.n + k == tgt.n
        && tgt.d.checked_pow((src.p as u32).pow(k)) == Some(src.d);
    if !ok {
        return Err(Error::ParameterMismatch(format!(
            "expected W_m(M^(p^{k})) and W_(m+{k})(M), got level {} rank {} and level {} rank {}",
            src.n, src.d, tgt.n, tgt.d
        )));
    }
    Ok(())
}

/// `Vᵏ: W_m(M^{⊗pᵏ}) → W_{m+k}(M)`, `x ↦ Σ_{s<pᵏ} σˢ x` on the common lattice.
pub fn ver_v_power(src: &WittSpace, tgt: &WittSpace, k: u32) -> Result<GroupMap> {
    level_check(src, tgt, k)?;
    let pk = (src.p as usize).pow(k);
    let images: Vec<SparseVec> = src
        .orbits
        .iter()
        .map(|o| {
            let target = tgt.orbit_of(o.rep);
            let coeff = pk * o.size / tgt.orbits[target].size;
            vec![(target, BigInt::from(coeff))]
        })
        .collect();
    orbit_map(src, tgt, &images)
}

/// `V: W_{n−1}(M^{⊗p}) → W_n(M)`.
pub fn ver_v(src: &WittSpace, tgt: &WittSpace) -> Result<GroupMap> {
    ver_v_power(src, tgt, 1)
}

/// `Fᵏ: W_{m+k}(M) → W_m(M^{⊗pᵏ})`: an orbit sum splits into the orbit sums of `σ^{pᵏ}`.
pub fn frob_f_power(src: &WittSpace, tgt: &WittSpace, k: u32) -> Result<GroupMap> {
    level_check(tgt, src, k)?;
    let images: Vec<SparseVec> = (0..src.orbits.len())
        .map(|o| {
            let mut blocks: Vec<usize> = src.orbit_codes(o).into_iter().map(|c| tgt.orbit_of(c)).collect();
            blocks.sort_unstable();
            blocks.dedup();
            blocks.into_iter().map(|b| (b, BigInt::from(1))).collect()
        })
        .collect();
    orbit_map(src, tgt, &images)
}

/// `F: W_n(M) → W_{n−1}(M^{⊗p})`, `n ≥ 2`.
pub fn frob_f(src: &WittSpace, tgt: &WittSpace) -> Result<GroupMap> {
    if src.n < 2 {
        return Err(Error::ParameterMismatch("F needs n ≥ 2".into()));
    }
    frob_f_power(src, tgt, 1)
}

/// Standard map `Q′_n(N) → Q_{n+1}(N)` induced by `c: fⱼ ↦ fⱼ^{⊗p}` for the basis given by the
/// columns of the unimodular matrix `basis` (the standard basis if `None`), placing the `k`-th
/// factor's word at positions `k, k + L, k + 2L, …`.
pub fn standard_map(src: &WittSpace, tgt: &WittSpace, basis: Option<&[Vec<i64>]>) -> Result<GroupMap> {
    check_same_p(src, tgt)?;
    if src.flavor != Flavor::QPrime || tgt.flavor != Flavor::Q || tgt.n != src.n + 1 || src.d != tgt.d {
        return Err(Error::ParameterMismatch("standard map goes from Q′_n(N) to Q_{n+1}(N)".into()));
    }
    let d = src.d as usize;
    let p = src.p as usize;
    let images: LetterImages = match basis {
        None => (0..d).map(|i| vec![(vec![i as u64; p], 1)]).collect(),
        Some(b) => {
            let inv = unimodular_inverse(b)?;
            (0..d)
                .map(|i| {
                    // e_i = Σ_j inv[j][i] f_j, and f_j^{⊗p} expands over words.
                    let mut acc: HashMap<Vec<u64>, i128> = HashMap::new();
                    for (j, row) in inv.iter().enumerate() {
                        let c = row[i] as i128;
                        if c == 0 {
                            continue;
                        }
                        let fj: Vec<(u64, i128)> =
                            (0..d).filter(|&r| b[r][j] != 0).map(|r| (r as u64, b[r][j] as i128)).collect();
                        let mut words: Vec<(Vec<u64>, i128)> = vec![(Vec::new(), c)];
                        for _ in 0..p {
                            words = words
                                .into_iter()
                                .flat_map(|(w, x)| {
                                    fj.iter().map(move |(l, y)| {
                                        let mut w2 = w.clone();
                                        w2.push(*l);
                                        (w2, x * y)
                                    })
                                })
                                .collect();
                        }
                        for (w, x) in words {
                            *acc.entry(w).or_insert(0) += x;
                        }
                    }
                    let mut v: Vec<_> = acc.into_iter().filter(|(_, x)| *x != 0).collect();
                    v.sort();
                    v
                })
                .collect()
        }
    };
    let len = src.len;
    orbit_map(src, tgt, &expand(src, tgt, &images, p, |k, j| k + j * len))
}

fn unimodular_inverse(b: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let rows: Vec<Vec<BigInt>> = b.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let m = crate::exact::IntMatrix::from_rows(&rows);
    let n = m.rows();
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[i] = BigInt::from(1);
        let col = crate::exact::solve_integer_linear(&m, &e)
            .ok_or_else(|| Error::ParameterMismatch("basis matrix is not unimodular".into()))?;
        for (r, x) in col.into_iter().enumerate() {
            inv[r][i] = x.try_into().map_err(|_| Error::Internal("inverse entry overflow".into()))?;
        }
    }
    Ok(inv)
}

/// Canonical projection `Q′_n → Q_n` (identity on orbit sums).
pub fn projection(src: &WittSpace, tgt: &WittSpace) -> Result<GroupMap> {
    if src.flavor != Flavor::QPrime || tgt.flavor != Flavor::Q || src.n != tgt.n || src.d != tgt.d || src.p != tgt.p {
        return Err(Error::ParameterMismatch("projection goes from Q′_n(N) to Q_n(N)".into()));
    }
    let images: Vec<SparseVec> = (0..src.orbits.len()).map(|o| vec![(o, BigInt::from(1))]).collect();
    orbit_map(src, tgt, &images)
}

/// `R: W_{n+1}(M) → W_n(M)` as the projection composed with the inverse of the standard map.
pub fn restrict_r(src: &WittSpace, tgt: &WittSpace, limit: usize) -> Result<GroupMap> {
    restrict_r_with_basis(src, tgt, None, limit)
}

pub fn restrict_r_with_basis(
    src: &WittSpace,
    tgt: &WittSpace,
    basis: Option<&[Vec<i64>]>,
    limit: usize,
) -> Result<GroupMap> {
    if src.n != tgt.n + 1 || src.d != tgt.d {
        return Err(Error::ParameterMismatch("R goes from W_{n+1}(M) to W_n(M)".into()));
    }
    let qp = WittSpace::q_prime(tgt.p, tgt.n, tgt.d, limit)?;
    let c = standard_map(&qp, src, basis)?;
    let c_inv = c.inverse().map_err(|_| Error::Internal("standard map is not an isomorphism".into()))?;
    Ok(projection(&qp, tgt)?.compose(&c_inv))
}

/// `C: W_n(M) → W_{n+1}(M)`, the dual of `R`: `[O] ↦ p·[Oᵖ]`.
pub fn corestrict_c(src: &WittSpace, tgt: &WittSpace) -> Result<GroupMap> {
    if tgt.n != src.n + 1 || src.d != tgt.d || src.p != tgt.p {
        return Err(Error::ParameterMismatch("C goes from W_n(M) to W_{n+1}(M)".into()));
    }
    let images: Vec<SparseVec> = src
        .orbits
        .iter()
        .map(|o| {
            let t = src.decode(o.rep);
            let repeated: Vec<u64> = t.iter().copied().cycle().take(tgt.len).collect();
            vec![(tgt.orbit_of(tgt.encode(&repeated)), BigInt::from(src.p))]
        })
        .collect();
    orbit_map(src, tgt, &images)
}

/// Bilinear external product `μ: W_n(M₀) × W_n(M₁) → W_n(M₀ ⊗ M₁)`, letters `(a, b) ↦ a·d₁ + b`.
pub struct Mu {
    pub x: Arc<WittSpace>,
    pub y: Arc<WittSpace>,
    pub z: Arc<WittSpace>,
    /// `table[i][j]`: reduced image of the `i`-th and `j`-th reduced basis vectors.
    table: Vec<Vec<Vec<BigInt>>>,
}

impl Mu {
    pub fn new(x: Arc<WittSpace>, y: Arc<WittSpace>, z: Arc<WittSpace>) -> Result<Mu> {
        if x.len != y.len || x.len != z.len || z.d != x.d * y.d || x.p != y.p || x.p != z.p {
            return Err(Error::ParameterMismatch("μ needs W_n(M₀), W_n(M₁), W_n(M₀⊗M₁)".into()));
        }
        let orbit_image = |ox: usize, oy: usize| -> Vec<BigInt> {
            let mut coeffs = vec![BigInt::zero(); z.orbits.len()];
            for cx in x.orbit_codes(ox) {
                let tx = x.decode(cx);
                for cy in y.orbit_codes(oy) {
                    let ty = y.decode(cy);
                    let tz: Vec<u64> = tx.iter().zip(&ty).map(|(a, b)| a * y.d + b).collect();
                    let code = z.encode(&tz);
                    if z.is_rep(code) {
                        coeffs[z.orbit_of(code)] += 1;
                    }
                }
            }
            z.class_of(&coeffs)
        };
        let lift_orbit = |g: &PresentedAbGroup, i: usize| -> usize {
            let l = g.lift(i);
            assert!(l.len() == 1, "orbit groups have single-orbit lifts");
            l[0].0
        };
        let table = (0..x.group.rank_reduced())
            .map(|i| {
                let ox = lift_orbit(&x.group, i);
                (0..y.group.rank_reduced()).map(|j| orbit_image(ox, lift_orbit(&y.group, j))).collect()
            })
            .collect();
        let mu = Mu { x, y, z, table };
        mu.check_well_defined()?;
        Ok(mu)
    }

    fn check_well_defined(&self) -> Result<()> {
        for (i, fx) in self.x.group.factors().iter().enumerate() {
            for (j, fy) in self.y.group.factors().iter().enumerate() {
                let img = &self.table[i][j];
                if !self.z.group.is_zero(&self.z.group.scale(img, fx)) || !self.z.group.is_zero(&self.z.group.scale(img, fy)) {
                    return Err(Error::Internal("μ does not descend to the cokernels".into()));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut acc = self.z.group.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let k = ai * bj;
                for (t, v) in acc.iter_mut().zip(&self.table[i][j]) {
                    *t += v * &k;
                }
            }
        }
        self.z.group.normalize(acc)
    }

    /// `μ(·, b)` as a map `W_n(M₀) → W_n(M₀⊗M₁)`.
    pub fn right(&self, b: &[BigInt]) -> GroupMap {
        let cols: Vec<Vec<BigInt>> = (0..self.x.group.rank_reduced()).map(|i| self.apply(&self.x.group.basis(i), b)).collect();
        let m = crate::exact::IntMatrix::from_columns(
            self.z.group.rank_reduced(),
            &cols.iter().map(|c| to_sparse(c)).collect::<Vec<_>>(),
        );
        GroupMap::from_reduced_matrix(self.x.group.clone(), self.z.group.clone(), m).expect("μ is bilinear")
    }
}

pub fn to_sparse(v: &[BigInt]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

/// Trace twist `τ_{M₀,M₁}: W_n(M₀⊗M₁) → W_n(M₁⊗M₀)`, `((m_k, n_k))_k ↦ ((n_{k−1}, m_k))_k`.
pub fn trace_twist_tau(src: &WittSpace, tgt: &WittSpace, d0: u64, d1: u64) -> Result<GroupMap> {
    if src.d != d0 * d1 || tgt.d != d0 * d1 || src.len != tgt.len || src.p != tgt.p {
        return Err(Error::ParameterMismatch("τ needs W_n(M₀⊗M₁) and W_n(M₁⊗M₀)".into()));
    }
    let l = src.len;
    let images: Vec<SparseVec> = src
        .orbits
        .iter()
        .map(|o| {
            let t = src.decode(o.rep);
            let out: Vec<u64> = (0..l)
                .map(|k| {
                    let prev = t[(k + l - 1) % l];
                    let cur = t[k];
                    (prev % d1) * d0 + cur / d1
                })
                .collect();
            vec![(tgt.orbit_of(tgt.encode(&out)), BigInt::from(1))]
        })
        .collect();
    orbit_map(src, tgt, &images)
}

/// Rotation on `W_n(M^{⊗l})`: the twist `τ_{M, M^{⊗(l−1)}}`.
pub fn rotation(space: &WittSpace, d: u64, l: u32) -> Result<GroupMap> {
    if d.pow(l) != space.d {
        return Err(Error::ParameterMismatch("space is not W_n(M^{⊗l})".into()));
    }
    trace_twist_tau(space, space, d, d.pow(l - 1))
}

/// Duality pairing `W_n(M) × W_n(M*) → ℤ/pⁿ` as a Gram matrix on reduced bases, computed as μ
/// followed by `W_n` of the evaluation map.
pub fn pairing_matrix(m: &Arc<WittSpace>, dual: &Arc<WittSpace>, limit: usize) -> Result<Vec<Vec<BigInt>>> {
    let d = m.d;
    let prod = WittSpace::q(m.p, m.n, d * d, limit)?;
    let scalars = WittSpace::q(m.p, m.n, 1, limit)?;
    let mu = Mu::new(m.clone(), dual.clone(), prod.clone())?;
    let ev: Vec<Vec<i64>> = vec![(0..d * d).map(|c| i64::from(c / d == c % d)).collect()];
    let ev_map = w_on_map(&ev, &prod, &scalars)?;
    let gram = (0..m.group.rank_reduced())
        .map(|i| {
            (0..dual.group.rank_reduced())
                .map(|j| {
                    let v = ev_map.apply(&mu.apply(&m.group.basis(i), &dual.group.basis(j)));
                    v.first().cloned().unwrap_or_default()
                })
                .collect()
        })
        .collect();
    Ok(gram)
}

/// Whether `x ↦ ⟨x, ·⟩` is an isomorphism `W_n(M) → Hom(W_n(M*), ℤ/pⁿ)`.
pub fn pairing_is_perfect(m: &Arc<WittSpace>, dual: &Arc<WittSpace>, gram: &[Vec<BigInt>]) -> Result<bool> {
    let pn = BigInt::from(m.p).pow(m.n);
    // Hom(⊕ ℤ/fⱼ, ℤ/pⁿ) ≅ ⊕ ℤ/fⱼ via φ ↦ (φ(eⱼ) / (pⁿ/fⱼ))ⱼ.
    let hom = Arc::new(PresentedAbGroup::from_diagonal(dual.group.factors().to_vec()));
    let mut cols = Vec::new();
    for row in gram {
        let mut col = Vec::new();
        for (j, f) in dual.group.factors().iter().enumerate() {
            let step = &pn / f;
            let v = &row[j];
            if !(v % &step).is_zero() {
                return Ok(false);
            }
            col.push((j, v / &step));
        }
        cols.push(col);
    }
    let mat = crate::exact::IntMatrix::from_columns(hom.rank_reduced(), &cols);
    let map = GroupMap::from_reduced_matrix(m.group.clone(), hom, mat)?;
    Ok(map.is_isomorphism())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tate::DEFAULT_LIMIT;

    fn q(p: u64, n: u32, d: u64) -> Arc<WittSpace> {
        WittSpace::q(p, n, d, DEFAULT_LIMIT).unwrap()
    }

    #[test]
    fn rank_one_structure() {
        let (w1, w2) = (q(3, 1, 1), q(3, 2, 1));
        let v = ver_v(&w1, &w2).unwrap();
        assert_eq!(v.apply(&[BigInt::from(1)]), vec![BigInt::from(3)]);
        let r = restrict_r(&w2, &w1, DEFAULT_LIMIT).unwrap();
        assert_eq!(r.apply(&[BigInt::from(5)]), vec![BigInt::from(2)]);
        let c = corestrict_c(&w1, &w2).unwrap();
        assert_eq!(c.apply(&[BigInt::from(1)]), vec![BigInt::from(3)]);
        let f = frob_f(&w2, &w1).unwrap();
        assert_eq!(f.apply(&[BigInt::from(5)]), vec![BigInt::from(2)]);
    }

    #[test]
    fn teichmuller_lift_independence() {
        let s = q(2, 1, 2);
        assert_eq!(teich_lift(&s, &[1, 2]), teich_t(&s, &[1, 0]));
        assert!(s.group.is_zero(&teich_t(&s, &[0, 0])));
    }

    #[test]
    fn r_of_teichmuller() {
        let (w1, w2) = (q(2, 1, 2), q(2, 2, 2));
        let r = restrict_r(&w2, &w1, DEFAULT_LIMIT).unwrap();
        for m in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            assert_eq!(r.apply(&teich_t(&w2, &m)), teich_t(&w1, &m));
        }
    }

    #[test]
    fn twist_squares_to_identity() {
        let s = q(2, 1, 4);
        let t = trace_twist_tau(&s, &s, 2, 2).unwrap();
        assert!(t.compose(&t).equals(&GroupMap::identity(s.group.clone())));
    }
}
