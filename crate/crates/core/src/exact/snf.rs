//! Smith normal form over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal with `d₁ | d₂ | …`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal entries, `min(rows, cols)` of them, nonzero ones first.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

impl SmithDecomposition {
    pub fn d(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.u.rows(), self.v.rows());
        for (i, x) in self.diagonal.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.diagonal[..self.rank]
    }

    /// Columns of `V` spanning the kernel of `A`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank..self.v.cols()).map(|j| self.v.column(j)).collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    if let Some(sd) = diagonal_fast_path(a) {
        return sd;
    }
    let (m, n) = a.shape();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    // Each row operation E applied to D is mirrored as U ← E·U and U⁻¹ ← U⁻¹·E⁻¹.
    let row_add = |d: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, dst, src, f: &BigInt| {
        d.add_row_multiple(dst, src, f);
        u.add_row_multiple(dst, src, f);
        ui.add_col_multiple(src, dst, &-f);
    };
    let row_swap = |d: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, a, b| {
        d.swap_rows(a, b);
        u.swap_rows(a, b);
        ui.swap_cols(a, b);
    };

    let mut t = 0;
    let limit = m.min(n);
    while t < limit {
        let Some((pi, pj)) = smallest_entry(&d, t) else { break };
        row_swap(&mut d, &mut u, &mut u_inv, t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                row_add(&mut d, &mut u, &mut u_inv, i, t, &-q);
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &-&q);
                v.add_col_multiple(j, t, &-q);
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // Enforce divisibility of the remaining block by the pivot.
                let p = d[(t, t)].clone();
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&p)));
                match bad {
                    Some(i) => row_add(&mut d, &mut u, &mut u_inv, t, i, &BigInt::one()),
                    None => break,
                }
            }
            let Some((pi, pj)) = smallest_in_cross(&d, t) else { break };
            row_swap(&mut d, &mut u, &mut u_inv, t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }
    let diagonal: Vec<BigInt> = (0..limit).map(|i| d[(i, i)].clone()).collect();
    let rank = diagonal.iter().filter(|x| !x.is_zero()).count();
    SmithDecomposition { u, u_inv, v, diagonal, rank }
}

fn smallest_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `t` or column `t`, starting at `(t, t)`.
fn smallest_in_cross(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let candidates = (t..d.rows()).map(|i| (i, t)).chain((t + 1..d.cols()).map(|j| (t, j)));
    candidates
        .filter(|&(i, j)| !d[(i, j)].is_zero())
        .min_by(|&a, &b| d[a].abs().cmp(&d[b].abs()))
}

/// Diagonal input whose entries can be permuted into a divisibility chain.
fn diagonal_fast_path(a: &IntMatrix) -> Option<SmithDecomposition> {
    let (m, n) = a.shape();
    let k = m.min(n);
    for i in 0..m {
        for j in 0..n {
            if i != j && !a[(i, j)].is_zero() {
                return None;
            }
        }
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&x, &y| {
        let (ax, ay) = (a[(x, x)].abs(), a[(y, y)].abs());
        ax.is_zero().cmp(&ay.is_zero()).then(ax.cmp(&ay))
    });
    let entries: Vec<BigInt> = order.iter().map(|&i| a[(i, i)].abs()).collect();
    let rank = entries.iter().filter(|x| !x.is_zero()).count();
    if entries[..rank].windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
        return None;
    }
    let mut u = IntMatrix::zeros(m, m);
    let mut v = IntMatrix::zeros(n, n);
    let row_perm: Vec<usize> = order.iter().copied().chain(k..m).collect();
    let col_perm: Vec<usize> = order.iter().copied().chain(k..n).collect();
    for (pos, &src) in row_perm.iter().enumerate() {
        let sign = if src < k && a[(src, src)].is_negative() { -1 } else { 1 };
        u[(pos, src)] = BigInt::from(sign);
    }
    for (pos, &src) in col_perm.iter().enumerate() {
        v[(src, pos)] = BigInt::one();
    }
    let u_inv = u.transpose();
    Some(SmithDecomposition { u, u_inv, v, diagonal: entries, rank })
}

/// Integer solution of `A·x = b` with zero free coordinates in the Smith basis, or `None`.
pub fn solve_integer_linear(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length must equal row count");
    solve_with(&smith_normal_form(a), b)
}

/// Same as [`solve_integer_linear`] but reusing a decomposition of `A`.
pub fn solve_with(sd: &SmithDecomposition, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let y = sd.u.mul_vec(b);
    let mut z = vec![BigInt::zero(); sd.v.cols()];
    for (i, yi) in y.iter().enumerate() {
        if i < sd.rank {
            let (q, r) = yi.div_rem(&sd.diagonal[i]);
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
        } else if !yi.is_zero() {
            return None;
        }
    }
    Some(sd.v.mul_vec(&z))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithDecomposition {
        let sd = smith_normal_form(a);
        assert_eq!(sd.u.mul(a).mul(&sd.v), sd.d());
        assert_eq!(sd.u.mul(&sd.u_inv), IntMatrix::identity(a.rows()));
        let f = sd.invariant_factors();
        assert!(f.iter().all(|x| x.is_positive()));
        assert!(f.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        sd
    }

    #[test]
    fn two_by_two() {
        let sd = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(sd.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn identity_and_scalar() {
        let sd = check(&IntMatrix::identity(3));
        assert_eq!(sd.d(), IntMatrix::identity(3));
        let sd = check(&IntMatrix::from_rows(&[vec![5]]));
        assert_eq!(sd.diagonal, vec![BigInt::from(5)]);
    }

    #[test]
    fn diagonal_permuted() {
        let sd = check(&IntMatrix::from_rows(&[vec![4, 0, 0], vec![0, -1, 0], vec![0, 0, 0], vec![0, 0, 0]]));
        assert_eq!(sd.diagonal, vec![BigInt::from(1), BigInt::from(4), BigInt::from(0)]);
        assert_eq!(sd.kernel_basis().len(), 1);
    }

    #[test]
    fn empty() {
        let sd = smith_normal_form(&IntMatrix::zeros(0, 3));
        assert_eq!(sd.rank, 0);
        assert_eq!(sd.kernel_basis().len(), 3);
    }

    #[test]
    fn solves() {
        let a = IntMatrix::from_rows(&[vec![2]]);
        assert_eq!(solve_integer_linear(&a, &[BigInt::from(4)]), Some(vec![BigInt::from(2)]));
        assert_eq!(solve_integer_linear(&a, &[BigInt::from(3)]), None);
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![0, 2]]);
        let x = solve_integer_linear(&a, &[BigInt::from(3), BigInt::from(4)]).unwrap();
        assert_eq!(x, vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn rank_deficient() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 6], vec![1, 2, 3], vec![0, 0, 2]]);
        let sd = check(&a);
        assert_eq!(sd.rank, 2);
        for k in sd.kernel_basis() {
            assert!(a.mul_vec(&k).iter().all(Zero::is_zero));
        }
    }
}
