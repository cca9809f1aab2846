//! Smith normal form over the integers.
//!
//! Elimination uses the entry of minimal absolute value in the active
//! submatrix as pivot and reduces its row and column by Euclidean division.
//! A pivot that fails to divide some later entry absorbs that entry's row
//! and the reduction restarts, which yields the divisibility chain directly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Smith decomposition `U * M * V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, kept because kernels and homology need coordinates
    /// with respect to the columns of `v`.
    pub(crate) v_inv: IntMatrix,
    rank: usize,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Nonzero diagonal entries, each dividing the next.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn v_inverse(&self) -> &IntMatrix {
        &self.v_inv
    }

    /// Columns `rank..` of `V`, a basis of the kernel of the input.
    pub fn kernel_basis(&self) -> IntMatrix {
        let n = self.v.cols();
        self.v.submatrix(0..n, self.rank..n)
    }
}

struct Reduction {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reduction {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_row_multiple(dst, src, q);
        self.u.add_row_multiple(dst, src, q);
    }

    /// col[dst] += q * col[src]; the inverse picks up row[src] -= q * row[dst].
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_col_multiple(dst, src, q);
        self.v.add_col_multiple(dst, src, q);
        self.v_inv.add_row_multiple(src, dst, &-q);
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        self.u.negate_row(r);
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => x.abs() < self.a[b].abs(),
                };
                if better {
                    best = Some((i, j));
                    if x.is_one() || (-x).is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// Clears row `t` and column `t` beyond the diagonal. Returns false if a
    /// nonzero remainder was left behind.
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.a.rows() {
            if self.a[(i, t)].is_zero() {
                continue;
            }
            let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
            self.add_row(i, t, &-q);
            if !self.a[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..self.a.cols() {
            if self.a[(t, j)].is_zero() {
                continue;
            }
            let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
            self.add_col(j, t, &-q);
            if !self.a[(t, j)].is_zero() {
                clean = false;
            }
        }
        clean
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = &self.a[(t, t)];
        for i in t + 1..self.a.rows() {
            for j in t + 1..self.a.cols() {
                if !self.a[(i, j)].is_multiple_of(p) {
                    return Some(i);
                }
            }
        }
        None
    }
}

/// Computes the Smith normal form of `m` together with the unimodular
/// transforms. Works for every shape, including empty ones.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = m.shape();
    let mut r = Reduction {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        while let Some((pi, pj)) = r.min_pivot(t) {
            r.swap_rows(t, pi);
            r.swap_cols(t, pj);
            if !r.clear_cross(t) {
                continue;
            }
            match r.non_divisible_row(t) {
                Some(i) => r.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if r.a[(t, t)].is_zero() {
            break;
        }
        if r.a[(t, t)].is_negative() {
            r.negate_row(t);
        }
        rank += 1;
    }
    SnfResult {
        u: r.u,
        d: r.a,
        v: r.v,
        v_inv: r.v_inv,
        rank,
    }
}

/// Nonzero diagonal of the Smith normal form, in divisibility order.
pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    snf(m).divisors()
}

pub fn rank(m: &IntMatrix) -> usize {
    snf(m).rank()
}
