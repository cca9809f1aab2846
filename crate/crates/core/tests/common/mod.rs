//! Independent oracles shared by the integration and acceptance tests.

#![allow(dead_code)]

use bianchi_core::exact_linalg::{cokernel, FgAbelianGroup, IntMatrix};
use bianchi_core::kk_pipeline::{solve_extension, ExtensionProblem, SixTermHints, SixTermProblem};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

/// Determinant by fraction-free Gaussian elimination (Bareiss).
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone() * sign
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

pub fn entries(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Elementary divisors as quotients of successive gcds of `k x k` minors.
pub fn divisors_by_minors(m: &IntMatrix) -> Vec<BigInt> {
    let a = entries(m);
    let mut out = Vec::new();
    let mut last = BigInt::from(1);
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rows in subsets(m.rows(), k) {
            for cols in subsets(m.cols(), k) {
                let minor: Vec<Vec<BigInt>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect())
                    .collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &last);
        last = g;
    }
    out
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, range: i64) -> IntMatrix {
    let data = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-range..=range)))
        .collect();
    IntMatrix::from_vec(rows, cols, data)
}

/// A random finitely generated group: the cokernel of a small random matrix.
pub fn random_group<R: Rng>(rng: &mut R) -> FgAbelianGroup {
    let rows = rng.gen_range(0..=3);
    let cols = rng.gen_range(0..=3);
    let mut m = random_matrix(rng, rows, cols, 4);
    // sparsify so torsion-free and zero groups both turn up
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(0.4) {
                m[(i, j)] = BigInt::zero();
            }
        }
    }
    cokernel(&m)
}

/// A genuinely exact hexagon `A0 -> ... -> A5 -> A0`, built from image
/// groups `I_i = im(A_i -> A_{i+1})` with `A_i` an extension of `I_i` by
/// `I_{i-1}`. Non-split extensions are used whenever the subgroup is free.
pub struct ExactHexagon {
    pub images: [FgAbelianGroup; 6],
    pub nodes: [FgAbelianGroup; 6],
}

impl ExactHexagon {
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let images: [FgAbelianGroup; 6] = std::array::from_fn(|_| random_group(rng));
        let nodes = std::array::from_fn(|i| {
            let sub = &images[(i + 5) % 6];
            let quot = &images[i];
            if sub.is_free() {
                let all = solve_extension(&ExtensionProblem {
                    sub: sub.clone(),
                    quot: quot.clone(),
                })
                .expect("small extension");
                all.choose(rng).unwrap().clone()
            } else {
                sub.direct_sum(quot)
            }
        });
        ExactHexagon { images, nodes }
    }

    /// Arrow `i` has rank `rank I_i`, kernel `I_{i-1}` and cokernel `I_{i+1}`.
    pub fn problem<R: Rng>(&self, rng: &mut R, unknown: usize, hint_prob: f64) -> SixTermProblem {
        let mut hints = SixTermHints::default();
        for i in 0..6 {
            if rng.gen_bool(hint_prob) {
                hints.rank.insert(i, self.images[i].free_rank());
            }
            if rng.gen_bool(hint_prob) {
                hints
                    .kernel_torsion
                    .insert(i, torsion_u64(&self.images[(i + 5) % 6]));
            }
            if rng.gen_bool(hint_prob) {
                hints
                    .cokernel_torsion
                    .insert(i, torsion_u64(&self.images[(i + 1) % 6]));
            }
        }
        let nodes = std::array::from_fn(|i| {
            (i != unknown && i != unknown + 3).then(|| self.nodes[i].clone())
        });
        SixTermProblem { nodes, hints }
    }

    pub fn ranks(&self) -> [usize; 6] {
        std::array::from_fn(|i| self.images[i].free_rank())
    }
}

fn torsion_u64(g: &FgAbelianGroup) -> Vec<u64> {
    g.torsion()
        .iter()
        .map(|t| t.abs().try_into().expect("small torsion"))
        .collect()
}
