use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::exact_linalg::{cokernel, FgAbelianGroup, IntMatrix};

use super::KkError;

/// Number of extension classes above which enumeration is refused.
pub const MAX_EXTENSION_CLASSES: u64 = 1 << 16;

/// `0 -> sub -> ? -> quot -> 0` with `sub` free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionProblem {
    pub sub: FgAbelianGroup,
    pub quot: FgAbelianGroup,
}

/// All isomorphism classes of middle groups, sorted and duplicate-free.
///
/// `Ext(quot, sub)` is `(Z/t_1 + ... + Z/t_n)^r` for `sub = Z^r` and torsion
/// invariants `t_i` of `quot`. Each class `a` is realized by generators
/// `e_1..e_r` (for `sub`), the free generators of `quot` and `g_1..g_n`,
/// with relations `t_i g_i = sum_j a_ij e_j`.
///
/// Automorphisms of `Z^r` act on `a` by integer column operations, which
/// bring it to at most `n` nonzero columns. So only `Z^min(r, n)` needs to be
/// enumerated; the remaining generators split off as a free summand.
pub fn solve_extension(p: &ExtensionProblem) -> Result<Vec<FgAbelianGroup>, KkError> {
    if !p.sub.is_free() {
        return Err(KkError::UnsupportedExtension {
            sub: p.sub.clone(),
            quot: p.quot.clone(),
        });
    }
    let r = p.sub.free_rank();
    let n = p.quot.torsion().len();
    if r == 0 || n == 0 {
        return Ok(vec![p.sub.direct_sum(&p.quot)]);
    }
    let split_off = FgAbelianGroup::free(r - r.min(n));
    let r = r.min(n);
    let s = p.quot.free_rank();
    let orders: Option<Vec<u64>> = p.quot.torsion().iter().map(|t| t.to_u64()).collect();
    let classes = orders.as_ref().and_then(|o| {
        o.iter().try_fold(1u64, |acc, &t| {
            (0..r).try_fold(acc, |a, _| a.checked_mul(t))
        })
    });
    let orders = match (orders, classes) {
        (Some(o), Some(c)) if c <= MAX_EXTENSION_CLASSES => o,
        _ => {
            return Err(KkError::TooManyExtensions {
                sub: p.sub.clone(),
                quot: p.quot.clone(),
            })
        }
    };

    let gens = r + s + n;
    let mut out = BTreeSet::new();
    // a[i * r + j] is the coefficient of e_j in the relation for g_i
    let mut a = vec![0u64; n * r];
    loop {
        let mut m = IntMatrix::zeros(gens, n);
        for (i, t) in p.quot.torsion().iter().enumerate() {
            m[(r + s + i, i)] = t.clone();
            for j in 0..r {
                m[(j, i)] = -BigInt::from(a[i * r + j]);
            }
        }
        out.insert(cokernel(&m).direct_sum(&split_off));
        // odometer over a_ij in [0, t_i)
        let mut k = 0;
        loop {
            if k == a.len() {
                return Ok(out.into_iter().collect());
            }
            a[k] += 1;
            if a[k] < orders[k / r] {
                break;
            }
            a[k] = 0;
            k += 1;
        }
    }
}
