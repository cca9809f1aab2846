use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::snf::snf;
use super::IntMatrix;

/// Finitely generated abelian group `Z^r + Z/t1 + ... + Z/tn` in invariant
/// factor form: every `ti >= 2` and `ti | t(i+1)`.
///
/// Construction always canonicalizes, so `==` is isomorphism and the derived
/// ordering is a total order on isomorphism classes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: i64) -> Self {
        Self::from_cyclic_orders(0, [BigInt::from(order)])
    }

    /// Direct sum of `Z^free_rank` with cyclic groups of the given orders.
    /// Orders may be in any arrangement; `0` contributes a free summand and
    /// `1` contributes nothing.
    pub fn from_cyclic_orders<I: IntoIterator<Item = BigInt>>(free_rank: usize, orders: I) -> Self {
        let orders: Vec<BigInt> = orders.into_iter().map(|x| x.abs()).collect();
        let n = orders.len();
        let mut diag = IntMatrix::zeros(n, n);
        for (i, o) in orders.into_iter().enumerate() {
            diag[(i, i)] = o;
        }
        let mut g = cokernel(&diag);
        g.free_rank += free_rank;
        g
    }

    /// Accepts already-canonical data; returns `None` if the invariant
    /// factor conditions fail.
    pub fn from_invariants(free_rank: usize, torsion: Vec<BigInt>) -> Option<Self> {
        let two = BigInt::from(2);
        if torsion.iter().any(|t| t < &two) {
            return None;
        }
        if torsion.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
            return None;
        }
        Some(FgAbelianGroup { free_rank, torsion })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_subgroup(&self) -> FgAbelianGroup {
        FgAbelianGroup {
            free_rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    /// Minimal number of generators.
    pub fn generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        Self::from_cyclic_orders(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse abelian group from {0:?}")]
pub struct ParseGroupError(pub String);

impl FromStr for FgAbelianGroup {
    type Err = ParseGroupError;

    /// Parses sums such as `Z^6 + Z/2`, `Z`, `Z/2 + Z/3` or `0`.
    /// Summands may appear in any order and need not be canonical.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseGroupError(s.to_string());
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut free = 0usize;
        let mut orders = Vec::new();
        for term in s.split('+').map(str::trim) {
            if term == "Z" {
                free += 1;
            } else if let Some(r) = term.strip_prefix("Z^") {
                free += r.trim().parse::<usize>().map_err(|_| err())?;
            } else if let Some(o) = term.strip_prefix("Z/") {
                let o: BigInt = o.trim().parse().map_err(|_| err())?;
                if !o.is_positive() {
                    return Err(err());
                }
                orders.push(o);
            } else if term == "0" {
                continue;
            } else {
                return Err(err());
            }
        }
        Ok(Self::from_cyclic_orders(free, orders))
    }
}

impl Serialize for FgAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FgAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("d_out is {out_rows}x{out_cols} but d_in is {in_rows}x{in_cols}")]
    DimensionMismatch {
        out_rows: usize,
        out_cols: usize,
        in_rows: usize,
        in_cols: usize,
    },
    #[error("composition of differentials is nonzero; the pair is not a chain complex")]
    CompositionNonzero,
}

/// `Z^rows / im(M)`.
pub fn cokernel(m: &IntMatrix) -> FgAbelianGroup {
    let s = snf(m);
    let one = BigInt::one();
    FgAbelianGroup {
        free_rank: m.rows() - s.rank(),
        torsion: s.divisors().into_iter().filter(|d| d != &one).collect(),
    }
}

/// Kernel of `M` as a group; always free of rank `cols - rank`.
pub fn kernel(m: &IntMatrix) -> FgAbelianGroup {
    FgAbelianGroup::free(m.cols() - snf(m).rank())
}

/// `ker(d_out) / im(d_in)` for composable `d_out * d_in = 0`.
pub fn homology(d_out: &IntMatrix, d_in: &IntMatrix) -> Result<FgAbelianGroup, HomologyError> {
    if d_out.cols() != d_in.rows() {
        return Err(HomologyError::DimensionMismatch {
            out_rows: d_out.rows(),
            out_cols: d_out.cols(),
            in_rows: d_in.rows(),
            in_cols: d_in.cols(),
        });
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(HomologyError::CompositionNonzero);
    }
    let s = snf(d_out);
    let n = d_out.cols();
    // d_in = V * (V^-1 d_in); the first `rank` coordinates vanish because
    // D * V^-1 * d_in = U * d_out * d_in = 0.
    let coords = s.v_inverse().mul(d_in);
    debug_assert!((0..s.rank()).all(|i| coords.row(i).iter().all(Zero::is_zero)));
    let in_kernel = coords.submatrix(s.rank()..n, 0..d_in.cols());
    Ok(cokernel(&in_kernel))
}
