//! Imaginary quadratic bookkeeping: class numbers, cusp and singular orbit
//! counts, and a bounded search against the singular-point condition.
//!
//! Everything is exact. Distances `|cD - d|` are compared through integer
//! norms, never through floating point.

mod field;
mod singular;

pub use field::{ImagQuadField, QuadInt};
pub use singular::{
    singular_violation_search, ParseQuadPointError, QuadPoint, SearchOutcome, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("{0} is not a squarefree positive integer")]
    NotSquarefree(u64),
}

pub fn is_squarefree(m: u64) -> bool {
    if m == 0 {
        return false;
    }
    let mut n = m;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Discriminant of `Q(sqrt(-m))`: `-m` if `m = 3 mod 4`, else `-4m`.
pub fn discriminant(m: u64) -> Result<i64, ArithError> {
    if !is_squarefree(m) {
        return Err(ArithError::NotSquarefree(m));
    }
    let m = m as i64;
    Ok(if m % 4 == 3 { -m } else { -4 * m })
}

/// Class number of `Q(sqrt(-m))`, counted as the number of reduced
/// primitive forms `(a, b, c)` with `b^2 - 4ac = disc`, `|b| <= a <= c`,
/// and `b >= 0` whenever `a = c` or `|b| = a`.
pub fn class_number(m: u64) -> Result<u64, ArithError> {
    let disc = discriminant(m)?;
    Ok(count_reduced_forms(disc))
}

fn count_reduced_forms(disc: i64) -> u64 {
    use num_integer::Integer;
    let abs = -disc;
    let mut count = 0;
    // a <= sqrt(|disc| / 3) for reduced forms
    let mut a = 1i64;
    while 3 * a * a <= abs {
        for b in -a..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if b < 0 && (a == c || -b == a) {
                continue;
            }
            if a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            count += 1;
        }
        a += 1;
    }
    count
}

/// `(cusp orbits, singular-point orbits)`. Cusps correspond to ideal
/// classes; singular points to the nontrivial ones, so there is one fewer.
pub fn orbit_counts(m: u64) -> Result<(u64, u64), ArithError> {
    let h = class_number(m)?;
    Ok((h, h - 1))
}
