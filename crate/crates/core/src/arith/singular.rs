use std::fmt;
use std::str::FromStr;

use num_integer::{Integer, Roots};

use super::{ImagQuadField, QuadInt};
use crate::exact_linalg::{cokernel, IntMatrix};

/// Boundary point `D = num / den` of the field, `den != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadPoint {
    num: QuadInt,
    den: QuadInt,
}

impl QuadPoint {
    /// Normalizes the sign so the first nonzero coordinate of `den` is positive.
    pub fn new(num: QuadInt, den: QuadInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let flip = den.a < 0 || (den.a == 0 && den.b < 0);
        Some(if flip {
            QuadPoint {
                num: -num,
                den: -den,
            }
        } else {
            QuadPoint { num, den }
        })
    }

    pub fn integer(x: QuadInt) -> Self {
        QuadPoint {
            num: x,
            den: QuadInt::ONE,
        }
    }

    pub fn num(&self) -> QuadInt {
        self.num
    }

    pub fn den(&self) -> QuadInt {
        self.den
    }
}

impl fmt::Display for QuadPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |x: QuadInt| {
            if x.a != 0 && x.b != 0 {
                format!("({x})")
            } else {
                x.to_string()
            }
        };
        if self.den == QuadInt::ONE {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(self.num), wrap(self.den))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse boundary point {0:?}; expected forms like 0, 2w, (1+w)/2")]
pub struct ParseQuadPointError(pub String);

impl FromStr for QuadPoint {
    type Err = ParseQuadPointError;

    /// Accepts `x` or `x/y` where each side is an integer combination of
    /// `1` and `w`, optionally parenthesized: `0`, `-3`, `w`, `2-3w`, `(1+w)/2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseQuadPointError(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in compact.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => {
                    if split.is_some() {
                        return Err(err());
                    }
                    split = Some(i);
                }
                _ => {}
            }
        }
        let (n, d) = match split {
            Some(i) => (&compact[..i], Some(&compact[i + 1..])),
            None => (compact.as_str(), None),
        };
        let num = parse_quad_int(n).ok_or_else(err)?;
        let den = match d {
            Some(d) => parse_quad_int(d).ok_or_else(err)?,
            None => QuadInt::ONE,
        };
        QuadPoint::new(num, den).ok_or_else(err)
    }
}

fn parse_quad_int(s: &str) -> Option<QuadInt> {
    let s = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    let mut out = QuadInt::ZERO;
    let mut rest = s;
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        if let Some(coef) = term.strip_suffix('w') {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let k: i64 = if coef.is_empty() {
                1
            } else {
                coef.parse().ok()?
            };
            out.b += sign * k;
        } else {
            let k: i64 = term.parse().ok()?;
            out.a += sign * k;
        }
    }
    Some(out)
}

/// A pair `(c, d)` with `c != 0`, `Rc + Rd = R` and `|cD - d| < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub c: QuadInt,
    pub d: QuadInt,
    /// `|cD - d|^2` as a reduced fraction.
    pub distance_sq: (i128, i128),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Witness(Witness),
    /// No violating pair exists with `N(c) <= bound`. This is a bounded
    /// certificate only; it never proves the point singular.
    NoneUpToBound {
        bound: u64,
    },
}

/// Ordering key: norm first, then smaller `w`-coordinate, then smaller
/// rational coordinate, positive before negative.
fn key(k: &ImagQuadField, x: QuadInt) -> (i128, i64, i64, bool, bool) {
    (k.norm(x), x.b.abs(), x.a.abs(), x.a < 0, x.b < 0)
}

fn elements_up_to_norm(k: &ImagQuadField, bound: u64) -> Vec<QuadInt> {
    let r = bound.sqrt() as i64 + 2;
    let rb = if k.half_integral() {
        (4 * bound / k.m() as u64).sqrt() as i64 + 2
    } else {
        r
    };
    let bound = bound as i128;
    let ra = r + rb;
    let mut out: Vec<QuadInt> = (-rb..=rb)
        .flat_map(|b| (-ra..=ra).map(move |a| QuadInt::new(a, b)))
        .filter(|&x| !x.is_zero() && k.norm(x) <= bound)
        .collect();
    out.sort_by_key(|&x| key(k, x));
    out
}

/// Whether the ideal `(c, d)` is the whole ring: the lattice spanned by
/// `c, d, wc, wd` must have index one in `Z + Zw`.
pub(crate) fn coprime(k: &ImagQuadField, c: QuadInt, d: QuadInt) -> bool {
    let w = k.omega();
    let gens = [c, d, k.mul(w, c), k.mul(w, d)];
    let m = IntMatrix::from_rows(&[gens.map(|g| g.a), gens.map(|g| g.b)]);
    cokernel(&m).is_zero()
}

fn floor_div(a: i128, b: i128) -> i128 {
    Integer::div_floor(&a, &b)
}

/// Searches for `(c, d)` violating the singular-point inequality at `D`.
///
/// Every `c` with `0 < N(c) <= bound` is tried, and for each the finitely
/// many `d` with `|cD - d| < 1`. Any such `d` satisfies
/// `N(d) < bound * (1 + |D|)^2`, so this covers the full search box. The
/// returned witness is the least pair in the order (key of `c`, key of `d`),
/// where the key is `(norm, |b|, |a|, a < 0, b < 0)` for `a + bw`; hence a witness found
/// at one bound is returned unchanged at every larger bound.
pub fn singular_violation_search(
    k: &ImagQuadField,
    point: &QuadPoint,
    bound: u64,
) -> SearchOutcome {
    let bound = bound.max(1);
    let (lambda, mu) = (point.num(), point.den());
    let n = k.norm(mu);
    let mu_bar = k.conj(mu);
    let m = k.m() as i128;
    for c in elements_up_to_norm(k, bound) {
        let t = k.mul(k.mul(c, lambda), mu_bar);
        let (p, q) = k.half_coords(t);
        let (p, q) = (p as i128, q as i128);
        // cD = (p + q sqrt(-m)) / 2n, d = (x + y sqrt(-m)) / 2
        let mut found: Vec<(QuadInt, i128)> = Vec::new();
        for y in floor_div(q - 2 * n, n)..=floor_div(q + 2 * n, n) + 1 {
            let dy = q - n * y;
            if m * dy * dy >= 4 * n * n {
                continue;
            }
            for x in floor_div(p - 2 * n, n)..=floor_div(p + 2 * n, n) + 1 {
                let dx = p - n * x;
                let dist = dx * dx + m * dy * dy;
                if dist >= 4 * n * n {
                    continue;
                }
                if let Some(d) = k.from_half_coords(x as i64, y as i64) {
                    found.push((d, dist));
                }
            }
        }
        found.sort_by_key(|&(d, _)| key(k, d));
        if let Some(&(d, dist)) = found.iter().find(|&&(d, _)| coprime(k, c, d)) {
            let den = 4 * n * n;
            let g = dist.gcd(&den).max(1);
            return SearchOutcome::Witness(Witness {
                c,
                d,
                distance_sq: (dist / g, den / g),
            });
        }
    }
    SearchOutcome::NoneUpToBound { bound }
}
