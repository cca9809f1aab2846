use std::fmt;

use super::{discriminant, ArithError};

/// `Q(sqrt(-m))` for squarefree `m`, with ring of integers `Z[w]` where
/// `w = sqrt(-m)`, or `w = (1 + sqrt(-m)) / 2` when `m = 3 mod 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ImagQuadField {
    m: i64,
    disc: i64,
}

/// Algebraic integer `a + b*w`; its meaning depends on the field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct QuadInt {
    pub a: i64,
    pub b: i64,
}

impl QuadInt {
    pub const ZERO: QuadInt = QuadInt { a: 0, b: 0 };
    pub const ONE: QuadInt = QuadInt { a: 1, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        QuadInt { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl std::ops::Neg for QuadInt {
    type Output = Self;
    fn neg(self) -> Self {
        QuadInt {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl std::ops::Sub for QuadInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        QuadInt {
            a: self.a - o.a,
            b: self.b - o.b,
        }
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "w"),
            (0, -1) => write!(f, "-w"),
            (0, b) => write!(f, "{b}w"),
            (a, 1) => write!(f, "{a}+w"),
            (a, -1) => write!(f, "{a}-w"),
            (a, b) if b < 0 => write!(f, "{a}-{}w", -b),
            (a, b) => write!(f, "{a}+{b}w"),
        }
    }
}

impl ImagQuadField {
    pub fn new(m: u64) -> Result<Self, ArithError> {
        let disc = discriminant(m)?;
        Ok(ImagQuadField { m: m as i64, disc })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    /// Whether `w = (1 + sqrt(-m)) / 2`.
    pub fn half_integral(&self) -> bool {
        self.m % 4 == 3
    }

    fn q(&self) -> i64 {
        (1 + self.m) / 4
    }

    pub fn mul(&self, x: QuadInt, y: QuadInt) -> QuadInt {
        let bd = x.b * y.b;
        if self.half_integral() {
            // w^2 = w - q
            QuadInt {
                a: x.a * y.a - self.q() * bd,
                b: x.a * y.b + x.b * y.a + bd,
            }
        } else {
            // w^2 = -m
            QuadInt {
                a: x.a * y.a - self.m * bd,
                b: x.a * y.b + x.b * y.a,
            }
        }
    }

    pub fn omega(&self) -> QuadInt {
        QuadInt { a: 0, b: 1 }
    }

    pub fn conj(&self, x: QuadInt) -> QuadInt {
        if self.half_integral() {
            QuadInt {
                a: x.a + x.b,
                b: -x.b,
            }
        } else {
            QuadInt { a: x.a, b: -x.b }
        }
    }

    pub fn norm(&self, x: QuadInt) -> i128 {
        let (a, b) = (x.a as i128, x.b as i128);
        if self.half_integral() {
            a * a + a * b + self.q() as i128 * b * b
        } else {
            a * a + self.m as i128 * b * b
        }
    }

    /// `(X, Y)` with `x = (X + Y sqrt(-m)) / 2`.
    pub fn half_coords(&self, x: QuadInt) -> (i64, i64) {
        if self.half_integral() {
            (2 * x.a + x.b, x.b)
        } else {
            (2 * x.a, 2 * x.b)
        }
    }

    /// Inverse of [`half_coords`](Self::half_coords); `None` if `(X + Y sqrt(-m)) / 2`
    /// is not an algebraic integer.
    pub fn from_half_coords(&self, x: i64, y: i64) -> Option<QuadInt> {
        if self.half_integral() {
            ((x - y) % 2 == 0).then_some(QuadInt {
                a: (x - y) / 2,
                b: y,
            })
        } else {
            (x % 2 == 0 && y % 2 == 0).then_some(QuadInt { a: x / 2, b: y / 2 })
        }
    }
}
