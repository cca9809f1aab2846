use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Element `a + b*z` of `Z[z]`, `z = exp(2*pi*i/3)`, with `z^2 = -1 - z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct CyclotomicInt {
    pub a: i64,
    pub b: i64,
}

impl CyclotomicInt {
    pub const ZERO: Self = CyclotomicInt { a: 0, b: 0 };
    pub const ONE: Self = CyclotomicInt { a: 1, b: 0 };
    /// `z`
    pub const ZETA: Self = CyclotomicInt { a: 0, b: 1 };
    /// `z^2 = -1 - z`
    pub const ZETA2: Self = CyclotomicInt { a: -1, b: -1 };

    pub const fn int(a: i64) -> Self {
        CyclotomicInt { a, b: 0 }
    }

    /// Complex conjugation, which swaps `z` and `z^2`.
    pub fn conj(self) -> Self {
        CyclotomicInt {
            a: self.a - self.b,
            b: -self.b,
        }
    }

    pub fn scale(self, k: i64) -> Self {
        CyclotomicInt {
            a: self.a * k,
            b: self.b * k,
        }
    }

    /// The value as a rational integer, if it is one.
    pub fn as_int(self) -> Option<i64> {
        (self.b == 0).then_some(self.a)
    }

    /// Exact division by a rational integer.
    pub fn div_exact(self, k: i64) -> Option<Self> {
        (k != 0 && self.a % k == 0 && self.b % k == 0).then(|| CyclotomicInt {
            a: self.a / k,
            b: self.b / k,
        })
    }
}

impl Add for CyclotomicInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        CyclotomicInt {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }
}

impl Sub for CyclotomicInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for CyclotomicInt {
    type Output = Self;
    fn neg(self) -> Self {
        CyclotomicInt {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Mul for CyclotomicInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        // (a + bz)(c + dz) = ac + (ad + bc)z + bd z^2
        let bd = self.b * o.b;
        CyclotomicInt {
            a: self.a * o.a - bd,
            b: self.a * o.b + self.b * o.a - bd,
        }
    }
}

impl std::iter::Sum for CyclotomicInt {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "w"),
            (-1, -1) => write!(f, "w^2"),
            (0, b) => write!(f, "{b}w"),
            (a, b) if b < 0 => write!(f, "{a}-{}w", -b),
            (a, b) => write!(f, "{a}+{b}w"),
        }
    }
}
