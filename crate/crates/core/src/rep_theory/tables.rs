use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CyclotomicInt;

/// Isomorphism types of finite subgroups that occur as cell stabilizers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GroupType {
    Trivial,
    C2,
    C3,
    /// Klein four group.
    V4,
    S3,
    A4,
}

impl GroupType {
    pub const ALL: [GroupType; 6] = [
        GroupType::Trivial,
        GroupType::C2,
        GroupType::C3,
        GroupType::V4,
        GroupType::S3,
        GroupType::A4,
    ];

    pub fn order(self) -> usize {
        match self {
            GroupType::Trivial => 1,
            GroupType::C2 => 2,
            GroupType::C3 => 3,
            GroupType::V4 => 4,
            GroupType::S3 => 6,
            GroupType::A4 => 12,
        }
    }

    /// Number of irreducible complex characters, the rank of `R(G)`.
    pub fn irreducible_count(self) -> usize {
        match self {
            GroupType::Trivial => 1,
            GroupType::C2 => 2,
            GroupType::C3 | GroupType::S3 => 3,
            GroupType::V4 | GroupType::A4 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupType::Trivial => "Trivial",
            GroupType::C2 => "C2",
            GroupType::C3 => "C3",
            GroupType::V4 => "V4",
            GroupType::S3 => "S3",
            GroupType::A4 => "A4",
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown group type {0:?} (expected one of Trivial, C2, C3, V4, S3, A4)")]
pub struct UnknownGroupType(pub String);

impl FromStr for GroupType {
    type Err = UnknownGroupType;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GroupType::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| UnknownGroupType(s.to_string()))
    }
}

/// Character table with values in `Z[w]`, `w` a primitive cube root of unity.
///
/// Rows are irreducibles, columns conjugacy classes. Class 0 is always the
/// identity and row 0 is always the trivial character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub group: GroupType,
    pub class_names: Vec<&'static str>,
    pub class_sizes: Vec<usize>,
    pub class_orders: Vec<usize>,
    pub irrep_names: Vec<&'static str>,
    pub chars: Vec<Vec<CyclotomicInt>>,
}

impl CharacterTable {
    pub fn order(&self) -> usize {
        self.class_sizes.iter().sum()
    }

    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn dimension(&self, irrep: usize) -> i64 {
        self.chars[irrep][0]
            .as_int()
            .expect("character degree is an integer")
    }

    pub fn dimensions(&self) -> Vec<i64> {
        (0..self.chars.len()).map(|i| self.dimension(i)).collect()
    }

    /// `|G| * <f, g>` for class functions given by their values on classes.
    /// Dividing by `|G|` is left to the caller so it can check exactness.
    pub fn scaled_inner_product(&self, f: &[CyclotomicInt], g: &[CyclotomicInt]) -> CyclotomicInt {
        self.class_sizes
            .iter()
            .zip(f.iter().zip(g))
            .map(|(&size, (&x, &y))| (x * y.conj()).scale(size as i64))
            .sum()
    }

    /// Multiplicities of each irreducible in a class function, or `None` if
    /// the class function is not a virtual character.
    pub fn decompose(&self, f: &[CyclotomicInt]) -> Option<Vec<i64>> {
        let order = self.order() as i64;
        self.chars
            .iter()
            .map(|chi| {
                self.scaled_inner_product(f, chi)
                    .div_exact(order)
                    .and_then(CyclotomicInt::as_int)
            })
            .collect()
    }
}

/// Built-in character table.
///
/// Irreducibles are ordered trivial first, then by dimension, ties broken
/// by the value on the first non-identity class of the listed order (`w`
/// before `w^2`, kernels `x, y, z` for the Klein group).
pub fn character_table(g: GroupType) -> CharacterTable {
    use CyclotomicInt as C;
    let i = C::int;
    let (w, w2) = (C::ZETA, C::ZETA2);
    match g {
        GroupType::Trivial => CharacterTable {
            group: g,
            class_names: vec!["e"],
            class_sizes: vec![1],
            class_orders: vec![1],
            irrep_names: vec!["1"],
            chars: vec![vec![i(1)]],
        },
        GroupType::C2 => CharacterTable {
            group: g,
            class_names: vec!["e", "g"],
            class_sizes: vec![1, 1],
            class_orders: vec![1, 2],
            irrep_names: vec!["1", "sgn"],
            chars: vec![vec![i(1), i(1)], vec![i(1), i(-1)]],
        },
        GroupType::C3 => CharacterTable {
            group: g,
            class_names: vec!["e", "g", "g^2"],
            class_sizes: vec![1, 1, 1],
            class_orders: vec![1, 3, 3],
            irrep_names: vec!["1", "w", "w^2"],
            chars: vec![vec![i(1), i(1), i(1)], vec![i(1), w, w2], vec![i(1), w2, w]],
        },
        GroupType::V4 => CharacterTable {
            group: g,
            class_names: vec!["e", "x", "y", "z"],
            class_sizes: vec![1, 1, 1, 1],
            class_orders: vec![1, 2, 2, 2],
            // named by kernel
            irrep_names: vec!["1", "ker x", "ker y", "ker z"],
            chars: vec![
                vec![i(1), i(1), i(1), i(1)],
                vec![i(1), i(1), i(-1), i(-1)],
                vec![i(1), i(-1), i(1), i(-1)],
                vec![i(1), i(-1), i(-1), i(1)],
            ],
        },
        GroupType::S3 => CharacterTable {
            group: g,
            class_names: vec!["e", "(12)", "(123)"],
            class_sizes: vec![1, 3, 2],
            class_orders: vec![1, 2, 3],
            irrep_names: vec!["1", "sgn", "std"],
            chars: vec![
                vec![i(1), i(1), i(1)],
                vec![i(1), i(-1), i(1)],
                vec![i(2), i(0), i(-1)],
            ],
        },
        GroupType::A4 => CharacterTable {
            group: g,
            class_names: vec!["e", "(12)(34)", "(123)", "(132)"],
            class_sizes: vec![1, 3, 4, 4],
            class_orders: vec![1, 2, 3, 3],
            irrep_names: vec!["1", "w", "w^2", "3"],
            chars: vec![
                vec![i(1), i(1), i(1), i(1)],
                vec![i(1), i(1), w, w2],
                vec![i(1), i(1), w2, w],
                vec![i(3), i(-1), i(0), i(0)],
            ],
        },
    }
}
