use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{character_table, CyclotomicInt, GroupType, RepError};
use crate::exact_linalg::IntMatrix;

/// Injective homomorphism `sub -> sup`, recorded by where it sends each
/// conjugacy class of `sub` (indexed as in [`character_table`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EmbeddingSpec {
    pub sub: GroupType,
    pub sup: GroupType,
    pub class_map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbeddingProblem {
    OrderDoesNotDivide {
        sub: usize,
        sup: usize,
    },
    WrongClassCount {
        expected: usize,
        got: usize,
    },
    ClassOutOfRange {
        class: usize,
        target: usize,
    },
    IdentityNotPreserved,
    OrderNotPreserved {
        class: usize,
        sub_order: usize,
        sup_order: usize,
    },
    /// More elements of `sub` land in a class of `sup` than it contains.
    ClassOverfilled {
        sup_class: usize,
    },
    /// Some irreducible of `sup` does not restrict to a genuine character.
    NotACharacterRestriction {
        sup_irrep: usize,
    },
}

impl fmt::Display for EmbeddingProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OrderDoesNotDivide { sub, sup } => {
                write!(f, "subgroup order {sub} does not divide {sup}")
            }
            Self::WrongClassCount { expected, got } => {
                write!(f, "class map has {got} entries, expected {expected}")
            }
            Self::ClassOutOfRange { class, target } => {
                write!(f, "class {class} is sent to nonexistent class {target}")
            }
            Self::IdentityNotPreserved => write!(f, "identity class is not sent to the identity"),
            Self::OrderNotPreserved {
                class,
                sub_order,
                sup_order,
            } => write!(
                f,
                "class {class} of element order {sub_order} is sent to a class of order {sup_order}"
            ),
            Self::ClassOverfilled { sup_class } => {
                write!(f, "too many elements sent into class {sup_class}")
            }
            Self::NotACharacterRestriction { sup_irrep } => write!(
                f,
                "irreducible {sup_irrep} of the overgroup does not restrict to a character"
            ),
        }
    }
}

/// Outcome of [`validate_embedding`]; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub problems: Vec<EmbeddingProblem>,
}

impl EmbeddingReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

pub fn validate_embedding(e: &EmbeddingSpec) -> EmbeddingReport {
    let sub = character_table(e.sub);
    let sup = character_table(e.sup);
    let mut problems = Vec::new();
    if !e.sup.order().is_multiple_of(e.sub.order()) {
        problems.push(EmbeddingProblem::OrderDoesNotDivide {
            sub: e.sub.order(),
            sup: e.sup.order(),
        });
    }
    if e.class_map.len() != sub.class_count() {
        problems.push(EmbeddingProblem::WrongClassCount {
            expected: sub.class_count(),
            got: e.class_map.len(),
        });
        return EmbeddingReport { problems };
    }
    let mut shape_ok = true;
    for (c, &t) in e.class_map.iter().enumerate() {
        if t >= sup.class_count() {
            problems.push(EmbeddingProblem::ClassOutOfRange {
                class: c,
                target: t,
            });
            shape_ok = false;
        } else if sub.class_orders[c] != sup.class_orders[t] {
            problems.push(EmbeddingProblem::OrderNotPreserved {
                class: c,
                sub_order: sub.class_orders[c],
                sup_order: sup.class_orders[t],
            });
        }
    }
    if !shape_ok {
        return EmbeddingReport { problems };
    }
    if e.class_map[0] != 0 {
        problems.push(EmbeddingProblem::IdentityNotPreserved);
    }
    let mut filled = vec![0usize; sup.class_count()];
    for (c, &t) in e.class_map.iter().enumerate() {
        filled[t] += sub.class_sizes[c];
    }
    for (t, &n) in filled.iter().enumerate() {
        if n > sup.class_sizes[t] {
            problems.push(EmbeddingProblem::ClassOverfilled { sup_class: t });
        }
    }
    for (j, chi) in sup.chars.iter().enumerate() {
        let pulled: Vec<CyclotomicInt> = e.class_map.iter().map(|&t| chi[t]).collect();
        match sub.decompose(&pulled) {
            Some(m) if m.iter().all(|&x| x >= 0) => {}
            _ => problems.push(EmbeddingProblem::NotACharacterRestriction { sup_irrep: j }),
        }
    }
    EmbeddingReport { problems }
}

fn ensure_valid(e: &EmbeddingSpec) -> Result<(), RepError> {
    let report = validate_embedding(e);
    if report.is_valid() {
        Ok(())
    } else {
        Err(RepError::InvalidEmbedding(report.problems))
    }
}

/// `R(sup) -> R(sub)`: entry `(i, j)` is the multiplicity of the `i`-th
/// irreducible of `sub` in the restriction of the `j`-th irreducible of `sup`.
pub fn restriction_matrix(e: &EmbeddingSpec) -> Result<IntMatrix, RepError> {
    ensure_valid(e)?;
    let sub = character_table(e.sub);
    let sup = character_table(e.sup);
    let mut m = IntMatrix::zeros(sub.chars.len(), sup.chars.len());
    for (j, chi) in sup.chars.iter().enumerate() {
        let pulled: Vec<CyclotomicInt> = e.class_map.iter().map(|&t| chi[t]).collect();
        let mult = sub.decompose(&pulled).expect("validated");
        for (i, k) in mult.into_iter().enumerate() {
            m[(i, j)] = BigInt::from(k);
        }
    }
    Ok(m)
}

/// Matrix of induction `R(sub) -> R(sup)` in the irreducible bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionMatrix {
    sub: GroupType,
    sup: GroupType,
    matrix: IntMatrix,
}

impl InductionMatrix {
    /// Accepts a user-supplied matrix after checking its shape, sign and
    /// the induced-dimension identity.
    pub fn from_explicit(
        sub: GroupType,
        sup: GroupType,
        matrix: IntMatrix,
    ) -> Result<Self, RepError> {
        let bad = |why: String| Err(RepError::InvalidInductionMatrix { sub, sup, why });
        if !sup.order().is_multiple_of(sub.order()) {
            return bad(format!("{} does not divide {}", sub.order(), sup.order()));
        }
        let expected = (sup.irreducible_count(), sub.irreducible_count());
        if matrix.shape() != expected {
            return bad(format!(
                "shape {}x{} but expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                expected.0,
                expected.1
            ));
        }
        if matrix.entries().iter().any(Signed::is_negative) {
            return bad("negative entry".to_string());
        }
        let sub_dims = character_table(sub).dimensions();
        let sup_dims = character_table(sup).dimensions();
        let index = BigInt::from(sup.order() / sub.order());
        for (i, &d) in sub_dims.iter().enumerate() {
            let total: BigInt = (0..matrix.rows())
                .map(|j| BigInt::from(sup_dims[j]) * &matrix[(j, i)])
                .sum();
            if total != &index * d {
                return bad(format!(
                    "column {i} induces dimension {total}, expected {}",
                    &index * d
                ));
            }
        }
        Ok(InductionMatrix { sub, sup, matrix })
    }

    pub fn sub(&self) -> GroupType {
        self.sub
    }

    pub fn sup(&self) -> GroupType {
        self.sup
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }
}

/// Induction computed from the induced-character formula
/// `Ind f(C) = |G| / (|H| |C|) * sum over H-classes c inside C of |c| f(c)`,
/// then decomposed into irreducibles of `sup`.
pub fn induction_matrix(e: &EmbeddingSpec) -> Result<InductionMatrix, RepError> {
    ensure_valid(e)?;
    let sub = character_table(e.sub);
    let sup = character_table(e.sup);
    let (h, g) = (sub.order() as i64, sup.order() as i64);
    let mut m = IntMatrix::zeros(sup.chars.len(), sub.chars.len());
    for (i, phi) in sub.chars.iter().enumerate() {
        let induced: Vec<CyclotomicInt> = (0..sup.class_count())
            .map(|t| {
                let inside: CyclotomicInt = e
                    .class_map
                    .iter()
                    .enumerate()
                    .filter(|&(_, &target)| target == t)
                    .map(|(c, _)| phi[c].scale(sub.class_sizes[c] as i64))
                    .sum();
                inside
                    .scale(g)
                    .div_exact(h * sup.class_sizes[t] as i64)
                    .expect("induced character values are algebraic integers")
            })
            .collect();
        let mult = sup.decompose(&induced).ok_or_else(|| {
            RepError::InvalidEmbedding(vec![EmbeddingProblem::NotACharacterRestriction {
                sup_irrep: i,
            }])
        })?;
        for (j, k) in mult.into_iter().enumerate() {
            m[(j, i)] = BigInt::from(k);
        }
    }
    InductionMatrix::from_explicit(e.sub, e.sup, m)
}

/// Names of the shipped canonical embeddings.
///
/// * `G-in-G` for every group type: the identity.
/// * `Trivial-in-G` for every nontrivial group type.
/// * `C2-in-S3`, `C2-in-A4`: onto the transpositions, resp. the double
///   transpositions.
/// * `C3-in-S3`, `C3-in-A4`: generator to the 3-cycle class listed first.
/// * `V4-in-A4`: the normal Klein subgroup.
/// * `C2-in-V4-x`, `C2-in-V4-y`, `C2-in-V4-z`: onto the named involution.
pub fn canonical_embedding_names() -> Vec<String> {
    let mut names: Vec<String> = GroupType::ALL
        .iter()
        .map(|g| format!("{g}-in-{g}"))
        .collect();
    names.extend(
        GroupType::ALL[1..]
            .iter()
            .map(|g| format!("Trivial-in-{g}")),
    );
    names.extend(
        [
            "C2-in-S3",
            "C2-in-A4",
            "C3-in-S3",
            "C3-in-A4",
            "V4-in-A4",
            "C2-in-V4-x",
            "C2-in-V4-y",
            "C2-in-V4-z",
        ]
        .map(String::from),
    );
    names
}

pub fn canonical_embedding(name: &str) -> Option<EmbeddingSpec> {
    use GroupType::*;
    let spec = |sub, sup, class_map: &[usize]| EmbeddingSpec {
        sub,
        sup,
        class_map: class_map.to_vec(),
    };
    let fixed = match name {
        "C2-in-S3" => Some(spec(C2, S3, &[0, 1])),
        "C2-in-A4" => Some(spec(C2, A4, &[0, 1])),
        "C3-in-S3" => Some(spec(C3, S3, &[0, 2, 2])),
        "C3-in-A4" => Some(spec(C3, A4, &[0, 2, 3])),
        "V4-in-A4" => Some(spec(V4, A4, &[0, 1, 1, 1])),
        "C2-in-V4-x" => Some(spec(C2, V4, &[0, 1])),
        "C2-in-V4-y" => Some(spec(C2, V4, &[0, 2])),
        "C2-in-V4-z" => Some(spec(C2, V4, &[0, 3])),
        _ => None,
    };
    if fixed.is_some() {
        return fixed;
    }
    let (a, b) = name.split_once("-in-")?;
    let (sub, sup): (GroupType, GroupType) = (a.parse().ok()?, b.parse().ok()?);
    if sub == sup {
        let n = character_table(sub).class_count();
        Some(spec(sub, sup, &(0..n).collect::<Vec<_>>()))
    } else if sub == Trivial {
        Some(spec(Trivial, sup, &[0]))
    } else {
        None
    }
}
