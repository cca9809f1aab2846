//! Combinatorial model of the pruned Floege complex and assembly of its
//! modified Bredon chain complex.
//!
//! Only orbit representatives are stored. Each cell carries the isomorphism
//! type of its stabilizer; each incidence carries the orientation
//! coefficient and the stabilizer inclusion. Edges that run into a singular
//! point keep only their one remaining vertex incidence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;

use crate::arith;
use crate::exact_linalg::{FgAbelianGroup, IntMatrix};
use crate::rep_theory::{
    canonical_embedding, character_table, induction_matrix, GroupType, InductionMatrix, RepError,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellOrbit {
    pub id: String,
    pub name: String,
    pub dim: u8,
    pub stabilizer: GroupType,
    /// The cell runs into a singular point. Always false for vertices,
    /// since singular vertices are not part of the pruned complex.
    pub touches_singular: bool,
}

/// How the stabilizer of a cell sits inside the stabilizer of its face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbeddingRef {
    Canonical(String),
    /// Induction matrix given verbatim (rows: irreducibles of the face
    /// stabilizer, columns: irreducibles of the cell stabilizer).
    Matrix(IntMatrix),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceEntry {
    pub cell: String,
    pub face: String,
    pub coefficient: i64,
    pub map: EmbeddingRef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrunedComplex {
    /// The field parameter, when known; used to cross-check the class number.
    pub m: Option<u64>,
    pub class_number_k: u64,
    pub cells: Vec<CellOrbit>,
    pub incidences: Vec<IncidenceEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateId {
        id: String,
    },
    DimensionTooLarge {
        cell: String,
        dim: u8,
    },
    SingularVertex {
        cell: String,
    },
    UnknownCell {
        incidence: usize,
        id: String,
    },
    DimensionGap {
        cell: String,
        face: String,
    },
    UnknownEmbedding {
        cell: String,
        face: String,
        name: String,
    },
    EmbeddingMismatch {
        cell: String,
        face: String,
        expected: (GroupType, GroupType),
        found: (GroupType, GroupType),
    },
    InvalidInduction {
        cell: String,
        face: String,
        why: String,
    },
    EdgeVertexCount {
        edge: String,
        count: usize,
        touches_singular: bool,
    },
    ZeroClassNumber,
    ClassNumberMismatch {
        m: u64,
        declared: u64,
        computed: u64,
    },
    FieldNotSquarefree {
        m: u64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DuplicateId { id } => write!(f, "cell id {id:?} declared twice"),
            Self::DimensionTooLarge { cell, dim } => {
                write!(f, "cell {cell:?} has dimension {dim} > 2")
            }
            Self::SingularVertex { cell } => {
                write!(f, "vertex {cell:?} is marked as touching a singular point")
            }
            Self::UnknownCell { incidence, id } => {
                write!(f, "incidence #{incidence} refers to unknown cell {id:?}")
            }
            Self::DimensionGap { cell, face } => {
                write!(f, "{face:?} is not of dimension one less than {cell:?}")
            }
            Self::UnknownEmbedding { cell, face, name } => {
                write!(f, "incidence {cell:?} -> {face:?}: unknown embedding {name:?}")
            }
            Self::EmbeddingMismatch {
                cell,
                face,
                expected,
                found,
            } => write!(
                f,
                "incidence {cell:?} -> {face:?}: stabilizers are {} -> {} but the embedding is {} -> {}",
                expected.0, expected.1, found.0, found.1
            ),
            Self::InvalidInduction { cell, face, why } => {
                write!(f, "incidence {cell:?} -> {face:?}: {why}")
            }
            Self::EdgeVertexCount {
                edge,
                count,
                touches_singular,
            } => {
                if *touches_singular {
                    write!(
                        f,
                        "edge {edge:?} touches a singular point and must have exactly 1 vertex incidence, has {count}"
                    )
                } else {
                    write!(f, "edge {edge:?} must have 1 or 2 vertex incidences, has {count}")
                }
            }
            Self::ZeroClassNumber => write!(f, "class number must be at least 1"),
            Self::ClassNumberMismatch {
                m,
                declared,
                computed,
            } => write!(
                f,
                "class number {declared} declared but Q(sqrt(-{m})) has class number {computed}"
            ),
            Self::FieldNotSquarefree { m } => write!(f, "m = {m} is not squarefree"),
        }
    }
}

/// Every invariant violation found; empty means the complex is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "- {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CwError {
    #[error("complex is invalid:\n{0}")]
    Invalid(ValidationReport),
    #[error("incidence data inconsistent: d1 * d2 != 0 (check coefficients and embeddings)")]
    IncidenceDataInconsistent,
}

fn resolve(
    map: &EmbeddingRef,
    sub: GroupType,
    sup: GroupType,
) -> Result<InductionMatrix, ResolveError> {
    match map {
        EmbeddingRef::Canonical(name) => {
            let e = canonical_embedding(name).ok_or(ResolveError::Unknown)?;
            if (e.sub, e.sup) != (sub, sup) {
                return Err(ResolveError::Mismatch(e.sub, e.sup));
            }
            induction_matrix(&e).map_err(|e| ResolveError::Invalid(e.to_string()))
        }
        EmbeddingRef::Matrix(m) => {
            InductionMatrix::from_explicit(sub, sup, m.clone()).map_err(|e| match e {
                RepError::InvalidInductionMatrix { why, .. } => ResolveError::Invalid(why),
                other => ResolveError::Invalid(other.to_string()),
            })
        }
    }
}

enum ResolveError {
    Unknown,
    Mismatch(GroupType, GroupType),
    Invalid(String),
}

pub fn validate(c: &PrunedComplex) -> ValidationReport {
    let mut violations = Vec::new();
    let mut by_id: BTreeMap<&str, &CellOrbit> = BTreeMap::new();
    for cell in &c.cells {
        if by_id.insert(cell.id.as_str(), cell).is_some() {
            violations.push(Violation::DuplicateId {
                id: cell.id.clone(),
            });
        }
        if cell.dim > 2 {
            violations.push(Violation::DimensionTooLarge {
                cell: cell.id.clone(),
                dim: cell.dim,
            });
        }
        if cell.dim == 0 && cell.touches_singular {
            violations.push(Violation::SingularVertex {
                cell: cell.id.clone(),
            });
        }
    }

    let mut vertex_incidences: BTreeMap<&str, usize> = BTreeMap::new();
    for (idx, inc) in c.incidences.iter().enumerate() {
        let (Some(cell), Some(face)) = (by_id.get(inc.cell.as_str()), by_id.get(inc.face.as_str()))
        else {
            for id in [&inc.cell, &inc.face] {
                if !by_id.contains_key(id.as_str()) {
                    violations.push(Violation::UnknownCell {
                        incidence: idx,
                        id: id.clone(),
                    });
                }
            }
            continue;
        };
        if cell.dim != face.dim + 1 {
            violations.push(Violation::DimensionGap {
                cell: cell.id.clone(),
                face: face.id.clone(),
            });
            continue;
        }
        if cell.dim == 1 {
            *vertex_incidences.entry(cell.id.as_str()).or_default() += 1;
        }
        match resolve(&inc.map, cell.stabilizer, face.stabilizer) {
            Ok(_) => {}
            Err(ResolveError::Unknown) => violations.push(Violation::UnknownEmbedding {
                cell: cell.id.clone(),
                face: face.id.clone(),
                name: match &inc.map {
                    EmbeddingRef::Canonical(n) => n.clone(),
                    EmbeddingRef::Matrix(_) => String::new(),
                },
            }),
            Err(ResolveError::Mismatch(sub, sup)) => {
                violations.push(Violation::EmbeddingMismatch {
                    cell: cell.id.clone(),
                    face: face.id.clone(),
                    expected: (cell.stabilizer, face.stabilizer),
                    found: (sub, sup),
                })
            }
            Err(ResolveError::Invalid(why)) => violations.push(Violation::InvalidInduction {
                cell: cell.id.clone(),
                face: face.id.clone(),
                why,
            }),
        }
    }

    for cell in c.cells.iter().filter(|c| c.dim == 1) {
        let count = vertex_incidences
            .get(cell.id.as_str())
            .copied()
            .unwrap_or(0);
        let ok = if cell.touches_singular {
            count == 1
        } else {
            (1..=2).contains(&count)
        };
        if !ok {
            violations.push(Violation::EdgeVertexCount {
                edge: cell.id.clone(),
                count,
                touches_singular: cell.touches_singular,
            });
        }
    }

    if c.class_number_k == 0 {
        violations.push(Violation::ZeroClassNumber);
    }
    if let Some(m) = c.m {
        match arith::class_number(m) {
            Ok(h) if h != c.class_number_k => violations.push(Violation::ClassNumberMismatch {
                m,
                declared: c.class_number_k,
                computed: h,
            }),
            Ok(_) => {}
            Err(_) => violations.push(Violation::FieldNotSquarefree { m }),
        }
    }
    ViolationsDedup::apply(&mut violations);
    ValidationReport { violations }
}

struct ViolationsDedup;

impl ViolationsDedup {
    fn apply(v: &mut Vec<Violation>) {
        let mut seen = BTreeSet::new();
        v.retain(|x| seen.insert(x.to_string()));
    }
}

/// The modified Bredon complex `C2 -> C1 -> C0` in the irreducible bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BredonComplex {
    /// `C1 -> C0`: rows are vertex summands, columns edge summands.
    pub d1: IntMatrix,
    /// `C2 -> C1`.
    pub d2: IntMatrix,
    /// One label per basis element of `C0`, `C1`, `C2`, as `cell:irrep`.
    pub labels: [Vec<String>; 3],
}

impl BredonComplex {
    /// Ranks of `C0`, `C1`, `C2`.
    pub fn chain_ranks(&self) -> [usize; 3] {
        [self.d1.rows(), self.d1.cols(), self.d2.cols()]
    }
}

/// Assembles `d1` and `d2`. The block for an incidence `(cell, face)` is
/// `coefficient * induction matrix`; repeated pairs add up. Cells are
/// ordered as declared.
pub fn assemble_bredon(c: &PrunedComplex) -> Result<BredonComplex, CwError> {
    let report = validate(c);
    if !report.is_valid() {
        return Err(CwError::Invalid(report));
    }
    let mut offsets: BTreeMap<&str, usize> = BTreeMap::new();
    let mut labels: [Vec<String>; 3] = Default::default();
    for cell in &c.cells {
        let dim = cell.dim as usize;
        offsets.insert(cell.id.as_str(), labels[dim].len());
        let table = character_table(cell.stabilizer);
        labels[dim].extend(
            table
                .irrep_names
                .iter()
                .map(|r| format!("{}:{}", cell.name, r)),
        );
    }
    let by_id: BTreeMap<&str, &CellOrbit> = c.cells.iter().map(|x| (x.id.as_str(), x)).collect();
    let mut d1 = IntMatrix::zeros(labels[0].len(), labels[1].len());
    let mut d2 = IntMatrix::zeros(labels[1].len(), labels[2].len());
    for inc in &c.incidences {
        let cell = by_id[inc.cell.as_str()];
        let face = by_id[inc.face.as_str()];
        let Ok(ind) = resolve(&inc.map, cell.stabilizer, face.stabilizer) else {
            unreachable!("validated incidence");
        };
        let target = if cell.dim == 1 { &mut d1 } else { &mut d2 };
        target.add_block(
            offsets[inc.face.as_str()],
            offsets[inc.cell.as_str()],
            ind.matrix(),
            &BigInt::from(inc.coefficient),
        );
    }
    if !d1.mul(&d2).is_zero() {
        return Err(CwError::IncidenceDataInconsistent);
    }
    Ok(BredonComplex { d1, d2, labels })
}

/// Total representation-ring rank of the cells of each dimension.
pub fn chain_ranks(c: &PrunedComplex) -> [usize; 3] {
    let mut ranks = [0; 3];
    for cell in c.cells.iter().filter(|x| x.dim <= 2) {
        ranks[cell.dim as usize] += cell.stabilizer.irreducible_count();
    }
    ranks
}

/// Rational Euler characteristic check: the alternating sum of chain ranks
/// equals the alternating sum of homology free ranks.
pub fn euler_check_ranks(chain: [usize; 3], homology: [&FgAbelianGroup; 3]) -> bool {
    let lhs = chain[0] as i64 - chain[1] as i64 + chain[2] as i64;
    let rhs = homology[0].free_rank() as i64 - homology[1].free_rank() as i64
        + homology[2].free_rank() as i64;
    lhs == rhs
}

pub fn euler_check(
    c: &PrunedComplex,
    h0: &FgAbelianGroup,
    h1: &FgAbelianGroup,
    h2: &FgAbelianGroup,
) -> bool {
    euler_check_ranks(chain_ranks(c), [h0, h1, h2])
}
