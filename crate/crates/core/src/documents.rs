//! JSON documents: complexes, differential matrices and six-term hints,
//! plus the bundled fixtures.

use serde::{Deserialize, Serialize};

use crate::exact_linalg::IntMatrix;
use crate::gamma_cw::{CellOrbit, EmbeddingRef, IncidenceEntry, PrunedComplex};
use crate::kk_pipeline::SixTermHints;
use crate::rep_theory::GroupType;

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Shape(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellDoc {
    pub id: String,
    pub name: String,
    pub dim: u8,
    pub stabilizer: GroupType,
    #[serde(default)]
    pub touches_singular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
pub enum EmbeddingDoc {
    Canonical(String),
    Matrix(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IncidenceDoc {
    pub cell: String,
    pub face: String,
    pub coefficient: i64,
    pub embedding: EmbeddingDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    pub class_number: u64,
    pub cells: Vec<CellDoc>,
    pub incidences: Vec<IncidenceDoc>,
}

fn matrix_from_rows(rows: &[Vec<i64>], what: &str) -> Result<IntMatrix, DocumentError> {
    if let Some(r) = rows.iter().find(|r| r.len() != rows[0].len()) {
        return Err(DocumentError::Shape(format!(
            "{what}: ragged rows (lengths {} and {})",
            rows[0].len(),
            r.len()
        )));
    }
    Ok(IntMatrix::from_rows(rows))
}

fn matrix_to_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_i64_rows()
        .expect("document matrices have machine-sized entries")
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_complex(&self) -> Result<PrunedComplex, DocumentError> {
        let cells = self
            .cells
            .iter()
            .map(|c| CellOrbit {
                id: c.id.clone(),
                name: c.name.clone(),
                dim: c.dim,
                stabilizer: c.stabilizer,
                touches_singular: c.touches_singular,
            })
            .collect();
        let incidences = self
            .incidences
            .iter()
            .map(|i| {
                let map = match &i.embedding {
                    EmbeddingDoc::Canonical(n) => EmbeddingRef::Canonical(n.clone()),
                    EmbeddingDoc::Matrix(rows) => {
                        EmbeddingRef::Matrix(matrix_from_rows(rows, "embedding matrix")?)
                    }
                };
                Ok(IncidenceEntry {
                    cell: i.cell.clone(),
                    face: i.face.clone(),
                    coefficient: i.coefficient,
                    map,
                })
            })
            .collect::<Result<_, DocumentError>>()?;
        Ok(PrunedComplex {
            m: self.m,
            class_number_k: self.class_number,
            cells,
            incidences,
        })
    }

    pub fn from_complex(c: &PrunedComplex) -> Self {
        ComplexDocument {
            m: c.m,
            class_number: c.class_number_k,
            cells: c
                .cells
                .iter()
                .map(|c| CellDoc {
                    id: c.id.clone(),
                    name: c.name.clone(),
                    dim: c.dim,
                    stabilizer: c.stabilizer,
                    touches_singular: c.touches_singular,
                })
                .collect(),
            incidences: c
                .incidences
                .iter()
                .map(|i| IncidenceDoc {
                    cell: i.cell.clone(),
                    face: i.face.clone(),
                    coefficient: i.coefficient,
                    embedding: match &i.map {
                        EmbeddingRef::Canonical(n) => EmbeddingDoc::Canonical(n.clone()),
                        EmbeddingRef::Matrix(m) => EmbeddingDoc::Matrix(matrix_to_rows(m)),
                    },
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixLabels {
    #[serde(default)]
    pub d1_rows: Vec<String>,
    #[serde(default)]
    pub d1_cols: Vec<String>,
    #[serde(default)]
    pub d2_cols: Vec<String>,
}

/// `d1: C1 -> C0` and `d2: C2 -> C1` as row arrays. `d2` may instead be
/// given transposed, one row per 2-cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_number: Option<u64>,
    pub d1: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2_transpose: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<MatrixLabels>,
}

impl MatrixDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// `(d1, d2)` with shapes checked. An empty row list stands for a map
    /// with no rows; its column count is taken from the other matrix.
    pub fn matrices(&self) -> Result<(IntMatrix, IntMatrix), DocumentError> {
        let d2 = match (&self.d2, &self.d2_transpose) {
            (Some(d2), None) => matrix_from_rows(d2, "d2")?,
            (None, Some(t)) => matrix_from_rows(t, "d2_transpose")?.transpose(),
            (None, None) => IntMatrix::zeros(0, 0),
            (Some(_), Some(_)) => {
                return Err(DocumentError::Shape(
                    "give either d2 or d2_transpose, not both".into(),
                ))
            }
        };
        let mut d1 = matrix_from_rows(&self.d1, "d1")?;
        let mut d2 = d2;
        if d1.rows() == 0 && d2.rows() > 0 {
            d1 = IntMatrix::zeros(0, d2.rows());
        }
        if d2.rows() == 0 && d1.cols() > 0 {
            d2 = IntMatrix::zeros(d1.cols(), 0);
        }
        if d1.cols() != d2.rows() {
            return Err(DocumentError::Shape(format!(
                "d1 is {}x{} but d2 is {}x{}",
                d1.rows(),
                d1.cols(),
                d2.rows(),
                d2.cols()
            )));
        }
        Ok((d1, d2))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HintDocument {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub description: Vec<String>,
    pub hints: SixTermHints,
}

impl HintDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

/// Bundled documents, as `(file name, contents)`.
pub mod fixtures {
    use super::*;

    pub const M5_MATRICES: &str = "m5_matrices.json";
    pub const M5_HINTS: &str = "m5_hints.json";
    pub const TOY_EDGE: &str = "toy_edge.json";

    const EDGE_LABELS: [&str; 13] = [
        "(b, a)", "(b, a)", "(v, v_1)", "(v, v_1)", "(v, v_1)", "(a_3, u)", "(a_3, u)", "(u, b)",
        "(u, b)", "(u_1, b)", "(u_1, b)", "(a, v)", "(a, s)",
    ];
    const VERTEX_LABELS: [&str; 13] = [
        "b", "b", "b", "b", "u", "u", "u", "u", "a", "a", "v", "v", "v",
    ];
    const FACE_LABELS: [&str; 3] = ["large cell", "mid-size cell", "small cell"];

    /// `d1` for `Q(sqrt(-5))`, blanks read as zeros.
    pub fn m5_d1() -> Vec<Vec<i64>> {
        vec![
            vec![-1, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0],
            vec![0, -1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0],
            vec![-1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0],
            vec![0, -1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 1, 0, -1, 0, -1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 1, 0, -1, -1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 1, -1, 0, 0, -1, 0, 0],
            vec![0, 0, 0, 0, 0, 1, 0, 0, -1, 0, -1, 0, 0],
            vec![1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, -1, -1],
            vec![0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1, -1],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
        ]
    }

    /// Transpose of `d2`, one row per 2-cell.
    pub fn m5_d2_transpose() -> Vec<Vec<i64>> {
        vec![
            vec![-1, -1, -1, -1, -1, -1, -1, 0, 0, -1, -1, 0, 0],
            vec![1, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0],
            vec![0; 13],
        ]
    }

    pub fn m5_matrices() -> MatrixDocument {
        let strings = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        MatrixDocument {
            description: Some(
                "Modified Bredon differentials for PSL_2 over the integers of Q(sqrt(-5)). \
                 d2 is stored transposed, one row per 2-cell orbit; labels name the \
                 originating cell only."
                    .into(),
            ),
            m: Some(5),
            class_number: Some(2),
            d1: m5_d1(),
            d2: None,
            d2_transpose: Some(m5_d2_transpose()),
            labels: Some(MatrixLabels {
                d1_rows: strings(&VERTEX_LABELS),
                d1_cols: strings(&EDGE_LABELS),
                d2_cols: strings(&FACE_LABELS),
            }),
        }
    }

    pub fn m5_hints() -> HintDocument {
        HintDocument {
            description: vec![
                "Hexagon nodes: 0 = Z^{2k}, 1 = RK_0, 2 = K^0(H), 3 = Z^{2k}, 4 = RK_1, 5 = K^1(H);"
                    .into(),
                "arrow i maps node i to node i+1 (mod 6).".into(),
                "Assumed: both maps out of and into the boundary K^0 are zero (arrows 0 and 2),"
                    .into(),
                "and K^1(H) -> Z^{2k} (arrow 5) is onto. This is the assignment that yields"
                    .into(),
                "RK_0 = Z^6 + Z/2 and RK_1 = Z^4; it is an input, not a derivation.".into(),
            ],
            hints: SixTermHints {
                rank: [(0, 0), (2, 0)].into(),
                cokernel_torsion: [(5, vec![])].into(),
                kernel_torsion: Default::default(),
                split: false,
            },
        }
    }

    pub fn toy_edge() -> ComplexDocument {
        ComplexDocument {
            m: None,
            class_number: 1,
            cells: vec![
                CellDoc {
                    id: "p".into(),
                    name: "p".into(),
                    dim: 0,
                    stabilizer: GroupType::Trivial,
                    touches_singular: false,
                },
                CellDoc {
                    id: "e".into(),
                    name: "e".into(),
                    dim: 1,
                    stabilizer: GroupType::Trivial,
                    touches_singular: true,
                },
            ],
            incidences: vec![IncidenceDoc {
                cell: "e".into(),
                face: "p".into(),
                coefficient: -1,
                embedding: EmbeddingDoc::Canonical("Trivial-in-Trivial".into()),
            }],
        }
    }

    pub fn all() -> Vec<(&'static str, String)> {
        vec![
            (M5_MATRICES, to_pretty_json(&m5_matrices())),
            (M5_HINTS, to_pretty_json(&m5_hints())),
            (TOY_EDGE, to_pretty_json(&toy_edge())),
        ]
    }
}
