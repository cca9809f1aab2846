//! From the modified Bredon complex to equivariant K-homology.
//!
//! The complex is 2-dimensional and the odd rows of the spectral sequence
//! vanish, so `E^2 = E^infinity` and only columns 0..2 of row 0 occur. No
//! higher differential is ever built.

mod extension;
mod pipeline;
mod six_term;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use extension::{solve_extension, ExtensionProblem, MAX_EXTENSION_CLASSES};
pub use pipeline::{run_pipeline, PipelineConfig, PipelineError, PipelineInput, PipelineReport};
pub use six_term::{
    solve_six_term, HexagonCandidate, NodeSolution, SixTermHints, SixTermProblem, SixTermSolution,
};

use crate::exact_linalg::{cokernel, homology, kernel, FgAbelianGroup, HomologyError, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KkError {
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("extension of {quot} by {sub} not supported: the subgroup must be free")]
    UnsupportedExtension {
        sub: FgAbelianGroup,
        quot: FgAbelianGroup,
    },
    #[error("too many extension classes of {quot} by {sub} (limit {MAX_EXTENSION_CLASSES})")]
    TooManyExtensions {
        sub: FgAbelianGroup,
        quot: FgAbelianGroup,
    },
    #[error("class number must be at least 1")]
    InvalidClassNumber,
    #[error("unknown nodes must be exactly two opposite positions, got {0:?}")]
    NotOppositeUnknowns(Vec<usize>),
    #[error("invalid hint: {0}")]
    InvalidHint(String),
    #[error("no arrow-rank assignment is consistent with exactness and the hints")]
    InconsistentHints,
}

/// Row 0 of `E^2`, columns 0, 1, 2.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SpectralPage {
    pub h0: FgAbelianGroup,
    pub h1: FgAbelianGroup,
    pub h2: FgAbelianGroup,
}

pub fn e2_page(d1: &IntMatrix, d2: &IntMatrix) -> Result<SpectralPage, KkError> {
    let h1 = homology(d1, d2)?;
    Ok(SpectralPage {
        h0: cokernel(d1),
        h1,
        h2: kernel(d2),
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Policy {
    /// Pin `K^0` to the split extension and flag the alternatives.
    #[default]
    PaperSplit,
    /// Keep every extension class.
    Enumerate,
}

impl std::str::FromStr for Policy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "paper-split" => Ok(Policy::PaperSplit),
            "enumerate" => Ok(Policy::Enumerate),
            _ => Err(format!(
                "unknown policy {s:?}; expected paper-split or enumerate"
            )),
        }
    }
}

/// Something the reader of a result must know about how it was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Flag {
    SplitChosen {
        stage: String,
        chosen: FgAbelianGroup,
        alternatives: Vec<FgAbelianGroup>,
    },
    ExtensionAmbiguous {
        stage: String,
        candidates: Vec<FgAbelianGroup>,
    },
    TorsionUndetermined {
        node: String,
        free_rank: usize,
    },
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |gs: &[FgAbelianGroup]| {
            gs.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self {
            Flag::SplitChosen {
                stage,
                chosen,
                alternatives,
            } => write!(
                f,
                "{stage}: split extension {chosen} chosen; also possible: {}",
                list(alternatives)
            ),
            Flag::ExtensionAmbiguous { stage, candidates } => {
                write!(f, "{stage}: extension not determined: {}", list(candidates))
            }
            Flag::TorsionUndetermined { node, free_rank } => write!(
                f,
                "{node}: torsion undetermined for some rank assignment (free rank {free_rank})"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KResult {
    pub k0_candidates: Vec<FgAbelianGroup>,
    pub k1_candidates: Vec<FgAbelianGroup>,
    /// Each list has exactly one entry and nothing is undetermined.
    pub pinned: bool,
    pub flags: Vec<Flag>,
}

impl KResult {
    pub fn pinned_pair(&self) -> Option<(&FgAbelianGroup, &FgAbelianGroup)> {
        match (&self.k0_candidates[..], &self.k1_candidates[..]) {
            ([a], [b]) if self.pinned => Some((a, b)),
            _ => None,
        }
    }
}

/// `K^1 = E^2_{1,0}`, and `0 -> E^2_{0,2} -> K^0 -> E^2_{2,0} -> 0`.
pub fn k_of_pruned(page: &SpectralPage, policy: Policy) -> Result<KResult, KkError> {
    let all = solve_extension(&ExtensionProblem {
        sub: page.h2.clone(),
        quot: page.h0.clone(),
    })?;
    let mut flags = Vec::new();
    let k0 = if all.len() > 1 {
        match policy {
            Policy::PaperSplit => {
                let split = page.h2.direct_sum(&page.h0);
                flags.push(Flag::SplitChosen {
                    stage: "K^0 of the pruned complex".into(),
                    chosen: split.clone(),
                    alternatives: all.into_iter().filter(|g| *g != split).collect(),
                });
                vec![split]
            }
            Policy::Enumerate => {
                flags.push(Flag::ExtensionAmbiguous {
                    stage: "K^0 of the pruned complex".into(),
                    candidates: all.clone(),
                });
                all
            }
        }
    } else {
        all
    };
    Ok(KResult {
        pinned: k0.len() == 1,
        k0_candidates: k0,
        k1_candidates: vec![page.h1.clone()],
        flags,
    })
}

/// The connecting map from the pruned complex to hyperbolic space vanishes,
/// so `K^0` is unchanged and `0 -> K^1(pruned) -> K^1 -> Z -> 0`, which
/// splits because `Z` is free.
pub fn k_of_halfspace(pruned: &KResult) -> KResult {
    let z = FgAbelianGroup::free(1);
    KResult {
        k0_candidates: pruned.k0_candidates.clone(),
        k1_candidates: pruned
            .k1_candidates
            .iter()
            .map(|g| g.direct_sum(&z))
            .collect(),
        pinned: pruned.pinned,
        flags: pruned.flags.clone(),
    }
}

/// K-homology of the Borel-Serre boundary: `k` two-tori give `Z^{2k}` in
/// both degrees.
pub fn boundary_corners(k: u64) -> Result<(FgAbelianGroup, FgAbelianGroup), KkError> {
    if k == 0 {
        return Err(KkError::InvalidClassNumber);
    }
    let z = FgAbelianGroup::free(2 * k as usize);
    Ok((z.clone(), z))
}
