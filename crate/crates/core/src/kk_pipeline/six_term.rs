use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exact_linalg::FgAbelianGroup;

use super::extension::{solve_extension, ExtensionProblem};
use super::{Flag, KResult, KkError};

/// Known facts about the maps of the hexagon. Arrow `i` goes from node `i`
/// to node `i + 1 (mod 6)`. Torsion hints list cyclic orders of the torsion
/// part of the kernel or cokernel of that arrow.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SixTermHints {
    #[serde(default)]
    pub rank: BTreeMap<usize, usize>,
    #[serde(default)]
    pub cokernel_torsion: BTreeMap<usize, Vec<u64>>,
    #[serde(default)]
    pub kernel_torsion: BTreeMap<usize, Vec<u64>>,
    /// Resolve remaining extension ambiguities by the split extension.
    #[serde(default)]
    pub split: bool,
}

/// Cyclic exact sequence `A0 -> A1 -> ... -> A5 -> A0` with two opposite
/// unknown nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixTermProblem {
    pub nodes: [Option<FgAbelianGroup>; 6],
    pub hints: SixTermHints,
}

impl SixTermProblem {
    /// `Z^{2k} -> RK_0 -> K^0(H) -> Z^{2k} -> RK_1 -> K^1(H) -> Z^{2k}`,
    /// unknowns at nodes 1 and 4.
    pub fn bianchi(
        corners: &(FgAbelianGroup, FgAbelianGroup),
        k0_h: &FgAbelianGroup,
        k1_h: &FgAbelianGroup,
        hints: SixTermHints,
    ) -> Self {
        SixTermProblem {
            nodes: [
                Some(corners.0.clone()),
                None,
                Some(k0_h.clone()),
                Some(corners.1.clone()),
                None,
                Some(k1_h.clone()),
            ],
            hints,
        }
    }
}

/// What is known about an unknown node for one rank assignment.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeSolution {
    /// Complete list of possible isomorphism classes.
    Groups(Vec<FgAbelianGroup>),
    /// Free rank is known; the torsion is not determined by the data.
    FreeRankOnly(usize),
}

impl NodeSolution {
    pub fn admits(&self, g: &FgAbelianGroup) -> bool {
        match self {
            NodeSolution::Groups(gs) => gs.contains(g),
            NodeSolution::FreeRankOnly(r) => g.free_rank() == *r,
        }
    }

    pub fn pinned(&self) -> Option<&FgAbelianGroup> {
        match self {
            NodeSolution::Groups(gs) if gs.len() == 1 => gs.first(),
            _ => None,
        }
    }

    pub fn free_rank(&self) -> usize {
        match self {
            NodeSolution::Groups(gs) => gs[0].free_rank(),
            NodeSolution::FreeRankOnly(r) => *r,
        }
    }
}

impl fmt::Display for NodeSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeSolution::Groups(gs) if gs.len() == 1 => write!(f, "{}", gs[0]),
            NodeSolution::Groups(gs) => {
                let parts: Vec<String> = gs.iter().map(ToString::to_string).collect();
                write!(f, "one of {{{}}}", parts.join(", "))
            }
            NodeSolution::FreeRankOnly(0) => write!(f, "finite, torsion undetermined"),
            NodeSolution::FreeRankOnly(r) => {
                write!(
                    f,
                    "{} + finite, torsion undetermined",
                    FgAbelianGroup::free(*r)
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexagonCandidate {
    pub arrow_ranks: [usize; 6],
    /// Solutions at the two unknown nodes, in index order.
    pub nodes: [NodeSolution; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixTermSolution {
    pub unknowns: [usize; 2],
    pub candidates: Vec<HexagonCandidate>,
    pub flags: Vec<Flag>,
}

impl SixTermSolution {
    /// Whether some candidate allows the given pair at the unknown nodes.
    pub fn admits(&self, first: &FgAbelianGroup, second: &FgAbelianGroup) -> bool {
        self.candidates
            .iter()
            .any(|c| c.nodes[0].admits(first) && c.nodes[1].admits(second))
    }

    /// Distinct solution pairs, ignoring which arrow ranks produced them.
    pub fn distinct_pairs(&self) -> Vec<(NodeSolution, NodeSolution)> {
        let set: BTreeSet<_> = self
            .candidates
            .iter()
            .map(|c| (c.nodes[0].clone(), c.nodes[1].clone()))
            .collect();
        set.into_iter().collect()
    }

    pub fn pinned(&self) -> Option<(&FgAbelianGroup, &FgAbelianGroup)> {
        let first = &self.candidates.first()?.nodes;
        let pair = (first[0].pinned()?, first[1].pinned()?);
        self.candidates
            .iter()
            .all(|c| c.nodes == *first)
            .then_some(pair)
    }

    /// Collapses the candidates into per-node lists. A node whose torsion is
    /// undetermined contributes its free part and an extra flag.
    pub fn to_k_result(&self) -> KResult {
        let mut lists: [BTreeSet<FgAbelianGroup>; 2] = Default::default();
        let mut flags = self.flags.clone();
        for c in &self.candidates {
            for (slot, node) in c.nodes.iter().enumerate() {
                match node {
                    NodeSolution::Groups(gs) => lists[slot].extend(gs.iter().cloned()),
                    NodeSolution::FreeRankOnly(r) => {
                        lists[slot].insert(FgAbelianGroup::free(*r));
                    }
                }
            }
        }
        let [k0, k1] = lists.map(|l| l.into_iter().collect::<Vec<_>>());
        let pinned = self.pinned().is_some();
        flags.dedup();
        KResult {
            k0_candidates: k0,
            k1_candidates: k1,
            pinned,
            flags,
        }
    }
}

fn at(i: usize, k: isize) -> usize {
    (i as isize + k).rem_euclid(6) as usize
}

fn with_torsion(free_rank: usize, torsion: &[u64]) -> FgAbelianGroup {
    FgAbelianGroup::from_cyclic_orders(free_rank, torsion.iter().map(|&t| BigInt::from(t)))
}

/// Outcome of combining a computed value with an optional hint.
fn reconcile(
    computed: Option<FgAbelianGroup>,
    hinted: Option<FgAbelianGroup>,
) -> Result<Option<FgAbelianGroup>, ()> {
    match (computed, hinted) {
        (Some(c), Some(h)) if c != h => Err(()),
        (c, h) => Ok(c.or(h)),
    }
}

struct Solver<'a> {
    nodes: [FgAbelianGroup; 6],
    hints: &'a SixTermHints,
}

impl Solver<'_> {
    fn coker(&self, arrow: usize, rho: usize) -> Result<Option<FgAbelianGroup>, ()> {
        let src = &self.nodes[arrow];
        let tgt = &self.nodes[at(arrow, 1)];
        let computed = if src.is_zero() || (tgt.is_free() && rho == 0) {
            Some(tgt.clone())
        } else {
            None
        };
        let free = tgt.free_rank() - rho;
        let hinted = self
            .hints
            .cokernel_torsion
            .get(&arrow)
            .map(|t| with_torsion(free, t));
        reconcile(computed, hinted)
    }

    fn ker(&self, arrow: usize, rho: usize) -> Result<Option<FgAbelianGroup>, ()> {
        let src = &self.nodes[arrow];
        let tgt = &self.nodes[at(arrow, 1)];
        let free = src.free_rank() - rho;
        let computed = if src.is_free() {
            Some(FgAbelianGroup::free(free))
        } else if tgt.is_free() {
            Some(FgAbelianGroup::free(free).direct_sum(&src.torsion_subgroup()))
        } else {
            None
        };
        let hinted = self
            .hints
            .kernel_torsion
            .get(&arrow)
            .map(|t| with_torsion(free, t));
        reconcile(computed, hinted)
    }

    /// `0 -> coker(f_{u-2}) -> A_u -> ker(f_{u+1}) -> 0`.
    fn node(&self, u: usize, rho: &[usize; 6], flags: &mut Vec<Flag>) -> Result<NodeSolution, ()> {
        let before = at(u, -2);
        let after = at(u, 1);
        let c = self.coker(before, rho[before])?;
        let k = self.ker(after, rho[after])?;
        let free = rho[at(u, -1)] + rho[u];
        let label = format!("node {u}");
        let (Some(c), Some(k)) = (c, k) else {
            flags.push(Flag::TorsionUndetermined {
                node: label,
                free_rank: free,
            });
            return Ok(NodeSolution::FreeRankOnly(free));
        };
        let split = c.direct_sum(&k);
        if k.is_free() {
            return Ok(NodeSolution::Groups(vec![split]));
        }
        if !c.is_free() {
            if self.hints.split {
                return Ok(NodeSolution::Groups(vec![split]));
            }
            flags.push(Flag::TorsionUndetermined {
                node: label,
                free_rank: free,
            });
            return Ok(NodeSolution::FreeRankOnly(free));
        }
        let Ok(all) = solve_extension(&ExtensionProblem {
            sub: c.clone(),
            quot: k.clone(),
        }) else {
            // too many extension classes to enumerate
            flags.push(Flag::TorsionUndetermined {
                node: label,
                free_rank: free,
            });
            return Ok(NodeSolution::FreeRankOnly(free));
        };
        if all.len() == 1 {
            return Ok(NodeSolution::Groups(all));
        }
        if self.hints.split {
            flags.push(Flag::SplitChosen {
                stage: label,
                chosen: split.clone(),
                alternatives: all.into_iter().filter(|g| *g != split).collect(),
            });
            return Ok(NodeSolution::Groups(vec![split]));
        }
        flags.push(Flag::ExtensionAmbiguous {
            stage: label,
            candidates: all.clone(),
        });
        Ok(NodeSolution::Groups(all))
    }
}

/// Enumerates arrow-rank assignments compatible with exactness of free
/// ranks (`rank A_i = rho_{i-1} + rho_i`) and the hints, and solves the two
/// unknown nodes for each.
pub fn solve_six_term(p: &SixTermProblem) -> Result<SixTermSolution, KkError> {
    let unknown: Vec<usize> = (0..6).filter(|&i| p.nodes[i].is_none()).collect();
    let u = match unknown[..] {
        [a, b] if b == a + 3 => a,
        _ => return Err(KkError::NotOppositeUnknowns(unknown)),
    };
    let arrows = p
        .hints
        .rank
        .keys()
        .chain(p.hints.cokernel_torsion.keys())
        .chain(p.hints.kernel_torsion.keys());
    for &arrow in arrows {
        if arrow >= 6 {
            return Err(KkError::InvalidHint(format!(
                "arrow index {arrow} out of range"
            )));
        }
    }
    let torsion_lists = p
        .hints
        .cokernel_torsion
        .values()
        .chain(p.hints.kernel_torsion.values());
    if torsion_lists.flatten().any(|&t| t == 0) {
        return Err(KkError::InvalidHint(
            "torsion orders must be positive".into(),
        ));
    }
    let solver = Solver {
        nodes: std::array::from_fn(|i| p.nodes[i].clone().unwrap_or_default()),
        hints: &p.hints,
    };
    let r: [usize; 6] = std::array::from_fn(|i| solver.nodes[i].free_rank());

    let mut candidates = Vec::new();
    let mut flags = Vec::new();
    for a in 0..=r[at(u, 1)] {
        for b in 0..=r[at(u, 4)] {
            let mut rho = [0usize; 6];
            rho[u] = a;
            rho[at(u, 1)] = r[at(u, 1)] - a;
            let Some(x) = r[at(u, 2)].checked_sub(rho[at(u, 1)]) else {
                continue;
            };
            rho[at(u, 2)] = x;
            rho[at(u, 3)] = b;
            rho[at(u, 4)] = r[at(u, 4)] - b;
            let Some(y) = r[at(u, 5)].checked_sub(rho[at(u, 4)]) else {
                continue;
            };
            rho[at(u, 5)] = y;
            if p.hints.rank.iter().any(|(&i, &h)| rho[i] != h) {
                continue;
            }
            let mut local = Vec::new();
            let first = solver.node(u, &rho, &mut local);
            let second = solver.node(u + 3, &rho, &mut local);
            let (Ok(first), Ok(second)) = (first, second) else {
                // a torsion hint contradicts what the ranks force
                continue;
            };
            candidates.push(HexagonCandidate {
                arrow_ranks: rho,
                nodes: [first, second],
            });
            for f in local {
                if !flags.contains(&f) {
                    flags.push(f);
                }
            }
        }
    }
    if candidates.is_empty() {
        return Err(KkError::InconsistentHints);
    }
    Ok(SixTermSolution {
        unknowns: [u, u + 3],
        candidates,
        flags,
    })
}
