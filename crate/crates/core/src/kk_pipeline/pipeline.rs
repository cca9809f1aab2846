use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::exact_linalg::{elementary_divisors, FgAbelianGroup, IntMatrix};
use crate::gamma_cw::{assemble_bredon, euler_check_ranks, CwError, PrunedComplex};

use super::{
    boundary_corners, e2_page, k_of_halfspace, k_of_pruned, solve_six_term, KResult, KkError,
    Policy, SixTermHints, SixTermProblem, SpectralPage,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PipelineInput {
    Complex(PrunedComplex),
    /// Differentials given directly; `class_number` fixes the corners.
    Matrices {
        d1: IntMatrix,
        d2: IntMatrix,
        class_number: u64,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PipelineConfig {
    pub policy: Policy,
    pub hints: SixTermHints,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Complex(#[from] CwError),
    #[error(transparent)]
    Kk(#[from] KkError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCheck {
    pub chain_ranks: [usize; 3],
    pub homology_ranks: [usize; 3],
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HexagonRow {
    pub k0_halfspace: FgAbelianGroup,
    pub k1_halfspace: FgAbelianGroup,
    pub arrow_ranks: [usize; 6],
    pub rk0: String,
    pub rk1: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub class_number: u64,
    /// Elementary divisors of `d1` and `d2`, smallest first.
    pub d1_divisors: Vec<String>,
    pub d2_divisors: Vec<String>,
    pub page: SpectralPage,
    pub euler: EulerCheck,
    pub k_pruned: KResult,
    pub k_halfspace: KResult,
    pub corners: (FgAbelianGroup, FgAbelianGroup),
    pub hexagon: Vec<HexagonRow>,
    pub result: KResult,
}

fn divisor_strings(m: &IntMatrix) -> Vec<String> {
    elementary_divisors(m)
        .iter()
        .map(ToString::to_string)
        .collect()
}

pub fn run_pipeline(
    input: &PipelineInput,
    config: &PipelineConfig,
) -> Result<PipelineReport, PipelineError> {
    let (d1, d2, k) = match input {
        PipelineInput::Complex(c) => {
            let b = assemble_bredon(c)?;
            (b.d1, b.d2, c.class_number_k)
        }
        PipelineInput::Matrices {
            d1,
            d2,
            class_number,
        } => (d1.clone(), d2.clone(), *class_number),
    };
    let corners = boundary_corners(k)?;
    let page = e2_page(&d1, &d2)?;
    let chain = [d1.rows(), d1.cols(), d2.cols()];
    let euler = EulerCheck {
        chain_ranks: chain,
        homology_ranks: [
            page.h0.free_rank(),
            page.h1.free_rank(),
            page.h2.free_rank(),
        ],
        holds: euler_check_ranks(chain, [&page.h0, &page.h1, &page.h2]),
    };
    let k_pruned = k_of_pruned(&page, config.policy)?;
    let k_halfspace = k_of_halfspace(&k_pruned);

    let mut hexagon = Vec::new();
    let mut lists: [BTreeSet<FgAbelianGroup>; 2] = Default::default();
    let mut flags = k_halfspace.flags.clone();
    let mut pinned_pairs = BTreeSet::new();
    let mut all_pinned = true;
    for k0 in &k_halfspace.k0_candidates {
        for k1 in &k_halfspace.k1_candidates {
            let sol = solve_six_term(&SixTermProblem::bianchi(
                &corners,
                k0,
                k1,
                config.hints.clone(),
            ))?;
            for c in &sol.candidates {
                hexagon.push(HexagonRow {
                    k0_halfspace: k0.clone(),
                    k1_halfspace: k1.clone(),
                    arrow_ranks: c.arrow_ranks,
                    rk0: c.nodes[0].to_string(),
                    rk1: c.nodes[1].to_string(),
                });
            }
            match sol.pinned() {
                Some((a, b)) => {
                    pinned_pairs.insert((a.clone(), b.clone()));
                }
                None => all_pinned = false,
            }
            let r = sol.to_k_result();
            lists[0].extend(r.k0_candidates);
            lists[1].extend(r.k1_candidates);
            for f in r.flags {
                if !flags.contains(&f) {
                    flags.push(f);
                }
            }
        }
    }
    let [k0, k1] = lists.map(|l| l.into_iter().collect::<Vec<_>>());
    let result = KResult {
        pinned: all_pinned && pinned_pairs.len() == 1,
        k0_candidates: k0,
        k1_candidates: k1,
        flags,
    };
    Ok(PipelineReport {
        class_number: k,
        d1_divisors: divisor_strings(&d1),
        d2_divisors: divisor_strings(&d2),
        page,
        euler,
        k_pruned,
        k_halfspace,
        corners,
        hexagon,
        result,
    })
}
