//! Acceptance criteria, one line each. Exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use bianchi_core::arith::{class_number, orbit_counts};
use bianchi_core::documents::fixtures;
use bianchi_core::exact_linalg::{
    cokernel, elementary_divisors, homology, snf, FgAbelianGroup, IntMatrix,
};
use bianchi_core::gamma_cw::{
    assemble_bredon, euler_check_ranks, CellOrbit, EmbeddingRef, IncidenceEntry, PrunedComplex,
};
use bianchi_core::kk_pipeline::{
    e2_page, k_of_halfspace, k_of_pruned, run_pipeline, solve_six_term, PipelineConfig,
    PipelineInput, Policy,
};
use bianchi_core::rep_theory::{
    canonical_embedding, canonical_embedding_names, character_table, induction_matrix,
    restriction_matrix, CyclotomicInt, GroupType,
};
use common::ExactHexagon;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn g(s: &str) -> FgAbelianGroup {
    s.parse().unwrap()
}

fn m5_matrices() -> (IntMatrix, IntMatrix) {
    fixtures::m5_matrices().matrices().unwrap()
}

fn m5_input() -> PipelineInput {
    let (d1, d2) = m5_matrices();
    PipelineInput::Matrices {
        d1,
        d2,
        class_number: 2,
    }
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn elementary_divisors_m5() -> Check {
    let start = Instant::now();
    let (d1, d2) = m5_matrices();
    ensure!(d1.shape() == (13, 13), "d1 shape {:?}", d1.shape());
    ensure!(d2.shape() == (13, 3), "d2 shape {:?}", d2.shape());
    let e1 = elementary_divisors(&d1);
    let e2 = elementary_divisors(&d2);
    ensure!(e1 == ints(&[1, 1, 1, 1, 1, 1, 1, 2]), "d1 divisors {e1:?}");
    ensure!(e2 == ints(&[1, 1]), "d2 divisors {e2:?}");
    ensure!(
        e2 == common::divisors_by_minors(&d2),
        "d2 disagrees with the minor oracle"
    );
    ensure!(d1.mul(&d2).is_zero(), "d1 d2 != 0");
    ensure!(
        start.elapsed() < Duration::from_secs(1),
        "took {:?}",
        start.elapsed()
    );
    Ok(())
}

fn e2_page_m5() -> Check {
    let (d1, d2) = m5_matrices();
    let p = e2_page(&d1, &d2).map_err(|e| e.to_string())?;
    ensure!(
        (p.h0.clone(), p.h1.clone(), p.h2.clone()) == (g("Z^5 + Z/2"), g("Z^3"), g("Z")),
        "page {} / {} / {}",
        p.h0,
        p.h1,
        p.h2
    );
    Ok(())
}

fn euler_m5() -> Check {
    let (d1, d2) = m5_matrices();
    let p = e2_page(&d1, &d2).map_err(|e| e.to_string())?;
    let chain = [d1.rows(), d1.cols(), d2.cols()];
    ensure!(chain == [13, 13, 3], "chain ranks {chain:?}");
    let ranks = [p.h0.free_rank(), p.h1.free_rank(), p.h2.free_rank()];
    ensure!(ranks == [5, 3, 1], "homology ranks {ranks:?}");
    ensure!(
        euler_check_ranks(chain, [&p.h0, &p.h1, &p.h2]),
        "13 - 13 + 3 != 5 - 3 + 1"
    );
    Ok(())
}

fn k_theory_m5() -> Check {
    let (d1, d2) = m5_matrices();
    let page = e2_page(&d1, &d2).map_err(|e| e.to_string())?;
    let pruned = k_of_pruned(&page, Policy::PaperSplit).map_err(|e| e.to_string())?;
    ensure!(
        pruned.k0_candidates == [g("Z^6 + Z/2")] && pruned.k1_candidates == [g("Z^3")],
        "K of pruned complex: {:?} / {:?}",
        pruned.k0_candidates,
        pruned.k1_candidates
    );
    let half = k_of_halfspace(&pruned);
    ensure!(
        half.k0_candidates == [g("Z^6 + Z/2")] && half.k1_candidates == [g("Z^4")],
        "K of the half-space: {:?} / {:?}",
        half.k0_candidates,
        half.k1_candidates
    );
    Ok(())
}

fn full_pipeline_m5() -> Check {
    let config = PipelineConfig {
        policy: Policy::PaperSplit,
        hints: fixtures::m5_hints().hints,
    };
    let r = run_pipeline(&m5_input(), &config).map_err(|e| e.to_string())?;
    ensure!(r.corners == (g("Z^4"), g("Z^4")), "corners {:?}", r.corners);
    let expected = (g("Z^6 + Z/2"), g("Z^4"));
    ensure!(
        r.result.pinned_pair() == Some((&expected.0, &expected.1)),
        "hinted result {:?} / {:?}",
        r.result.k0_candidates,
        r.result.k1_candidates
    );
    let r = run_pipeline(&m5_input(), &PipelineConfig::default()).map_err(|e| e.to_string())?;
    ensure!(
        r.result.k0_candidates.contains(&expected.0)
            && r.result.k1_candidates.contains(&expected.1),
        "unhinted candidates miss the pair"
    );
    ensure!(!r.result.flags.is_empty(), "unhinted ambiguity not flagged");
    Ok(())
}

fn class_numbers() -> Check {
    for m in [1, 2, 3, 7, 11, 19, 43, 67, 163] {
        let h = class_number(m).map_err(|e| e.to_string())?;
        ensure!(h == 1, "h({m}) = {h}");
    }
    let h = class_number(5).map_err(|e| e.to_string())?;
    ensure!(h == 2, "h(5) = {h}");
    let counts = orbit_counts(5).map_err(|e| e.to_string())?;
    ensure!(counts == (2, 1), "orbit counts {counts:?}");
    Ok(())
}

fn random_snf() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    for case in 0..1000 {
        let rows = rng.gen_range(0..=6);
        let cols = rng.gen_range(0..=6);
        let m = common::random_matrix(&mut rng, rows, cols, 9);
        let s = snf(&m);
        ensure!(s.u.mul(&m).mul(&s.v) == s.d, "case {case}: UMV != D");
        for x in [&s.u, &s.v] {
            ensure!(
                common::det(&common::entries(x)).abs().is_one(),
                "case {case}: not unimodular"
            );
        }
        for i in 0..rows {
            for j in 0..cols {
                ensure!(
                    i == j || s.d[(i, j)].is_zero(),
                    "case {case}: off-diagonal entry"
                );
            }
        }
        let ds = s.divisors();
        ensure!(
            ds.iter().all(|d| d.is_positive()),
            "case {case}: nonpositive divisor"
        );
        ensure!(
            ds.windows(2).all(|w| (&w[1] % &w[0]).is_zero()),
            "case {case}: divisibility chain broken"
        );
        ensure!(
            ds == common::divisors_by_minors(&m),
            "case {case}: minor oracle disagrees"
        );
    }
    Ok(())
}

fn embeddings() -> Check {
    for name in canonical_embedding_names() {
        let e = canonical_embedding(&name).ok_or(format!("{name} missing"))?;
        let ind = induction_matrix(&e)
            .map_err(|x| x.to_string())?
            .into_matrix();
        let res = restriction_matrix(&e).map_err(|x| x.to_string())?;
        ensure!(
            ind == res.transpose(),
            "{name}: induction is not restriction transposed"
        );
        let sub_dims = character_table(e.sub).dimensions();
        let sup_dims = character_table(e.sup).dimensions();
        let index = (e.sup.order() / e.sub.order()) as i64;
        for (j, &dj) in sub_dims.iter().enumerate() {
            let induced: BigInt = (0..sup_dims.len())
                .map(|i| &ind[(i, j)] * BigInt::from(sup_dims[i]))
                .sum();
            ensure!(
                induced == BigInt::from(index * dj),
                "{name}: dimension of induced {j}"
            );
        }
    }
    Ok(())
}

fn table_orthogonality() -> Check {
    for t in GroupType::ALL {
        let table = character_table(t);
        let n = table.order() as i64;
        ensure!(n as usize == t.order(), "{t:?}: class sizes sum to {n}");
        ensure!(
            table.chars.len() == table.class_count(),
            "{t:?}: table not square"
        );
        for (i, a) in table.chars.iter().enumerate() {
            for (j, b) in table.chars.iter().enumerate() {
                let want = CyclotomicInt::int(if i == j { n } else { 0 });
                ensure!(
                    table.scaled_inner_product(a, b) == want,
                    "{t:?}: rows {i}, {j}"
                );
            }
        }
        for c in 0..table.class_count() {
            for d in 0..table.class_count() {
                let s: CyclotomicInt = table.chars.iter().map(|chi| chi[c] * chi[d].conj()).sum();
                let want = if c == d {
                    n / table.class_sizes[c] as i64
                } else {
                    0
                };
                ensure!(s == CyclotomicInt::int(want), "{t:?}: columns {c}, {d}");
            }
        }
    }
    Ok(())
}

fn edge(pruned: bool) -> PrunedComplex {
    let cell = |id: &str, dim, singular| CellOrbit {
        id: id.into(),
        name: id.into(),
        dim,
        stabilizer: GroupType::Trivial,
        touches_singular: singular,
    };
    let inc = |face: &str, coefficient| IncidenceEntry {
        cell: "e".into(),
        face: face.into(),
        coefficient,
        map: EmbeddingRef::Canonical("Trivial-in-Trivial".into()),
    };
    let mut cells = vec![cell("p", 0, false), cell("e", 1, pruned)];
    let mut incidences = vec![inc("p", -1)];
    if !pruned {
        cells.push(cell("q", 0, false));
        incidences.push(inc("q", 1));
    }
    PrunedComplex {
        m: None,
        class_number_k: 1,
        cells,
        incidences,
    }
}

fn edge_complexes() -> Check {
    let toy = fixtures::toy_edge()
        .to_complex()
        .map_err(|e| e.to_string())?;
    ensure!(
        toy == edge(true),
        "bundled toy document differs from the pruned edge"
    );
    for (c, h0) in [(toy, g("0")), (edge(false), g("Z"))] {
        let b = assemble_bredon(&c).map_err(|e| e.to_string())?;
        let hs = [
            cokernel(&b.d1),
            homology(&b.d1, &b.d2).map_err(|e| e.to_string())?,
            homology(&b.d2, &IntMatrix::zeros(b.d2.cols(), 0)).map_err(|e| e.to_string())?,
        ];
        ensure!(
            hs[0] == h0 && hs[1].is_zero() && hs[2].is_zero(),
            "homology {hs:?}"
        );
    }
    Ok(())
}

fn construct_then_solve() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e8a);
    for case in 0..100 {
        let hex = ExactHexagon::random(&mut rng);
        let unknown = rng.gen_range(0..3);
        let hint_prob = [0.0, 0.5, 1.0][case % 3];
        let p = hex.problem(&mut rng, unknown, hint_prob);
        let sol = solve_six_term(&p).map_err(|e| format!("case {case}: {e}"))?;
        ensure!(
            sol.admits(&hex.nodes[unknown], &hex.nodes[unknown + 3]),
            "case {case}: constructed solution {} / {} not admitted",
            hex.nodes[unknown],
            hex.nodes[unknown + 3]
        );
    }
    Ok(())
}

fn property_suite() -> Check {
    let parts: [Criterion; 5] = [
        ("random SNF", random_snf),
        ("embeddings", embeddings),
        ("character tables", table_orthogonality),
        ("edge complexes", edge_complexes),
        ("six-term", construct_then_solve),
    ];
    for (name, f) in parts {
        f().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 7] = [
        (
            "elementary divisors of the m = 5 differentials",
            elementary_divisors_m5,
        ),
        ("E2 page for m = 5", e2_page_m5),
        ("Euler characteristic check for m = 5", euler_m5),
        (
            "K-theory of the pruned complex and the half-space",
            k_theory_m5,
        ),
        ("full pipeline for m = 5", full_pipeline_m5),
        ("class numbers", class_numbers),
        ("property suite", property_suite),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".to_string()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("[PASS] {} {name} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
