use std::fmt::Write;

use bianchi_core::exact_linalg::FgAbelianGroup;
use bianchi_core::kk_pipeline::{KResult, PipelineReport, SpectralPage};

/// `["1", "1", "2"]` becomes `(1×2, 2×1)`.
pub fn divisors(ds: &[String]) -> String {
    if ds.is_empty() {
        return "(none)".into();
    }
    let mut runs: Vec<(&str, usize)> = Vec::new();
    for d in ds {
        match runs.last_mut() {
            Some((last, n)) if *last == d.as_str() => *n += 1,
            _ => runs.push((d, 1)),
        }
    }
    let parts: Vec<String> = runs.iter().map(|(d, n)| format!("{d}×{n}")).collect();
    format!("({})", parts.join(", "))
}

fn list(gs: &[FgAbelianGroup]) -> String {
    match gs {
        [g] => g.to_string(),
        _ => {
            let parts: Vec<String> = gs.iter().map(ToString::to_string).collect();
            format!("one of {{{}}}", parts.join(", "))
        }
    }
}

fn k_line(label: &str, k: &KResult) -> String {
    format!(
        "{label}: K^0 = {}, K^1 = {}",
        list(&k.k0_candidates),
        list(&k.k1_candidates)
    )
}

pub fn page(p: &SpectralPage) -> String {
    format!("H0 = {}\nH1 = {}\nH2 = {}\n", p.h0, p.h1, p.h2)
}

pub fn final_line(k: &KResult) -> String {
    match k.pinned_pair() {
        Some((a, b)) => format!("RK_0 = {a}, RK_1 = {b}"),
        None => format!(
            "RK_0 {}, RK_1 {} (not pinned; see flags)",
            in_set(&k.k0_candidates),
            in_set(&k.k1_candidates)
        ),
    }
}

fn in_set(gs: &[FgAbelianGroup]) -> String {
    let parts: Vec<String> = gs.iter().map(ToString::to_string).collect();
    format!("in {{{}}}", parts.join(", "))
}

pub fn pipeline(r: &PipelineReport) -> String {
    let mut out = String::new();
    let [c0, c1, c2] = r.euler.chain_ranks;
    let [h0, h1, h2] = r.euler.homology_ranks;
    let _ = writeln!(out, "class number k = {}", r.class_number);
    let _ = writeln!(out, "d1 elementary divisors: {}", divisors(&r.d1_divisors));
    let _ = writeln!(out, "d2 elementary divisors: {}", divisors(&r.d2_divisors));
    let _ = writeln!(
        out,
        "E2: H0 = {}, H1 = {}, H2 = {}",
        r.page.h0, r.page.h1, r.page.h2
    );
    let _ = writeln!(
        out,
        "Euler check: {c0} - {c1} + {c2} = {h0} - {h1} + {h2} ({})",
        if r.euler.holds { "holds" } else { "FAILS" }
    );
    let _ = writeln!(out, "{}", k_line("K(pruned complex)", &r.k_pruned));
    let _ = writeln!(out, "{}", k_line("K(hyperbolic space)", &r.k_halfspace));
    let _ = writeln!(out, "boundary corners: {}, {}", r.corners.0, r.corners.1);
    let _ = writeln!(
        out,
        "six-term candidates (arrow ranks f0..f5 -> RK_0 | RK_1):"
    );
    for row in &r.hexagon {
        let ranks: Vec<String> = row.arrow_ranks.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            out,
            "  K^0 = {}, K^1 = {}, ranks [{}] -> {} | {}",
            row.k0_halfspace,
            row.k1_halfspace,
            ranks.join(" "),
            row.rk0,
            row.rk1
        );
    }
    if !r.result.flags.is_empty() {
        let _ = writeln!(out, "flags:");
        for f in &r.result.flags {
            let _ = writeln!(out, "  - {f}");
        }
    }
    let _ = writeln!(out, "{}", final_line(&r.result));
    out
}
