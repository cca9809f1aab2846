//! `bianchi`: validate complexes, compute Bredon homology and run the
//! K-homology pipeline.
//!
//! Exit codes: 0 success, 1 domain error, 2 input or parse error.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bianchi_core::arith::{self, ImagQuadField, QuadPoint, SearchOutcome};
use bianchi_core::documents::{
    fixtures, to_pretty_json, ComplexDocument, DocumentError, HintDocument, MatrixDocument,
};
use bianchi_core::exact_linalg::{elementary_divisors, rank};
use bianchi_core::gamma_cw::validate;
use bianchi_core::kk_pipeline::{
    e2_page, run_pipeline, KkError, PipelineConfig, PipelineError, PipelineInput, Policy,
};
use clap::{Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "bianchi",
    version,
    about = "Equivariant K-homology of Bianchi groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a complex document against the structural invariants.
    Validate {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Elementary divisors and homology of a matrix document.
    Homology {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Full run from a complex or matrix document to RK_0 and RK_1.
    Pipeline {
        /// Complex document, or matrix document with `class_number`.
        path: PathBuf,
        /// Six-term hint document.
        #[arg(long)]
        hints: Option<PathBuf>,
        /// `paper-split` takes split extensions; `enumerate` lists all.
        #[arg(long, default_value = "paper-split")]
        policy: Policy,
        #[arg(long)]
        json: bool,
    },
    /// Class number and orbit counts of Q(sqrt(-m)).
    Classnumber {
        /// Squarefree positive integer.
        m: u64,
        #[arg(long)]
        json: bool,
    },
    /// Bounded search for a pair (c, d) showing that D is not singular.
    Singular {
        m: u64,
        /// Boundary point, e.g. `0`, `2-w`, `(1+w)/2`.
        point: String,
        /// Largest norm of `c` to try.
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
        #[arg(long)]
        json: bool,
    },
    /// Write the bundled documents into a directory.
    Fixtures {
        /// Created if missing.
        outdir: PathBuf,
    },
}

enum Failure {
    Domain(String),
    Input(String),
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit_json(value: &serde_json::Value) {
    print!("{}", to_pretty_json(value));
}

fn cmd_validate(path: &Path, as_json: bool) -> Result<(), Failure> {
    let complex = ComplexDocument::parse(&read(path)?)?.to_complex()?;
    let report = validate(&complex);
    let lines: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
    if as_json {
        emit_json(&json!({ "valid": report.is_valid(), "violations": lines }));
    } else if report.is_valid() {
        println!("valid");
    } else {
        let n = lines.len();
        println!("invalid ({n} violation{})", if n == 1 { "" } else { "s" });
        for l in &lines {
            println!("  - {l}");
        }
    }
    if report.is_valid() {
        Ok(())
    } else {
        Err(Failure::Domain(String::new()))
    }
}

fn cmd_homology(path: &Path, as_json: bool) -> Result<(), Failure> {
    let (d1, d2) = MatrixDocument::parse(&read(path)?)?.matrices()?;
    let page = e2_page(&d1, &d2).map_err(|e| Failure::Domain(e.to_string()))?;
    let strings = |m| -> Vec<String> {
        elementary_divisors(m)
            .iter()
            .map(ToString::to_string)
            .collect()
    };
    let (s1, s2) = (strings(&d1), strings(&d2));
    if as_json {
        emit_json(&json!({
            "d1_divisors": s1,
            "d1_rank": rank(&d1),
            "d2_divisors": s2,
            "d2_rank": rank(&d2),
            "page": page,
        }));
    } else {
        println!(
            "d1 elementary divisors: {}, rank {}",
            render::divisors(&s1),
            rank(&d1)
        );
        println!(
            "d2 elementary divisors: {}, rank {}",
            render::divisors(&s2),
            rank(&d2)
        );
        print!("{}", render::page(&page));
    }
    Ok(())
}

fn cmd_pipeline(
    path: &Path,
    hints: Option<&Path>,
    policy: Policy,
    as_json: bool,
) -> Result<(), Failure> {
    let text = read(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("malformed JSON: {e}")))?;
    let input = if value.get("cells").is_some() {
        PipelineInput::Complex(ComplexDocument::parse(&text)?.to_complex()?)
    } else {
        let doc = MatrixDocument::parse(&text)?;
        let class_number = doc.class_number.ok_or_else(|| {
            Failure::Input("matrix document needs \"class_number\" for the pipeline".into())
        })?;
        let (d1, d2) = doc.matrices()?;
        PipelineInput::Matrices {
            d1,
            d2,
            class_number,
        }
    };
    let hints = match hints {
        Some(p) => HintDocument::parse(&read(p)?)?.hints,
        None => Default::default(),
    };
    let config = PipelineConfig { policy, hints };
    let report = run_pipeline(&input, &config).map_err(|e| match e {
        PipelineError::Kk(KkError::InvalidHint(why)) => Failure::Input(why),
        other => Failure::Domain(other.to_string()),
    })?;
    if as_json {
        print!("{}", to_pretty_json(&report));
    } else {
        print!("{}", render::pipeline(&report));
    }
    Ok(())
}

fn cmd_classnumber(m: u64, as_json: bool) -> Result<(), Failure> {
    let (cusps, singular) = arith::orbit_counts(m).map_err(|e| Failure::Domain(e.to_string()))?;
    if as_json {
        emit_json(&json!({
            "m": m,
            "class_number": cusps,
            "cusp_orbits": cusps,
            "singular_orbits": singular,
        }));
    } else {
        println!("h = {cusps}, cusp orbits = {cusps}, singular orbits = {singular}");
    }
    Ok(())
}

fn cmd_singular(m: u64, point: &str, bound: u64, as_json: bool) -> Result<(), Failure> {
    let field = ImagQuadField::new(m).map_err(|e| Failure::Domain(e.to_string()))?;
    let d: QuadPoint = point
        .parse()
        .map_err(|e: arith::ParseQuadPointError| Failure::Input(e.to_string()))?;
    match arith::singular_violation_search(&field, &d, bound) {
        SearchOutcome::Witness(w) => {
            let (num, den) = w.distance_sq;
            let dist = if den == 1 {
                num.to_string()
            } else {
                format!("{num}/{den}")
            };
            if as_json {
                emit_json(&json!({
                    "point": d.to_string(),
                    "witness": { "c": w.c.to_string(), "d": w.d.to_string() },
                    "distance_sq": dist,
                }));
            } else {
                println!(
                    "witness: c = {}, d = {}, |cD - d|^2 = {dist} < 1, so {d} is not singular",
                    w.c, w.d
                );
            }
        }
        SearchOutcome::NoneUpToBound { bound } => {
            if as_json {
                emit_json(&json!({ "point": d.to_string(), "witness": null, "bound": bound }));
            } else {
                println!(
                    "no witness with N(c) <= {bound}; this bounded search does not prove {d} singular"
                );
            }
        }
    }
    Ok(())
}

fn cmd_fixtures(outdir: &Path) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Domain(format!("{}: {e}", outdir.display()));
    fs::create_dir_all(outdir).map_err(io)?;
    for (name, contents) in fixtures::all() {
        let path = outdir.join(name);
        fs::write(&path, contents).map_err(io)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { path, json } => cmd_validate(path, *json),
        Command::Homology { path, json } => cmd_homology(path, *json),
        Command::Pipeline {
            path,
            hints,
            policy,
            json,
        } => cmd_pipeline(path, hints.as_deref(), *policy, *json),
        Command::Classnumber { m, json } => cmd_classnumber(*m, *json),
        Command::Singular {
            m,
            point,
            bound,
            json,
        } => cmd_singular(*m, point, *bound, *json),
        Command::Fixtures { outdir } => cmd_fixtures(outdir),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
