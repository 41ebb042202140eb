//! `multikat`: validate multicategory documents, compute K-theory reports
//! and run the lemma checks.

mod cache;
mod lemmas;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use multikat::document::{Body, InputDocument};
use multikat::enumeration::EnumerationCache;
use multikat::gamma::{k_theory, KTheoryError, KTheoryOptions};
use multikat::homotopy::very_special_verdict;
use multikat::multicat::{validate_multicategory, BasedMulticategory, PermutativeCategory};

use crate::cache::FsCache;
use crate::lemmas::Status;

#[derive(Parser)]
#[command(name = "multikat", version, about = "K-theory of finite multicategories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a document against the multicategory axioms.
    Validate {
        path: PathBuf,
        #[command(flatten)]
        options: Options,
    },
    /// Compute levels of J(M) and the homotopy report.
    Ktheory {
        path: PathBuf,
        #[command(flatten)]
        options: Options,
    },
    /// Run the lemma checks on one document or on every builtin.
    CheckLemmas {
        #[arg(required_unless_present = "all_builtins")]
        path: Option<PathBuf>,
        #[arg(long)]
        all_builtins: bool,
        #[command(flatten)]
        options: Options,
    },
}

#[derive(Args, Clone)]
struct Options {
    #[arg(long, env = "MULTIKAT_LEVELS", default_value_t = 3)]
    levels: usize,
    /// Defaults to the document's own cap, else 4.
    #[arg(long, env = "MULTIKAT_ARITY_CAP")]
    arity_cap: Option<usize>,
    /// Search nodes allowed per enumeration.
    #[arg(long, env = "MULTIKAT_BUDGET", default_value_t = multikat::enumeration::DEFAULT_BUDGET)]
    budget: u64,
    /// Write the report here instead of stdout.
    #[arg(long, env = "MULTIKAT_OUT")]
    out: Option<PathBuf>,
    #[arg(long, env = "MULTIKAT_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, env = "MULTIKAT_JOBS", default_value_t = 0)]
    jobs: usize,
}

/// Non-success outcomes and their exit codes.
enum Failure {
    Invalid(String),
    Resource(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Resource(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

fn read_document(path: &Path) -> Result<InputDocument, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?;
    InputDocument::from_json(&text).map_err(|e| Failure::Invalid(format!("cannot parse {}: {e}", path.display())))
}

fn build(doc: &InputDocument, options: &Options) -> Result<BasedMulticategory, Failure> {
    doc.build(options.arity_cap)
        .map_err(|e| Failure::Invalid(format!("structural: {e}")))
}

fn validate(path: &Path, options: &Options) -> Result<(), Failure> {
    let doc = read_document(path)?;
    let m = build(&doc, options)?;
    let report = validate_multicategory(&m);
    for line in report.lines() {
        println!("{line}");
    }
    if report.is_valid() {
        println!("valid");
        Ok(())
    } else {
        Err(Failure::Invalid(format!(
            "{} structural issues, {} axiom violations",
            report.structural.len(),
            report.violations.len()
        )))
    }
}

fn open_cache(options: &Options) -> Option<FsCache> {
    options.cache_dir.as_deref().and_then(FsCache::open)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let write = || -> std::io::Result<()> {
                let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
                std::io::Write::write_all(&mut tmp, text.as_bytes())?;
                cache::readable(tmp.as_file())?;
                tmp.persist(path).map_err(|e| e.error)?;
                Ok(())
            };
            write().map_err(|e| Failure::Resource(format!("cannot write {}: {e}", path.display())))
        }
    }
}

fn ktheory(path: &Path, options: &Options) -> Result<(), Failure> {
    let doc = read_document(path)?;
    let m = build(&doc, options)?;
    // builtins and permutative inputs are multicategories by construction
    if let Body::Multicategory(_) = doc.body {
        let report = validate_multicategory(&m);
        if !report.is_valid() {
            for line in report.lines() {
                eprintln!("{line}");
            }
            return Err(Failure::Invalid("input is not a valid multicategory".into()));
        }
    }
    let cache = open_cache(options);
    let ko = KTheoryOptions {
        budget: options.budget,
        jobs: options.jobs,
        cache: cache.as_ref().map(|c| c as &dyn EnumerationCache),
    };
    let start = Instant::now();
    let x = k_theory(&m, options.levels, ko).map_err(|e| match e {
        KTheoryError::CapTooSmall { .. } => Failure::Invalid(e.to_string()),
        KTheoryError::Level { .. } => Failure::Resource(e.to_string()),
    })?;
    let levels_time = start.elapsed();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .map_err(|e| Failure::Internal(e.to_string()))?;
    let verdict = pool.install(|| very_special_verdict(&x));
    if verdict.very_special && verdict.stable_pi0.is_none() {
        return Err(Failure::Internal("very special report without a π₀ group".into()));
    }
    let text = report::render(&doc, &m, options, &x, &verdict);
    eprintln!(
        "timing: levels {:.3}s, verdicts {:.3}s",
        levels_time.as_secs_f64(),
        start.elapsed().as_secs_f64() - levels_time.as_secs_f64()
    );
    write_output(options.out.as_deref(), &text)
}

/// Builtin documents and the standard permutative inputs.
fn all_builtins() -> Vec<(String, InputDocument)> {
    let mut out: Vec<(String, InputDocument)> = ["terminal", "E", "I", "u", "wedge(E,E)"]
        .iter()
        .map(|n| (n.to_string(), InputDocument::builtin(n, None)))
        .collect();
    out.push(("E^2".into(), InputDocument::builtin("E^n", Some(2))));
    for (name, p) in [
        ("discrete Z/2", PermutativeCategory::discrete_cyclic(2)),
        ("B(Z/3)", PermutativeCategory::delooped_cyclic(3)),
        ("saturating {0,1}", PermutativeCategory::saturating_pair()),
    ] {
        out.push((name.into(), multikat::document::permutative_document(&p)));
    }
    out
}

fn check_lemmas(path: Option<&Path>, all: bool, options: &Options) -> Result<(), Failure> {
    let inputs = if all {
        all_builtins()
    } else {
        let path = path.expect("clap requires a path");
        vec![(path.display().to_string(), read_document(path)?)]
    };
    let mut rows = Vec::new();
    for (name, doc) in &inputs {
        let m = build(doc, options)?;
        rows.extend(lemmas::check_all(name, &m, options.levels, options.budget));
    }
    rows.push(lemmas::gstar_row(3));
    let width = rows.iter().map(|r| r.input.len()).max().unwrap_or(0);
    for r in &rows {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        println!("{status}  {:<width$}  {:<20}  {}", r.input, r.lemma, r.detail);
    }
    if rows.iter().any(|r| r.status == Status::Fail) {
        Err(Failure::Internal("some lemma checks failed".into()))
    } else if rows.iter().any(|r| r.status == Status::Skip) {
        Err(Failure::Resource("some lemma checks were skipped".into()))
    } else {
        Ok(())
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Validate { path, options } => validate(path, options),
        Command::Ktheory { path, options } => ktheory(path, options),
        Command::CheckLemmas {
            path,
            all_builtins,
            options,
        } => check_lemmas(path.as_deref(), *all_builtins, options),
    }
}

fn main() -> ExitCode {
    match run(&Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Invalid(msg) | Failure::Resource(msg) | Failure::Internal(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests;
