use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use clap::Parser;
use multikat::category::FiniteCategory;
use multikat::document::{permutative_document, InputDocument};
use multikat::gamma::{k_theory, KTheoryOptions};
use multikat::multicat::{build_e, build_terminal, PermutativeCategory};

use super::*;

/// Parsing reads the environment, which one test modifies.
static ENV: Mutex<()> = Mutex::new(());

fn parse(args: &[&str]) -> Cli {
    let _guard = ENV.lock().unwrap_or_else(|e| e.into_inner());
    Cli::try_parse_from(std::iter::once("multikat").chain(args.iter().copied())).unwrap()
}

fn exec(args: &[&str]) -> Result<(), Failure> {
    run(&parse(args))
}

fn code(result: Result<(), Failure>) -> u8 {
    result.err().map_or(0, |f| f.code())
}

fn message(result: Result<(), Failure>) -> String {
    match result {
        Ok(()) => String::new(),
        Err(Failure::Invalid(m) | Failure::Resource(m) | Failure::Internal(m)) => m,
    }
}

fn manifest(parts: &[&str]) -> PathBuf {
    parts.iter().fold(PathBuf::from(env!("CARGO_MANIFEST_DIR")), |p, s| p.join(s))
}

fn fixture(name: &str) -> String {
    manifest(&["fixtures", name]).to_string_lossy().into_owned()
}

fn path(p: &Path) -> String {
    p.to_string_lossy().into_owned()
}

const FIXTURES: [&str; 4] = ["e", "discrete_z2", "delooped_z3", "saturating"];

#[test]
fn reports_match_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in FIXTURES {
        let out = dir.path().join(format!("{name}.json"));
        exec(&["ktheory", &fixture(&format!("{name}.json")), "--out", &path(&out)]).ok().unwrap();
        let golden = std::fs::read(manifest(&["golden", &format!("{name}.report.json")])).unwrap();
        assert!(std::fs::read(&out).unwrap() == golden, "{name} differs from its golden report");
    }
}

#[cfg(unix)]
#[test]
fn reports_are_world_readable() {
    use std::os::unix::fs::PermissionsExt;
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    exec(&["ktheory", &fixture("e.json"), "--out", &path(&out)]).ok().unwrap();
    assert_eq!(std::fs::metadata(&out).unwrap().permissions().mode() & 0o777, 0o644);
}

#[test]
fn fixtures_are_canonical_documents() {
    let expected = [
        ("e.json", InputDocument::builtin("E", None)),
        ("discrete_z2.json", permutative_document(&PermutativeCategory::discrete_cyclic(2))),
        ("delooped_z3.json", permutative_document(&PermutativeCategory::delooped_cyclic(3))),
        ("saturating.json", permutative_document(&PermutativeCategory::saturating_pair())),
    ];
    for (name, doc) in expected {
        assert_eq!(std::fs::read_to_string(fixture(name)).unwrap(), doc.to_canonical_json(), "{name}");
    }
}

#[test]
fn cache_hits_are_identical_and_faster() {
    let dir = tempfile::tempdir().unwrap();
    let cache = FsCache::open(dir.path()).unwrap();
    let m = multikat::multicat::from_permutative(&PermutativeCategory::delooped_cyclic(3), 4).unwrap();
    let options = KTheoryOptions {
        cache: Some(&cache),
        ..KTheoryOptions::default()
    };
    let start = Instant::now();
    let cold = k_theory(&m, 3, options).unwrap();
    let cold_time = start.elapsed();
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let start = Instant::now();
    let warm = k_theory(&m, 3, options).unwrap();
    let warm_time = start.elapsed();
    for n in 0..=3 {
        assert_eq!(warm.level(n).functors(), cold.level(n).functors());
        assert_eq!(warm.level(n).arrow_count(), cold.level(n).arrow_count());
    }
    assert!(warm_time < cold_time, "cached run took {warm_time:?}, uncached {cold_time:?}");
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let first = dir.path().join("first.json");
    let second = dir.path().join("second.json");
    let input = fixture("discrete_z2.json");
    exec(&["ktheory", &input, "--cache-dir", &path(&cache), "--out", &path(&first)]).ok().unwrap();
    for entry in std::fs::read_dir(&cache).unwrap() {
        std::fs::write(entry.unwrap().path(), b"{ not json").unwrap();
    }
    exec(&["ktheory", &input, "--cache-dir", &path(&cache), "--out", &path(&second)]).ok().unwrap();
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());
}

#[test]
fn unusable_cache_directory_disables_caching() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain");
    std::fs::write(&file, b"").unwrap();
    let cache = file.join("cache");
    assert!(FsCache::open(&cache).is_none());
    let out = dir.path().join("r.json");
    exec(&["ktheory", &fixture("e.json"), "--cache-dir", &path(&cache), "--out", &path(&out)]).ok().unwrap();
    let golden = std::fs::read(manifest(&["golden", "e.report.json"])).unwrap();
    assert_eq!(std::fs::read(&out).unwrap(), golden);
}

#[test]
fn environment_supplies_defaults() {
    let _guard = ENV.lock().unwrap_or_else(|e| e.into_inner());
    std::env::set_var("MULTIKAT_LEVELS", "2");
    std::env::set_var("MULTIKAT_JOBS", "3");
    let from_env = Cli::try_parse_from(["multikat", "ktheory", "x.json"]);
    let flag_wins = Cli::try_parse_from(["multikat", "ktheory", "x.json", "--levels", "1"]);
    std::env::remove_var("MULTIKAT_LEVELS");
    std::env::remove_var("MULTIKAT_JOBS");
    let Command::Ktheory { options, .. } = from_env.unwrap().command else { panic!() };
    assert_eq!((options.levels, options.jobs), (2, 3));
    let Command::Ktheory { options, .. } = flag_wins.unwrap().command else { panic!() };
    assert_eq!(options.levels, 1);
}

#[test]
fn unreadable_and_malformed_inputs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let missing = path(&dir.path().join("missing.json"));
    assert!(message(exec(&["ktheory", &missing])).starts_with("cannot read"));
    assert_eq!(code(exec(&["ktheory", &missing])), 1);

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "[1, 2").unwrap();
    assert!(message(exec(&["validate", &path(&garbage)])).starts_with("cannot parse"));

    let version = dir.path().join("version.json");
    std::fs::write(&version, r#"{"schema_version": 9, "type": "builtin", "name": "E"}"#).unwrap();
    assert_eq!(code(exec(&["validate", &path(&version)])), 1);
}

#[test]
fn unclosed_tensor_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("discrete_z2.json")).unwrap();
    let broken = text.replacen(r#""1,1": "0""#, r#""1,1": "2""#, 1);
    assert_ne!(broken, text);
    let file = dir.path().join("unclosed.json");
    std::fs::write(&file, broken).unwrap();
    for command in ["validate", "ktheory"] {
        let m = message(exec(&[command, &path(&file)]));
        assert!(m.contains("is not among the objects"), "{command}: {m}");
    }
    assert_eq!(code(exec(&["ktheory", &path(&file)])), 1);
}

#[test]
fn levels_beyond_the_cap_exit_one() {
    assert_eq!(code(exec(&["ktheory", &fixture("e.json"), "--levels", "4"])), 1);
    assert_eq!(code(exec(&["ktheory", &fixture("e.json"), "--arity-cap", "2", "--levels", "2"])), 1);
}

#[test]
fn exhausted_budget_exits_two_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let r = exec(&["ktheory", &fixture("delooped_z3.json"), "--budget", "10", "--out", &path(&out)]);
    assert_eq!(code(r), 2);
    assert!(!out.exists());
}

#[test]
fn validate_accepts_builtins() {
    assert_eq!(code(exec(&["validate", &fixture("e.json"), "--arity-cap", "3"])), 0);
}

#[test]
fn lemma_rows_on_e_and_terminal() {
    for (name, m) in [("E", build_e(4)), ("terminal", build_terminal(4))] {
        let rows = lemmas::check_all(name, &m, 3, multikat::enumeration::DEFAULT_BUDGET);
        assert_eq!(rows.len(), 6);
        for r in &rows {
            assert_eq!(r.status, Status::Pass, "{name} {}: {}", r.lemma, r.detail);
        }
        if name == "E" {
            assert_eq!(rows[0].detail, "2/2 objects, 2/2 arrows");
        }
    }
    assert_eq!(lemmas::gstar_row(2).status, Status::Pass);
}

#[test]
fn starved_lemma_rows_are_skipped() {
    let m = multikat::multicat::from_permutative(&PermutativeCategory::delooped_cyclic(3), 4).unwrap();
    let rows = lemmas::check_all("B(Z/3)", &m, 3, 5);
    assert!(rows.iter().any(|r| r.status == Status::Skip));
    assert!(rows.iter().all(|r| r.status != Status::Fail));
}
