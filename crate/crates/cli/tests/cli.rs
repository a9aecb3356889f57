use std::path::Path;
use std::process::{Command, Output};

use eigencone::hilbert::LatticeTriple;
use eigencone::reptensor::{GeneratorReport, SaturationReport};
use eigencone::schubert::{ClassRecord, TableExport};
use eigencone::triangles::InequalityRecord;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eigencone"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn tables_write_four_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["tables", "--out", out]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for f in ["p1_chart.md", "p1_table.md", "p2_chart.md", "p2_table.md"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let o = run(&["tables", "--format", "json", "--out", out]);
    assert_eq!(code(&o), 0);
    let chart: Vec<ClassRecord> = serde_json::from_str(&read(dir.path(), "p1_chart.json")).unwrap();
    assert_eq!(chart.len(), 8);
    let table: TableExport = serde_json::from_str(&read(dir.path(), "p2_table.json")).unwrap();
    assert_eq!(table.classes.len(), 24);
    assert_eq!(table.parabolic, 2);
}

#[test]
fn triality_images_of_the_first_table() {
    for p in ["3", "4"] {
        let o = run(&["tables", "--parabolic", p]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert!(String::from_utf8_lossy(&o.stdout).contains(&format!("G/P{p}")));
    }
}

#[test]
fn corrupted_fixture_is_located() {
    let dir = tempfile::tempdir().unwrap();
    let original = eigencone::fixtures::Fixtures::embedded()
        .get("p1_table.txt")
        .to_string();
    let corrupted = original.replacen("2b_4", "3b_4", 1);
    assert_ne!(corrupted, original);
    std::fs::write(dir.path().join("p1_table.txt"), corrupted).unwrap();
    let o = run(&["tables", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let err = stderr(&o);
    assert!(err.contains("diff: P1") && err.contains("b_2"), "{err}");
    assert!(err.contains("checksum"), "{err}");
}

#[test]
fn inequalities_as_json_and_markdown() {
    let o = run(&["inequalities", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let records: Vec<InequalityRecord> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(records.len(), 306);
    assert!(stderr(&o).contains("36 + 186 + 36 + 36 + 12 (chamber) = 306"));
    let o = run(&["inequalities"]);
    let md = String::from_utf8(o.stdout).unwrap();
    for h in [
        "ETI(1)", "WTI(1)", "ETI(2)", "WTI(2)", "ETI(3)", "WTI(3)", "ETI(4)", "WTI(4)",
    ] {
        assert!(md.contains(&format!("## {h}")), "{h}");
    }
    let eti1: Vec<&str> = md
        .split("## ETI(1)")
        .nth(1)
        .unwrap()
        .split("##")
        .next()
        .unwrap()
        .lines()
        .filter(|l| l.starts_with("- "))
        .collect();
    let sizes: Vec<&str> = eti1.iter().map(|l| l.rsplit(' ').next().unwrap()).collect();
    assert_eq!(sizes, ["(3)", "(6)", "(6)"]);
}

#[test]
fn cone_reports_irredundancy() {
    let o = run(&["cone", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rays"].as_array().unwrap().len(), 81);
    assert_eq!(v["irredundancy"]["irredundant"], true);
}

#[test]
fn hilbert_basis_output() {
    let o = run(&["hilbert", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let elems: Vec<LatticeTriple> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(elems.len(), 82);
    let md = String::from_utf8(run(&["hilbert"]).stdout).unwrap();
    assert!(md.contains("82 elements, 10 orbits"));
}

#[test]
fn invariants_with_sampling() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&[
        "invariants",
        "--samples",
        "40",
        "--seed",
        "3",
        "--format",
        "json",
        "--out",
        out,
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let g: GeneratorReport = serde_json::from_str(&read(dir.path(), "invariants.json")).unwrap();
    assert_eq!(g.rows.len(), 10);
    assert!(g.all_positive());
    let s: SaturationReport = serde_json::from_str(&read(dir.path(), "saturation.json")).unwrap();
    assert_eq!((s.count, s.seed), (40, 3));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let o = run(&["verify", "--samples", "0"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(String::from_utf8_lossy(&o.stdout).contains("Overall: PASS"));
    let a = run(&[
        "verify",
        "--samples",
        "60",
        "--seed",
        "9",
        "--format",
        "json",
    ]);
    let b = run(&[
        "verify",
        "--samples",
        "60",
        "--seed",
        "9",
        "--format",
        "json",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["cone"]["facets"], 306);
    assert_eq!(v["hilbert"]["elements"], 82);
    assert_eq!(v["saturation"]["seed"], 9);
}

#[test]
fn verify_names_the_failing_stage() {
    let dir = tempfile::tempdir().unwrap();
    let original = eigencone::fixtures::Fixtures::embedded()
        .get("h_prime.txt")
        .to_string();
    std::fs::write(
        dir.path().join("h_prime.txt"),
        original.replace("w2, w2, w2", "w2, w2, 0\nw1, w1, w1"),
    )
    .unwrap();
    let o = run(&[
        "verify",
        "--samples",
        "0",
        "--fixtures",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
    assert!(
        stderr(&o).contains("stage hilbert failed"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn usage_errors_and_thread_variable() {
    assert_eq!(code(&run(&["tables", "--parabolic", "7"])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    let o = Command::new(env!("CARGO_BIN_EXE_eigencone"))
        .args(["inequalities"])
        .env("EIGENCONE_THREADS", "x")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    let o = Command::new(env!("CARGO_BIN_EXE_eigencone"))
        .args(["inequalities"])
        .env("EIGENCONE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}
