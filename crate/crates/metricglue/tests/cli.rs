//! End-to-end tests of the binary: exit codes, tolerance resolution, text
//! truncation, and the round-trip guarantee on emitted JSON.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use metricglue::format::{MorphismDoc, SpaceDoc};
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_metricglue"));
    c.env_remove("METRICGLUE_TOL");
    c
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, content).expect("write fixture");
    p
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

const GOOD: &str = r#"{"points":["a","b"],"dist":[[0,1.0],[1.0,0]]}"#;
const ASYM: &str = r#"{"points":["a","b"],"dist":[[0,1.0],[2.0,0]]}"#;

#[test]
fn exit_codes_separate_check_failures_from_input_errors() {
    let dir = TempDir::new().unwrap();
    let good = write(dir.path(), "good.json", GOOD);
    let bad = write(dir.path(), "bad.json", ASYM);
    let broken = write(dir.path(), "broken.json", r#"{"points": ["a"]"#);

    assert_eq!(code(&bin().arg("validate").arg(&good).output().unwrap()), 0);
    assert_eq!(code(&bin().arg("validate").arg(&bad).output().unwrap()), 1);
    assert_eq!(
        code(&bin().arg("validate").arg(&broken).output().unwrap()),
        2
    );
    assert_eq!(
        code(
            &bin()
                .arg("validate")
                .arg(dir.path().join("missing.json"))
                .output()
                .unwrap()
        ),
        2
    );
    assert_eq!(
        code(&bin().args(["scenario", "no-such"]).output().unwrap()),
        2
    );
    assert_eq!(
        code(&bin().args(["proptest", "no-such"]).output().unwrap()),
        2
    );
    assert_eq!(code(&bin().arg("frobnicate").output().unwrap()), 2);
}

#[test]
fn tolerance_comes_from_flag_then_env_then_default() {
    let dir = TempDir::new().unwrap();
    let near = write(
        dir.path(),
        "near.json",
        r#"{"points":["a","b"],"dist":[[0,1.0],[1.000001,0]]}"#,
    );

    // Default 1e-9 flags the 1e-6 asymmetry.
    assert_eq!(code(&bin().arg("validate").arg(&near).output().unwrap()), 1);
    // A looser environment tolerance accepts it.
    let mut with_env = bin();
    with_env.env("METRICGLUE_TOL", "1e-3");
    assert_eq!(
        code(&with_env.arg("validate").arg(&near).output().unwrap()),
        0
    );
    // The flag beats the environment.
    let mut flag_wins = bin();
    flag_wins.env("METRICGLUE_TOL", "1e-3");
    assert_eq!(
        code(
            &flag_wins
                .args(["--tol", "1e-9", "validate"])
                .arg(&near)
                .output()
                .unwrap()
        ),
        1
    );
    // A malformed environment value is an input error.
    let mut bad_env = bin();
    bad_env.env("METRICGLUE_TOL", "wat");
    assert_eq!(
        code(&bad_env.arg("validate").arg(&near).output().unwrap()),
        2
    );
}

fn line_space_json(n: usize) -> String {
    let points: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let dist: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| (i as f64 - j as f64).abs()).collect())
        .collect();
    serde_json::json!({"points": points, "dist": dist}).to_string()
}

#[test]
fn text_matrices_truncate_but_json_never() {
    let dir = TempDir::new().unwrap();
    let big = write(dir.path(), "big.json", &line_space_json(25));

    let text = bin()
        .args(["pathmetric", "--eps", "100.0"])
        .arg(&big)
        .output()
        .unwrap();
    assert_eq!(code(&text), 0);
    let shown = stdout(&text);
    assert!(shown.contains("matrix truncated to 20x20; full size 25x25"));

    let json = bin()
        .args(["--format", "json", "pathmetric", "--eps", "100.0"])
        .arg(&big)
        .output()
        .unwrap();
    assert_eq!(code(&json), 0);
    let doc: SpaceDoc = serde_json::from_str(&stdout(&json)).expect("space JSON");
    assert_eq!(doc.points.len(), 25);
    assert_eq!(doc.dist.len(), 25);
    assert!(doc.dist.iter().all(|row| row.len() == 25));
}

#[test]
fn emitted_space_json_reparses_to_an_equal_document() {
    let dir = TempDir::new().unwrap();
    // An awkward double and infinite entries exercise the bit-exact path.
    let a = write(
        dir.path(),
        "a.json",
        r#"{"points":["x","y","z"],
            "dist":[[0,0.30000000000000004,"inf"],
                    [0.30000000000000004,0,"inf"],
                    ["inf","inf",0]]}"#,
    );
    let b = write(dir.path(), "b.json", r#"{"points":["u"],"dist":[[0]]}"#);

    let out = bin()
        .args(["--format", "json", "tensor"])
        .arg(&a)
        .arg(&b)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let doc: SpaceDoc = serde_json::from_str(&stdout(&out)).expect("space JSON");

    let x = metricglue::format::load_metric_space(&a, 1e-9).unwrap();
    let y = metricglue::format::load_metric_space(&b, 1e-9).unwrap();
    let t = metricglue_core::space::tensor(&x, &y).unwrap();
    assert_eq!(doc, SpaceDoc::from_semi(t.as_semi()));

    // The emitted document is itself valid input.
    let echoed = write(dir.path(), "echo.json", &stdout(&out));
    assert_eq!(
        code(&bin().arg("validate").arg(&echoed).output().unwrap()),
        0
    );
}

#[test]
fn emitted_morphism_json_reparses_to_an_equal_document() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "two.json", GOOD);
    let glue = write(
        dir.path(),
        "glue.json",
        r#"{"hub": {"points": ["h"], "dist": [[0]]},
            "arms": [{"target": "two.json", "map": {"h": "a"}},
                     {"target": "two.json", "map": {"h": "b"}}]}"#,
    );
    let out = bin()
        .args(["--format", "json", "pushout"])
        .arg(&glue)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();

    let hub_map: MorphismDoc = serde_json::from_value(v["hub_map"].clone()).expect("morphism JSON");
    assert_eq!(serde_json::to_value(&hub_map).unwrap(), v["hub_map"]);
    // Inline spaces make the document self-contained.
    let pm = hub_map.to_point_map(Path::new("."), 1e-9).unwrap();
    assert!(pm.is_contraction(1e-9));

    let space: SpaceDoc = serde_json::from_value(v["space"].clone()).expect("space JSON");
    assert_eq!(serde_json::to_value(&space).unwrap(), v["space"]);
}

#[test]
fn quotient_merges_the_partition_blocks() {
    let dir = TempDir::new().unwrap();
    let tri = write(
        dir.path(),
        "tri.json",
        r#"{"points":["a","b","c"],"dist":[[0,1.0,2.0],[1.0,0,1.5],[2.0,1.5,0]]}"#,
    );
    let part = write(dir.path(), "part.json", r#"{"blocks": [["a","b"],["c"]]}"#);
    let out = bin()
        .args(["--format", "json", "quotient"])
        .arg(&tri)
        .arg(&part)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let doc: SpaceDoc = serde_json::from_value(v["space"].clone()).unwrap();
    assert_eq!(doc.points.len(), 2);
    assert_eq!(v["map"]["a"], v["map"]["b"]);
}

#[test]
fn diagram_files_serve_both_colimit_and_classify() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "two.json", GOOD);
    let diag = write(
        dir.path(),
        "diag.json",
        r#"{"vertices": {"A": "two.json", "B": "two.json"},
            "edges": [{"id": "e1", "src": "A", "dst": "B",
                       "map": {"a": "a", "b": "b"}}]}"#,
    );
    let col = bin().arg("colimit").arg(&diag).output().unwrap();
    assert_eq!(code(&col), 0);
    assert!(stdout(&col).contains("graph diameter: 1"));

    let cls = bin().arg("classify").arg(&diag).output().unwrap();
    assert_eq!(code(&cls), 0);
    assert!(stdout(&cls).contains("tree: true"));
}

#[test]
fn curry_check_reports_the_correspondence() {
    let dir = TempDir::new().unwrap();
    let two = write(dir.path(), "two.json", GOOD);
    let out = bin()
        .arg("curry-check")
        .arg(&two)
        .arg(&two)
        .arg("--with")
        .arg(&two)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("PASS"));
}

#[test]
fn suites_print_their_seed() {
    let out = bin()
        .args(["proptest", "convexify", "--seed", "7"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("seed 7"));
}

#[test]
fn scenarios_accept_overridden_parameters() {
    let splice = bin()
        .args(["scenario", "splice", "--levels", "3"])
        .output()
        .unwrap();
    assert_eq!(code(&splice), 0);
    assert!(stdout(&splice).contains("1.875"));

    let nstr = bin()
        .args(["scenario", "nstr", "--eps", "0.5,0.25", "--step", "0.125"])
        .output()
        .unwrap();
    assert_eq!(code(&nstr), 0);
    assert!(stdout(&nstr).contains("1.25"));

    // Out-of-range parameters are input errors.
    let zero = bin()
        .args(["scenario", "splice", "--levels", "0"])
        .output()
        .unwrap();
    assert_eq!(code(&zero), 2);
}
