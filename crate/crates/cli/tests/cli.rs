use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const A5_RAD2: &str = include_str!("../../../algebras/a5rad2.alg");
const GOLDEN_MODULE_DOT: &str = include_str!("../../core/tests/golden/ar_quiver_module.dot");

fn nakcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nakcert")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn verify(algebra: &Path, report: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["verify-paper", "--algebra", algebra.to_str().unwrap(), "--report", report.to_str().unwrap()];
    args.extend_from_slice(extra);
    nakcert(&args)
}

#[test]
fn stats_of_builtin_algebra() {
    let o = nakcert(&["stats"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("dim: 9\n") && out.contains("gldim: 4\n") && out.contains("indecomposables: 9\n"), "{out}");
    assert!(out.contains("projectives: ⟨1,2⟩ ⟨2,3⟩ ⟨3,4⟩ ⟨4,5⟩ ⟨5,5⟩"), "{out}");
}

#[test]
fn missing_file_is_an_input_error() {
    let o = nakcert(&["stats", "--algebra", "/nonexistent/a.alg"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot read"));
}

#[test]
fn verify_is_deterministic_and_window_independent() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("a.alg");
    fs::write(&alg, A5_RAD2).unwrap();
    let r1 = dir.path().join("r1.json");
    let r2 = dir.path().join("r2.json");
    let r3 = dir.path().join("r3.json");
    let o = verify(&alg, &r1, &["--dot-dir", dir.path().join("dot").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: counterexample certified"));
    assert_eq!(verify(&alg, &r2, &[]).status.code(), Some(0));
    assert_eq!(verify(&alg, &r3, &["--window", "-8:8"]).status.code(), Some(0));
    let (a, b, c) = (fs::read(&r1).unwrap(), fs::read(&r2).unwrap(), fs::read(&r3).unwrap());
    assert_eq!(a, b);
    assert_eq!(a, c);
    let json: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(json["verdict"], "counterexample certified");
    assert_eq!(json["checks"].as_array().unwrap().len(), 11);
    assert!(json["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
    assert_eq!(json["algebra"]["dim"], 9);
    assert_eq!(json["algebra"]["gldim"], 4);
    assert_eq!(fs::read_to_string(dir.path().join("dot/ar_quiver_module.dot")).unwrap(), GOLDEN_MODULE_DOT);
    assert!(fs::read_to_string(dir.path().join("dot/ar_quiver_derived.dot")).unwrap().contains("bold"));
}

#[test]
fn tampered_algebra_is_not_certified() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("t.alg");
    let text: String = A5_RAD2.lines().filter(|l| !l.contains("a3 a4")).map(|l| format!("{l}\n")).collect();
    fs::write(&alg, text).unwrap();
    let report = dir.path().join("r.json");
    let o = verify(&alg, &report, &[]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let status = |id: &str| json["checks"].as_array().unwrap().iter().find(|c| c["id"] == id).unwrap()["status"].clone();
    assert_eq!(status("unique-2ct"), "fail");
    assert_eq!(status("algebra-stats"), "fail");
    assert_eq!(json["algebra"]["dim"], 10);
}

#[test]
fn malformed_algebra_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("bad.alg");
    fs::write(&alg, "vertices: 1 2\narrow a: 1 -> 7\n").unwrap();
    let report = dir.path().join("r.json");
    let o = verify(&alg, &report, &[]);
    assert_eq!(o.status.code(), Some(2));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert!(json["algebra"]["error"].is_string());
    assert!(json["checks"].as_array().unwrap().iter().all(|c| c["status"] == "skipped"));
    assert_eq!(nakcert(&["stats", "--algebra", alg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn window_smaller_than_global_dimension_is_rejected() {
    for cmd in ["verify-paper", "derived-registry"] {
        let o = nakcert(&[cmd, "--window", "0:0"]);
        assert_eq!(o.status.code(), Some(2), "{cmd}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("too small"));
    }
    assert_eq!(nakcert(&["stats", "--window", "3"]).status.code(), Some(2));
}

#[test]
fn module_ar_quiver_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = nakcert(&["ar-quiver", "--level", "module", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(dir.path().join("ar_quiver_module.dot")).unwrap(), GOLDEN_MODULE_DOT);
}

#[test]
fn derived_registry_json() {
    let o = nakcert(&["derived-registry"]);
    assert!(o.status.success());
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(json.is_object());
    assert!(json["arrows"].is_array());
}

#[test]
fn enumerate_and_ext_table() {
    let out = stdout(&nakcert(&["enumerate-ct"]));
    assert!(out.starts_with("1 2-cluster-tilting subcategories\n"), "{out}");
    assert!(out.contains("add(⟨1,1⟩ ⊕ ⟨1,2⟩ ⊕ ⟨2,3⟩ ⊕ ⟨3,3⟩ ⊕ ⟨3,4⟩ ⊕ ⟨4,5⟩ ⊕ ⟨5,5⟩)"));
    let table = stdout(&nakcert(&["ext-table"]));
    // header plus 81 pairs
    assert_eq!(table.lines().count(), 82);
    let row = table.lines().find(|l| l.starts_with("⟨1,1⟩  ⟨5,5⟩")).unwrap();
    let values: Vec<&str> = row.split_whitespace().skip(2).collect();
    assert_eq!(values, ["0", "0", "0", "0", "1"]);
}
