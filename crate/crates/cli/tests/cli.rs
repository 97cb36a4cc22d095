use std::path::Path;
use std::process::{Command, Output};

fn eigenprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eigenprod")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn zeta_values() {
    let o = eigenprod(&["zeta", "5", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1/30");
    let o = eigenprod(&["zeta", "8", "2"]);
    assert_eq!(stdout(&o).trim(), "1/12");
    let o = eigenprod(&["--format", "json", "zeta", "13", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "1/6");
    assert_eq!(eigenprod(&["zeta", "9", "2"]).status.code(), Some(1));
}

#[test]
fn field_invariants() {
    let o = eigenprod(&["--format", "json", "field", "12"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["narrow_class_number"], 2);
    assert_eq!(v["class_number"], 1);
    assert_eq!(v["fundamental_unit_norm"], 1);
    let o = eigenprod(&["field", "8"]);
    assert!(stdout(&o).contains("splitting of 2: Ramified"));
}

#[test]
fn scan_output() {
    let o = eigenprod(&["--format", "csv", "scan", "100", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "D,k1,k2\n5,2,2\n");
}

#[test]
fn demo_transcript() {
    let o = eigenprod(&["demo-sqrt5", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("1/(2 c0(E2)) = 60"));
    assert!(text.lines().any(|l| l.starts_with("nu = 0 + 0ω") && l.contains("= 1/240")));
    assert!(text.trim_end().ends_with("all coefficients verified: E4 = 60*E2^2"));
}

#[test]
fn verify_all_writes_reports_and_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = eigenprod(&["--format", "csv", "--out-dir", out, "verify", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for f in [
        "table1.csv",
        "table2.csv",
        "table3.csv",
        "s3-unequal.json",
        "s3-equal.json",
        "s4-inert.json",
        "s4-noninert.json",
        "s5.json",
    ] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let golden = |name: &str| std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/golden").join(name)).unwrap();
    for t in ["table1.csv", "table2.csv", "table3.csv"] {
        assert_eq!(std::fs::read_to_string(dir.path().join(t)).unwrap(), golden(t), "{t}");
    }
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("s4-noninert.json")).unwrap()).unwrap();
    assert_eq!(report["verdict"], "no identity exists");
    assert!(report["fixtures"].as_array().unwrap().iter().any(|f| f["id"] == "ishikawa-weight2-d8"));
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert!(stderr.contains("table2: matches the golden table"));
}

#[test]
fn outputs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = eigenprod(&["--format", "json", "--out-dir", d.path().to_str().unwrap(), "verify", "all"]);
        assert_eq!(o.status.code(), Some(0));
    }
    let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 8);
    for n in names {
        assert_eq!(
            std::fs::read(a.path().join(&n)).unwrap(),
            std::fs::read(b.path().join(&n)).unwrap(),
            "{n:?}"
        );
    }
    assert_eq!(
        stdout(&eigenprod(&["--format", "markdown", "verify", "s5"])),
        stdout(&eigenprod(&["--format", "markdown", "verify", "s5"]))
    );
}

#[test]
fn low_precision_same_verdict() {
    let o = eigenprod(&["--precision", "32", "--format", "json", "verify", "s4-inert"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "no identity exists");
    let o = eigenprod(&["--format", "csv", "verify", "s4-inert"]);
    let csv = stdout(&o);
    assert!(csv.starts_with("# table2\nk1,max_k2,max_D\n2,38,3517\n"));
}

#[test]
fn fixture_problems_exit_four() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "version = 1\n[ishikawa]\n").unwrap();
    let o = eigenprod(&["--fixtures", bad.to_str().unwrap(), "verify", "s5"]);
    assert_eq!(o.status.code(), Some(4));
    let missing = dir.path().join("missing.toml");
    let o = eigenprod(&["--fixtures", missing.to_str().unwrap(), "verify", "s5"]);
    assert_eq!(o.status.code(), Some(4));

    let bundled = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/fixtures.toml")).unwrap();
    let partial = dir.path().join("partial.toml");
    std::fs::write(&partial, bundled.replace("discriminants = [8, 13]", "discriminants = [8]")).unwrap();
    let o = eigenprod(&["--fixtures", partial.to_str().unwrap(), "verify", "s4-inert"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(eigenprod(&["bogus"]).status.code(), Some(1));
    assert_eq!(eigenprod(&["verify", "s9"]).status.code(), Some(1));
    assert_eq!(eigenprod(&["--precision", "16", "verify", "s5"]).status.code(), Some(1));
    assert_eq!(eigenprod(&["--d-limit", "10", "verify", "s3-equal"]).status.code(), Some(1));
    assert_eq!(eigenprod(&["--help"]).status.code(), Some(0));
}
