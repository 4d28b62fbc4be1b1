//! End-to-end checks of the command line: artifact layout, byte-identical
//! reruns, config-file precedence, and exit codes.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_slowdiff"))
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

#[test]
fn evaluate_writes_expected_artifacts_and_center_value() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let status = bin()
        .args(["evaluate", "--solution", "barenblatt", "--p", "3", "--n", "1"])
        .args(["--C", "1", "--t", "1", "--grid", "512"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let csv = read(&out.join("evaluate.csv"));
    assert!(csv.starts_with("x,value\n"));
    // node exactly at x = 0 carries C^{(p-1)/(p-2)} = 1
    let center = csv
        .lines()
        .find(|l| l.starts_with("0.0000000000000000e0,"))
        .expect("row at x = 0");
    assert_eq!(center.split(',').nth(1).unwrap(), "1.0000000000000000e0");
    let summary = read(&out.join("evaluate_summary.json"));
    assert!(summary.contains("\"center_value\": 1.0"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("a");
    let out2 = dir.path().join("b");
    for out in [&out1, &out2] {
        let status = bin()
            .args(["harnack", "--input", "barenblatt", "--samples", "50", "--seed", "9"])
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(read(&out1.join("harnack.csv")), read(&out2.join("harnack.csv")));
    assert_eq!(
        read(&out1.join("harnack_summary.json")),
        read(&out2.join("harnack_summary.json"))
    );
}

#[test]
fn classify_separable_reports_class_m() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let status = bin()
        .args(["classify", "--input", "separable", "--p", "3", "--L", "2"])
        .args(["--t0", "0.5", "--t-end", "1.5", "--grid", "256"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let summary = read(&out.join("classify_summary.json"));
    assert!(summary.contains("\"label\": \"M\""), "{summary}");
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "p = 4.0\nL = 1.0\ngrid = 128\noracle = true\n").unwrap();
    let out = dir.path().join("run");
    let status = bin()
        .arg("--config")
        .arg(&cfg)
        .arg("eigen")
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let summary = read(&out.join("eigen_summary.json"));
    assert!(summary.contains("\"exponent\": 4.0"), "{summary}");
    assert!(summary.contains("\"rel_err\""));

    // the flag wins over the file
    let out2 = dir.path().join("run2");
    let status = bin()
        .arg("--config")
        .arg(&cfg)
        .args(["eigen", "--p", "3"])
        .arg("--out")
        .arg(&out2)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(read(&out2.join("eigen_summary.json")).contains("\"exponent\": 3.0"));
}

#[test]
fn invalid_exponent_exits_with_configuration_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let status = bin()
        .args(["evaluate", "--solution", "barenblatt", "--p", "1.5"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    let err = read(&out.join("error.json"));
    assert!(err.contains("\"kind\": \"parameter\""), "{err}");
}

#[test]
fn borderline_exponent_exits_inconclusive() {
    // q = 0.75 (p - 2) puts the shell ratio between the verdict margins
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let status = bin()
        .args(["classify", "--input", "separable", "--p", "3", "--L", "2"])
        .args(["--t0", "0.5", "--t-end", "1.5", "--q", "0.75"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(4));
    let err = read(&out.join("error.json"));
    assert!(err.contains("\"kind\": \"inconclusive\""), "{err}");
    // the shells artifact is still written for inspection
    assert!(out.join("classify.csv").exists());
}

#[test]
fn json_format_emits_parseable_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let status = bin()
        .args(["infconv", "--format", "json"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let body = read(&out.join("infconv.json"));
    let parsed: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 3);
}

#[test]
fn sharp_panel_reproduces_the_exponent_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let status = bin()
        .args(["classify", "--input", "barenblatt", "--sharp", "--p", "3", "--n", "1"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let summary = read(&out.join("classify_summary.json"));
    for (q, verdict) in [
        ("4.5", "Finite"),
        ("5.0", "Divergent"),
        ("1.0", "Finite"),
        ("2.3", "Finite"),
        ("2.5", "Divergent"),
    ] {
        assert!(
            summary.contains(&format!("\"q\": {q}")) || summary.contains(&format!("\"q\": {}", q.trim_end_matches(".0"))),
            "missing q = {q} in {summary}"
        );
        let _ = verdict;
    }
    assert_eq!(summary.matches("\"verdict\": \"Divergent\"").count(), 2, "{summary}");
    assert_eq!(summary.matches("\"verdict\": \"Finite\"").count(), 3, "{summary}");
}
