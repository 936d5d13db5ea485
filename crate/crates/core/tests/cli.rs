use std::path::Path;
use std::process::{Command, Output};

use becurv::cli;

fn becurv(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_becurv"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generated_hypercube_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let gen = becurv(&["gen", "--family", "hypercube", "--n", "3", "--out", "q3.el"], dir.path());
    assert_eq!(gen.status.code(), Some(0));
    let v = becurv(&["verify", "--graph", "q3.el", "--m", "inf"], dir.path());
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn k2_curvature_json() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("k2.el"), "a b\n").unwrap();
    let o = becurv(&["curvature", "--graph", "k2.el", "--m", "inf", "--json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let row = &v["curvature"][0];
    assert_eq!(row["m"], "inf");
    assert!((row["kappa"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(row["argmin"], 0);
    assert_eq!(row["argmin_label"], "a");
}

#[test]
fn missing_graph_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = becurv(&["verify", "--graph", "missing.el", "--m", "inf"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.el"));
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("loop.el"), "a a\n").unwrap();
    std::fs::write(dir.path().join("split.el"), "a b\nc d\n").unwrap();
    std::fs::write(dir.path().join("ok.el"), "a b\n").unwrap();
    for args in [
        &["verify", "--graph", "loop.el", "--m", "inf"][..],
        &["verify", "--graph", "split.el", "--m", "inf"],
        &["verify", "--graph", "ok.el", "--m", "1"],
        &["verify", "--graph", "ok.el", "--m", "two"],
        &["verify", "--graph", "ok.el", "--m", "inf", "--bogus"],
        &["verify", "--graph", "ok.el", "--m", "inf", "--json", "--csv"],
        &["gen", "--family", "cycle", "--n", "2"],
    ] {
        assert_eq!(becurv(args, dir.path()).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn report_has_documented_shape() {
    let dir = tempfile::tempdir().unwrap();
    becurv(&["gen", "--family", "bridge", "--n", "4", "--out", "b.el"], dir.path());
    let o = becurv(
        &["verify", "--graph", "b.el", "--m", "2,INF,5", "--alpha", "3", "--seed", "9", "--json"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["graph", "curvature", "spectrum", "checks", "info", "seed"] {
        assert!(keys.contains(&k), "{k}");
    }
    assert_eq!(v["seed"], 9);
    assert_eq!(v["graph"]["n"], 8);
    let ms: Vec<&serde_json::Value> = v["curvature"].as_array().unwrap().iter().map(|c| &c["m"]).collect();
    assert_eq!(ms, [&serde_json::json!(2.0), &serde_json::json!("inf"), &serde_json::json!(5.0)]);
    let check = &v["checks"][0];
    for k in ["name", "passed", "worst_slack", "worst_vertex", "params"] {
        assert!(check.get(k).is_some(), "{k}");
    }
}

#[test]
fn csv_and_text_outputs() {
    let dir = tempfile::tempdir().unwrap();
    becurv(&["gen", "--family", "product", "--n", "3", "--n2", "4", "--out", "t.el"], dir.path());
    let csv = becurv(&["verify", "--graph", "t.el", "--m", "2", "--csv"], dir.path());
    assert_eq!(csv.status.code(), Some(0));
    let text = stdout(&csv);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("name,passed,worst_slack"));
    assert!(lines.all(|l| l.split(',').count() == 9));
    let spectrum = becurv(&["spectrum", "--graph", "t.el"], dir.path());
    assert_eq!(stdout(&spectrum).lines().count(), 13);
}

#[test]
fn same_run_same_bytes_in_process() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c7.el");
    let path = path.to_str().unwrap();
    let gen_args = ["becurv", "gen", "--family", "cycle", "--n", "7", "--out", path];
    assert_eq!(cli::run(gen_args, &mut Vec::new(), &mut Vec::new()), 0);
    let run = |threads: &str| {
        let mut out = Vec::new();
        let args = ["becurv", "verify", "--graph", path, "--m", "2,inf", "--json", "--threads", threads];
        assert_eq!(cli::run(args, &mut out, &mut Vec::new()), 0);
        out
    };
    let first = run("1");
    assert_eq!(first, run("1"));
    assert_eq!(first, run("4"));
}
