use std::process::{Command, Output};

fn gct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gct")).args(args).output().expect("binary runs")
}

fn gct_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gct"))
        .args(args)
        .env("GCT_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

/// Value column of the row whose first column is `kind`.
fn row_value(doc: &serde_json::Value, key: &str, kind: &str, column: &str) -> f64 {
    doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r[key] == kind)
        .unwrap_or_else(|| panic!("no row {kind}"))[column]
        .as_f64()
        .unwrap()
}

#[test]
fn spectrum_table_shape() {
    let o = gct(&["spectrum", "--p", "2", "--q", "3", "--field", "R", "--max-degree", "4", "--lambda", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m1,m2,lambda,eta,pole_order,ac_at_minus1,in_f1_image"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn spectrum_at_zero_is_one() {
    let o = gct(&["spectrum", "--p", "2", "--q", "2", "--field", "C", "--max-degree", "0", "--format", "json"]);
    assert!(o.status.success());
    let doc = json(&o);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert!((rows[0]["eta"].as_f64().unwrap() - 1.0).abs() < 1e-14);
    assert_eq!(doc["config"]["command"], "spectrum");
}

#[test]
fn transform_of_one() {
    let o = gct(&["transform", "--p", "2", "--q", "2", "--field", "R", "--lambda", "0", "--format", "json"]);
    assert!(o.status.success());
    let v = row_value(&json(&o), "method", "quad", "value");
    assert!((v - 1.0).abs() < 1e-12);

    // η_0(2) on Gr(1, R^3) is E[cos²] = 1/3
    let o = gct(&["transform", "--p", "1", "--q", "2", "--field", "R", "--lambda", "2", "--format", "json"]);
    let v = row_value(&json(&o), "method", "quad", "value");
    assert!((v - 1.0 / 3.0).abs() < 1e-12, "{v}");
}

#[test]
fn transform_routes_agree() {
    let o = gct(&[
        "transform", "--p", "2", "--q", "3", "--field", "C", "--f", "1 + c1*c2", "--lambda", "0.5", "--method",
        "quad,mc", "--samples", "50000", "--seed", "3", "--format", "json",
    ]);
    assert!(o.status.success());
    let doc = json(&o);
    let quad = row_value(&doc, "method", "quad", "value");
    let mc = row_value(&doc, "method", "mc", "value");
    let se = row_value(&doc, "method", "mc", "error");
    assert!((quad - mc).abs() < 5.0 * se, "{quad} vs {mc} +- {se}");
}

#[test]
fn limit_first_pole_matches_partial_funk() {
    let o = gct(&["limit", "--p", "2", "--q", "2", "--field", "R", "--f", "1 + c1 + c2^2", "--pole", "-1", "--format", "json"]);
    assert!(o.status.success());
    let doc = json(&o);
    let normalized = row_value(&doc, "kind", "normalized", "value");
    let funk = row_value(&doc, "kind", "partial_funk", "value");
    assert!((normalized - funk).abs() < 1e-3 * funk.abs());
}

#[test]
fn limit_of_profile_vanishing_at_the_endpoint() {
    // at λ = −p on a real space the limit is a multiple of f(π/2, …) = f(0, …)
    let o = gct(&["limit", "--p", "2", "--q", "3", "--field", "R", "--f", "c1*c2", "--pole", "-2", "--format", "json"]);
    assert!(o.status.success());
    let doc = json(&o);
    assert!(row_value(&doc, "kind", "normalized", "value").abs() < 1e-6);
    assert!(row_value(&doc, "kind", "partial_funk", "value").abs() < 1e-12);
}

#[test]
fn check_suites_pass() {
    for suite in ["lemma58", "image_kernel", "normalization"] {
        let o = gct(&["check", "--suite", suite]);
        assert!(o.status.success(), "{suite}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",true")));
    }
}

#[test]
fn sampling_is_reproducible_and_thread_independent() {
    let args = ["check", "--suite", "haar", "--seed", "7", "--samples", "30000"];
    let one = gct_threads(&args, "1");
    let four = gct_threads(&args, "4");
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, gct(&args).stdout);

    let mc = ["transform", "--p", "2", "--q", "2", "--field", "R", "--lambda", "1", "--method", "mc", "--samples", "20000"];
    assert_eq!(gct_threads(&mc, "1").stdout, gct_threads(&mc, "3").stdout);
}

#[test]
fn out_file_receives_the_table() {
    let dir = std::env::temp_dir().join(format!("gct-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spectrum.csv");
    let o = gct(&["spectrum", "--p", "1", "--q", "1", "--field", "R", "--max-degree", "2", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("m1,lambda,eta"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_with_two() {
    let cases: [&[&str]; 6] = [
        &["spectrum", "--p", "2", "--q", "3", "--field", "X", "--max-degree", "2"],
        &["transform", "--p", "2", "--q", "3", "--field", "R", "--f", "c1 +", "--lambda", "1"],
        &["transform", "--p", "2", "--q", "3", "--field", "R", "--f", "c1 / c2", "--lambda", "1"],
        &["transform", "--p", "2", "--q", "3", "--field", "R", "--lambda", "-1.5"],
        &["limit", "--p", "2", "--q", "3", "--field", "R", "--pole", "-3"],
        &["transform", "--p", "2", "--q", "3", "--field", "R", "--lambda", "1", "--nodes-per-dim", "2"],
    ];
    for args in cases {
        let o = gct(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn config_is_echoed_on_stderr() {
    let o = gct(&["spectrum", "--p", "1", "--q", "2", "--field", "H", "--max-degree", "2"]);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("\"command\":\"spectrum\""));
    assert!(err.contains("runtime:"));
}
