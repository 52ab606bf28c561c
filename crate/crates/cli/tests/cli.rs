use std::process::{Command, Output};

use serde_json::Value;

fn mcluster(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcluster"))
        .args(args)
        .env_remove("CQ_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = mcluster(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn gamma_dot_has_fifteen_nodes() {
    let out = mcluster(&["gamma", "--n", "4", "--m", "2", "--format", "dot"]);
    assert!(out.status.success());
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("[label=").count(), 15);
    assert!(dot.contains("rank=same"));
}

#[test]
fn gamma_json_schema() {
    let doc = json(&["gamma", "--n", "8", "--m", "1", "--format", "json"]);
    assert_eq!(doc["config"]["N"], 10);
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 35);
    assert_eq!(doc["vertices"][0]["id"], "1-3");
    assert_eq!(doc["vertices"][0]["diagonal"], serde_json::json!([1, 3]));
    assert_eq!(doc["tau"].as_array().unwrap().len(), 35);
}

#[test]
fn output_is_deterministic() {
    let a = mcluster(&["gamma", "--n", "4", "--m", "2"]);
    let b = mcluster(&["gamma", "--n", "4", "--m", "2"]);
    assert_eq!(a.stdout, b.stdout);
    let a = mcluster(&[
        "verify", "--n", "2..3", "--m", "1..3", "--format", "json", "--jobs", "1",
    ]);
    let b = mcluster(&[
        "verify", "--n", "2..3", "--m", "1..3", "--format", "json", "--jobs", "4",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let out = mcluster(&[
        "gamma",
        "--n",
        "4",
        "--m",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 15);
}

fn shapes(doc: &Value) -> Vec<String> {
    let mut s: Vec<String> = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["shape"].as_str().unwrap().to_string())
        .collect();
    s.sort();
    s
}

#[test]
fn decompose_decagon() {
    let doc = json(&["decompose", "--n", "4", "--m", "2", "--format", "json"]);
    assert_eq!(doc["components"].as_array().unwrap().len(), 3);
    assert_eq!(shapes(&doc), ["cylinder", "moebius", "moebius"]);
    let table = stdout(&mcluster(&["decompose", "--n", "4", "--m", "2"]));
    assert!(table.contains("3 components (predicted 3)"));
}

#[test]
fn decompose_fourteen_gon() {
    let doc = json(&["decompose", "--n", "2", "--m", "6", "--format", "json"]);
    assert_eq!(doc["reports"].as_array().unwrap().len(), 7);
}

#[test]
fn decompose_u_cluster_tags() {
    let doc = json(&["decompose", "--n", "3", "--m", "5", "--format", "json"]);
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    let tagged = reports.iter().filter(|r| r["u_cluster"] == 8).count();
    assert_eq!(tagged, 2);
}

#[test]
fn cone_injective() {
    let doc = json(&["cone", "1", "4", "1", "6", "--n", "8", "--m", "1"]);
    assert_eq!(doc["C"], serde_json::json!([[3, 6]]));
    assert_eq!(doc["kind"], "Injective");
}

#[test]
fn cone_identity_is_zero() {
    let doc = json(&["cone", "1", "5", "1", "5", "--n", "8", "--m", "1"]);
    assert_eq!(doc["C"], serde_json::json!([]));
}

#[test]
fn cone_hom_zero_exits_three() {
    let out = mcluster(&["cone", "1", "4", "5", "8", "--n", "8", "--m", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NoCanonicalTriangle"));
}

#[test]
fn cone_on_edge_is_invalid() {
    let out = mcluster(&["cone", "1", "2", "1", "5", "--n", "8", "--m", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_sweep_passes() {
    let out = mcluster(&["verify", "--n", "2..5", "--m", "1..8"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("32 cells, 0 failed"));
}

#[test]
fn verify_decagon_line() {
    let out = mcluster(&["verify", "--n", "4", "--m", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("components: 3 (predicted 3)"));
    let doc = json(&["verify", "--n", "4", "--m", "2", "--format", "json"]);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["results"][0]["N"], 10);
}

#[test]
fn verify_corrupted_prediction_fails_with_diff() {
    let out = mcluster(&["verify", "--n", "4", "--m", "2", "--corrupt-prediction"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("- computed"));
    assert!(text.contains("+ predicted"));
}

#[test]
fn oversized_and_invalid_input_exit_two() {
    assert_eq!(
        mcluster(&["gamma", "--n", "100", "--m", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        mcluster(&["verify", "--n", "2..80", "--m", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mcluster(&["gamma", "--n", "1", "--m", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        mcluster(&["verify", "--n", "5..2", "--m", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mcluster(&["verify", "--n", "2", "--m", "1", "--format", "dot"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn cap_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_mcluster"))
        .args(["gamma", "--n", "100", "--m", "3", "--format", "dot"])
        .env("CQ_MAX_N", "400")
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_mcluster"))
        .args(["gamma", "--n", "4", "--m", "2"])
        .env("CQ_MAX_N", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dot_round_trips_through_json_schema() {
    let doc = json(&["gamma", "--n", "3", "--m", "4", "--format", "json"]);
    let dot = stdout(&mcluster(&[
        "gamma", "--n", "3", "--m", "4", "--format", "dot",
    ]));
    let back = mcluster::export::from_dot(&dot).unwrap();
    let back = serde_json::to_value(&back).unwrap();
    for key in ["config", "vertices", "arrows", "tau"] {
        assert_eq!(back[key], doc[key], "{key}");
    }
}

#[test]
fn golden_fixtures() {
    let gamma = stdout(&mcluster(&["gamma", "--n", "4", "--m", "2"]));
    assert_eq!(gamma, include_str!("fixtures/gamma_4_2.json"));
    let table = stdout(&mcluster(&[
        "decompose",
        "--n",
        "4",
        "--m",
        "2",
        "--format",
        "table",
    ]));
    assert_eq!(table, include_str!("fixtures/decompose_4_2.txt"));
}
