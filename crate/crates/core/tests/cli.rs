use std::path::Path;
use std::process::{Command, Output};

use gasket::graph::io::{from_graph6, from_json};
use gasket::sierpinski;
use serde_json::Value;

fn gasket(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gasket"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = gasket(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(dir: &Path, args: &[&str]) -> Value {
    serde_json::from_str(&ok(dir, args)).unwrap()
}

#[test]
fn sierpinski_in_graph6() {
    let dir = tempfile::tempdir().unwrap();
    let g = from_graph6(ok(dir.path(), &["gen", "sierpinski", "--level", "3", "--format", "graph6"]).trim()).unwrap();
    assert_eq!(g, sierpinski::build(3).unwrap().into_graph());
    assert_eq!(g.n(), 15);
    let j = ok(dir.path(), &["gen", "sierpinski", "--level", "2", "--format", "json"]);
    assert_eq!(from_json(&j).unwrap().edge_count(), 9);
    assert!(ok(dir.path(), &["gen", "sierpinski", "--level", "1", "--format", "dot"]).starts_with("graph G {"));
}

#[test]
fn host_check_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let k6 = json(dir.path(), &["ramsey", "host-check", "--host", "K6", "--pattern", "K3"]);
    assert_eq!(k6["verified"], true);
    assert_eq!(k6["colorings_checked"], 32768);
    let k5 = json(dir.path(), &["ramsey", "host-check", "--host", "K5", "--pattern", "K3"]);
    assert_eq!(k5["verified"], false);
    assert!(!k5["witness"].is_null());
}

#[test]
fn closeknit_interior_triangle() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["gen", "sierpinski", "--level", "3", "--format", "graph6", "--out", "s3.g6"]);
    let r = json(dir.path(), &["closeknit", "ratio", "--graph", "s3.g6", "--group", "4,7,8"]);
    assert_eq!(r["min_ratio"], "1/4");
    let r = json(dir.path(), &["closeknit", "ratio", "--graph", "K3", "--group", "1,2,3"]);
    assert_eq!(r["min_ratio"], "1/2");
}

#[test]
fn alt_codec_roundtrip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen", "gnp", "--n", "20", "--seed", "9", "--out", "base.g6"]);
    ok(d, &["gen", "plant", "--graph", "base.g6", "--pattern", "S2", "--occ", "3,5,8,11,17,20", "--out", "g.g6"]);
    let report: Value = serde_json::from_str(&ok(
        d,
        &["encode", "alt", "--graph", "g.g6", "--occ", "3,5,8,11,17,20", "--gen", "sierpinski:2", "--out", "g.alt"],
    ))
    .unwrap();
    assert_eq!(report["lengths"]["canonical"], 190);
    assert_eq!(report["lengths"]["alt"], 201);
    ok(d, &["decode", "alt", "--input", "g.alt", "--out", "back.g6"]);
    assert_eq!(std::fs::read(d.join("back.g6")).unwrap(), std::fs::read(d.join("g.g6")).unwrap());
    let canon = ok(d, &["encode", "canonical", "--graph", "g.g6"]);
    assert_eq!(canon.trim().len(), 190);
    let back = ok(d, &["decode", "canonical", "--bits", canon.trim()]);
    assert_eq!(back, std::fs::read_to_string(d.join("g.g6")).unwrap());
}

#[test]
fn alt_encode_rejects_a_non_occurrence() {
    let dir = tempfile::tempdir().unwrap();
    let out = gasket(dir.path(), &["encode", "alt", "--graph", "E10", "--occ", "1,2,3", "--gen", "sierpinski:1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(gasket(d, &["gen", "sierpinski"]).status.code(), Some(2));
    assert_eq!(gasket(d, &["frobnicate"]).status.code(), Some(2));
    assert_eq!(gasket(d, &["gen", "sierpinski", "--level", "3", "--format", "png"]).status.code(), Some(2));
    let out = gasket(d, &["closeknit", "ratio", "--graph", "S3", "--group", "1,99"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("99"));
    assert_eq!(gasket(d, &["gen", "sierpinski", "--level", "0"]).status.code(), Some(1));
    assert_eq!(gasket(d, &["closeknit", "ratio", "--graph", "missing.g6", "--group", "1"]).status.code(), Some(1));
    assert_eq!(gasket(d, &["ramsey", "host-check", "--host", "K9", "--pattern", "K3"]).status.code(), Some(1));
    assert_eq!(gasket(d, &["ramsey", "split", "--graph", "K3", "--pattern", "K3", "--mode", "uniform-random"]).status.code(), Some(1));
}

#[test]
fn split_and_union() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["ramsey", "union", "--g1", "C5", "--g2", "K6", "--out", "u.g6"]);
    for mode in ["fast", "proof-faithful"] {
        let r = json(d, &["ramsey", "split", "--graph", "u.g6", "--pattern", "K3", "--mode", mode]);
        assert_eq!(r["g1_vertices"], serde_json::json!([1, 2, 3, 4, 5]));
        assert_eq!(r["g2_vertices"], serde_json::json!([6, 7, 8, 9, 10, 11]));
    }
}

#[test]
fn calculators() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(ok(d, &["ramsey", "max-level", "--cd", "3"]).trim(), "3");
    assert_eq!(ok(d, &["ramsey", "max-level", "--cd", "1/2"]).trim(), "null");
    let m = json(d, &["experiment", "moment", "--n", "12", "--pattern", "S2"]);
    assert_eq!(m["expected_isomorphic"], "3465/1024");
    let b = json(d, &["ramsey", "bounds", "--pattern", "S2", "--c", "1", "--cd", "3"]);
    assert_eq!(b["max_degree"], 4);
}

#[test]
fn manifest_records_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = ["experiment", "sweep", "--levels", "2", "--n-values", "6..8", "--trials", "30", "--seed", "12", "--out", "t.csv", "--manifest", "m.json"];
    ok(d, &args);
    let csv = std::fs::read_to_string(d.join("t.csv")).unwrap();
    assert!(csv.starts_with("# kind: threshold_sweep\n"));
    assert!(csv.contains("\n2,6,7,2,"));
    let m: Value = serde_json::from_slice(&std::fs::read(d.join("m.json")).unwrap()).unwrap();
    assert_eq!(m["master_seed"], 12);
    assert!(m["subcommand"].as_str().unwrap().contains("sweep"));
    let first = std::fs::read(d.join("t.csv")).unwrap();
    ok(d, &args);
    assert_eq!(std::fs::read(d.join("t.csv")).unwrap(), first);
}

#[test]
fn diffusion_trace_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = ok(dir.path(), &["diffuse", "run", "--graph", "S2", "--init", "1,2,3", "--mode", "round-robin", "--horizon", "6", "--csv"]);
    assert!(csv.starts_with("revision,adopter_count\n0,3\n"));
    assert!(csv.trim_end().ends_with(",6"));
    let none = json(dir.path(), &["diffuse", "stats", "--graph", "S2", "--init", "none", "--trials", "5"]);
    assert_eq!(none["success_rate"], 0.0);
}
