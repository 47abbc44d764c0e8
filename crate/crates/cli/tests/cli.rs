//! End-to-end runs of the binary: worked examples, exit codes, output
//! determinism.

use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_gcalc")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("the binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn group_info_reports_the_s3_lattice() {
    let v = json_of(&run(&["group", "info", "--group", "S3"]));
    assert_eq!(v["order"], 6);
    assert_eq!(v["subgroup_count"], 6);
    assert_eq!(v["subgroup_classes"], 4);
    assert_eq!(v["normal_count"], 3);
    assert_eq!(v["abelian"], false);
}

#[test]
fn tomdieck_over_c2_has_two_summands() {
    let v = json_of(&run(&["tomdieck", "--group", "C2"]));
    let summands = v["summands"].as_array().unwrap();
    assert_eq!(summands.len(), 2);
    let aux_orders: Vec<u64> =
        summands.iter().map(|s| s["aux"]["order"].as_u64().unwrap()).collect();
    assert_eq!(aux_orders, vec![2, 1]);
}

#[test]
fn snaith_check_reports_twenty_two_at_eight() {
    let out = run(&["check", "snaith", "--k", "8"]);
    let v = json_of(&out);
    assert_eq!(v["pass"], true);
    let at_eight = &v["results"].as_array().unwrap()[7];
    assert_eq!(at_eight["detail"]["multisets"], 22);
    assert_eq!(at_eight["detail"]["partitions"], 22);
}

#[test]
fn star_counts_match_the_two_worked_examples() {
    let path = fixture("three_free_c2.json");
    let path = path.to_str().unwrap();
    let all = json_of(&run(&[
        "star", "count", "--gset", path, "--points", "0,1,2,3,4,5",
    ]));
    assert_eq!(all["objects"], 10);
    let mixed = json_of(&run(&[
        "star", "count", "--gset", path, "--points", "0,1,2,4,6",
    ]));
    assert_eq!(mixed["objects"], 11);
}

#[test]
fn action_table_files_load_with_their_basepoint() {
    let path = fixture("based_pair.json");
    let v = json_of(&run(&["gset", "orbits", "--gset", path.to_str().unwrap()]));
    assert_eq!(v["basepoint"], 2);
    assert_eq!(v["size"], 3);
    assert_eq!(v["orbits"].as_array().unwrap().len(), 2);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["tree", "hasse", "--group", "S3", "--max-size", "3"],
        vec!["families", "enum", "--group", "D4", "--k", "4"],
        vec!["identity-layers", "--group", "C2", "--n", "2"],
        vec!["check", "decomp"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?} drifted between runs");
    }
}

#[test]
fn dot_output_renders_the_tree() {
    let out = run(&["tree", "hasse", "--group", "C2", "--max-size", "2", "--format", "dot"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph goodwillie_tree {"));
    assert!(text.contains("n0 [label=\"[1]\"]"));
    assert!(text.contains("rankdir=BT"));
}

#[test]
fn invalid_input_exits_with_two() {
    for args in [
        vec!["group", "info", "--group", "Z9"],
        vec!["tree", "hasse"],
        vec!["tomdieck", "--group", "S3", "--mode", "abelian-normal"],
        vec!["partition", "homology", "--k", "7"],
        vec!["group", "info", "--group", "S3", "--format", "dot"],
        vec!["no-such-command"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let target = std::env::temp_dir().join(format!("gcalc-out-{}.json", std::process::id()));
    let direct = run(&["tomdieck", "--group", "S3"]);
    let filed = run(&["tomdieck", "--group", "S3", "--out", target.to_str().unwrap()]);
    assert!(filed.status.success());
    assert!(filed.stdout.is_empty());
    let written = std::fs::read(&target).unwrap();
    std::fs::remove_file(&target).ok();
    assert_eq!(written, direct.stdout);
}

#[test]
fn out_of_range_families_warn_and_return_empty() {
    let out = run(&["families", "enum", "--group", "C2", "--k", "5", "--n", "2"]);
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("outside"), "stderr was {stderr:?}");
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["members"].as_array().unwrap().is_empty());
}

#[test]
fn table_format_prints_aligned_rows() {
    let out = run(&["group", "info", "--group", "C2", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("order: 2"));
    assert!(text.contains("members"));
}

#[test]
fn partition_homology_matches_the_factorial_signature() {
    let v = json_of(&run(&["partition", "homology", "--k", "4"]));
    assert_eq!(v["t_homology"], serde_json::json!([[4, 6]]));
    assert_eq!(v["proper_nerve"], serde_json::json!([[1, 6]]));
    assert_eq!(v["euler"], 6);
}
