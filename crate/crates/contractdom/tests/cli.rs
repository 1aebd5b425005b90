//! End-to-end checks of the `contractdom` binary: exit codes, error
//! reporting, and JSON output shape.

use std::path::PathBuf;
use std::process::{Command, Output};

use contractdom::generators::{named, Family};
use contractdom::io::format_edge_list;

fn workdir() -> PathBuf {
    let dir = std::env::temp_dir().join("contractdom-cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_graph(name: &str, family: Family, n: usize) -> PathBuf {
    let path = workdir().join(name);
    std::fs::write(&path, format_edge_list(&named(family, n).unwrap())).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contractdom"))
        .args(args)
        .current_dir(workdir())
        .output()
        .unwrap()
}

#[test]
fn decide_exit_codes() {
    let p4 = write_graph("p4.edgelist", Family::Path, 4);
    let p5 = write_graph("p5.edgelist", Family::Path, 5);
    let p4 = p4.to_str().unwrap();
    let p5 = p5.to_str().unwrap();

    // Yes-instance -> 0, no-instance -> 1, for every method.
    for method in ["oracle", "characterization", "structural"] {
        let yes = run(&["decide", "--input", p4, "--method", method]);
        assert_eq!(yes.status.code(), Some(0), "{method} on P4");
        let no = run(&["decide", "--input", p5, "--method", method]);
        assert_eq!(no.status.code(), Some(1), "{method} on P5");
    }

    // Missing file -> 2.
    let err = run(&["decide", "--input", "does-not-exist.edgelist"]);
    assert_eq!(err.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&err.stderr).contains("error:"));
}

#[test]
fn structural_rejects_non_free_input() {
    // P6 contains an induced P3+P2 (for example {0,1,2} and {4,5}).
    let p6 = write_graph("p6.edgelist", Family::Path, 6);
    let out = run(&["decide", "--input", p6.to_str().unwrap(), "--method", "structural"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("not P3+1P2-free"), "stderr: {stderr}");
    assert!(stderr.contains("induced pattern on vertices"), "stderr: {stderr}");
}

#[test]
fn disconnected_input_is_an_error() {
    let path = workdir().join("disconnected.edgelist");
    std::fs::write(&path, "4 2\n0 1\n2 3\n").unwrap();
    let out = run(&["gamma", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("disconnected"));
}

#[test]
fn gamma_json_round_trip() {
    let c6 = write_graph("c6.edgelist", Family::Cycle, 6);
    let out = run(&["gamma", "--input", c6.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["command"], "gamma");
    assert_eq!(value["gamma"], 2);
    assert_eq!(value["witness_set"].as_array().unwrap().len(), 2);
    assert!(value["input_digest"].as_str().unwrap().len() == 64);
    // Timing lives on stderr so the JSON stays byte-deterministic.
    assert!(String::from_utf8_lossy(&out.stderr).contains("elapsed"));
}

#[test]
fn decide_json_reports_witness_and_provenance() {
    let c4 = write_graph("c4.edgelist", Family::Cycle, 4);
    let c4 = c4.to_str().unwrap();

    let out = run(&["decide", "--input", c4, "--method", "characterization", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["answer"], "yes");
    assert_eq!(value["method"], "characterization");
    assert_eq!(value["witness_edge"].as_array().unwrap().len(), 2);

    let out = run(&["decide", "--input", c4, "--method", "structural", "--verify-witness", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["answer"], "yes");
    assert_eq!(value["method"], "structural");
    assert!(value["provenance"]["fired_step"].is_string());
    assert!(value["witness_edge"].is_array());
}

#[test]
fn crosscheck_clean_corpus_exits_zero() {
    let out = run(&["crosscheck", "--gen", "exhaustive", "--n", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["crosscheck"]["corpus_size"], 38);
    assert_eq!(value["crosscheck"]["agreements"], 38);
    assert_eq!(value["crosscheck"]["disagreements"].as_array().unwrap().len(), 0);
}

#[test]
fn generate_emits_jsonl_manifest() {
    let out = run(&[
        "generate", "--gen", "random-free", "--n", "8", "--seed", "7", "--samples", "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<&str> = std::str::from_utf8(&out.stdout).unwrap().trim().lines().collect();
    assert_eq!(lines.len(), 5);
    for (index, line) in lines.iter().enumerate() {
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(value["index"], index);
        assert_eq!(value["n"], 8);
        assert_eq!(value["free_checked"], true);
        assert_eq!(value["spec"]["rng"], "chacha8");
    }
}
