use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use wsatlab::graph::io::{from_graph6, to_graph6};
use wsatlab::percolation::Step;
use wsatlab::Graph;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_wsatlab"));
    c.env_remove("WSATLAB_SEED");
    c
}

fn run(args: &[&str]) -> (i32, Value, Output) {
    let out = bin().args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json, out)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wsatlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn wsat_from_graph6_file() {
    let path = scratch("k3.g6");
    std::fs::write(&path, to_graph6(&Graph::complete(3)).unwrap() + "\n").unwrap();
    let (code, v, _) = run(&["wsat", "--n", "5", "--pattern", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "wsat");
    assert_eq!(v["results"]["value"], 4);
    assert_eq!(v["results"]["invariant"], "wsat");
}

#[test]
fn counterexample_report() {
    let (code, v, _) = run(&["construct", "--family", "counterexample"]);
    assert_eq!(code, 0);
    let r = &v["results"];
    assert_eq!(r["graph"]["n"], 114);
    assert_eq!(r["host_family"]["limit_density"], "15/7");
    assert_eq!(r["predicted_gamma"], "2");
    let g = from_graph6(r["graph"]["graph6"].as_str().unwrap()).unwrap();
    assert_eq!(g.edge_count(), 15 + 21 + 4950 + 2);
}

#[test]
fn constructions_verify_and_round_trip() {
    for args in [
        vec!["--family", "delta3", "--ratio", "8/5"],
        vec!["--family", "delta4", "--ratio", "7/3"],
        vec!["--family", "sparse", "--delta", "3", "--k", "10"],
        vec!["--family", "high-delta", "--ratio", "13/4", "--k", "16", "--seed", "2"],
    ] {
        let mut full = vec!["construct", "--verify"];
        full.extend(&args);
        let (code, v, out) = run(&full);
        assert_eq!(code, 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let ver = &v["results"]["verification"];
        assert_eq!(ver["pass"], true, "{args:?}");
        assert_eq!(ver["graph6_round_trip"], true);
        assert_eq!(ver["gamma"], v["results"]["predicted_gamma"]);
    }
}

#[test]
fn seeded_runs_are_identical() {
    let args = ["construct", "--family", "high-delta", "--ratio", "7/2", "--k", "16", "--seed", "9"];
    let a = bin().args(args).output().unwrap().stdout;
    let b = bin().args(args).output().unwrap().stdout;
    assert_eq!(a, b);
    let c = bin()
        .args(&args[..args.len() - 2])
        .env("WSATLAB_SEED", "9")
        .output()
        .unwrap()
        .stdout;
    let strip = |s: &[u8]| {
        let mut v: Value = serde_json::from_slice(s).unwrap();
        v["inputs"] = Value::Null;
        v
    };
    assert_eq!(strip(&a), strip(&c));
    let one = bin().args(args).args(["--threads", "1"]).output().unwrap().stdout;
    assert_eq!(a, one);
}

#[test]
fn expander_table_passes() {
    let (code, v, _) = run(&["expander", "table"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "expander table");
    assert_eq!(v["results"]["rows"].as_array().unwrap().len(), 12);
    assert_eq!(v["results"]["all_pass"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["gamma"]).0, 1);
    assert_eq!(run(&["gamma", "not-a-graph"]).0, 1);
    assert_eq!(run(&["construct", "--family", "delta3", "--ratio", "x/y"]).0, 1);
    assert_eq!(run(&["construct", "--family", "delta3", "--ratio", "2"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
    // not weakly saturated
    assert_eq!(run(&["rotate", "E4", "--pattern", "K3"]).0, 2);
    assert_eq!(run(&["expander", "check", "--alpha", "1/2", "--r", "6", "--eta", "1/100"]).0, 2);
    let (code, v, _) = run(&["wsat", "--n", "6", "--pattern", "K4", "--budget", "5"]);
    assert_eq!(code, 3);
    assert_eq!(v["results"]["inconclusive"], true);
    assert_eq!(run(&["ftilde", "C5"]).0, 3);
}

#[test]
fn closure_trace_and_out_file() {
    let trace = scratch("trace.json");
    let out = scratch("report.json");
    let (code, _, o) = run(&[
        "closure",
        "S4",
        "--pattern",
        "K3",
        "--trace",
        trace.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(o.stdout.is_empty());
    let steps: Vec<Step> = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(steps.len(), 6);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["results"]["complete"], true);
    assert_eq!(v["results"]["closure"]["m"], 10);
}

#[test]
fn gamma_methods_agree() {
    for g in ["K4", "C5", "M8", "P4", "k5-e"] {
        let a = run(&["gamma", g, "--method", "brute"]).1;
        let b = run(&["gamma", g, "--method", "ratio"]).1;
        assert_eq!(a["results"]["value"], b["results"]["value"], "{g}");
    }
    assert_eq!(run(&["gamma", "M8"]).1["results"]["value"], "11/8");
    let (code, _, _) = run(&["gamma", "K25", "--method", "brute"]);
    assert_eq!(code, 3);
}

#[test]
fn rotation_of_a_tree() {
    let (code, v, _) = run(&["rotate", "P5", "--pattern", "K3", "--matching", "0"]);
    assert_eq!(code, 0);
    let r = &v["results"]["rotation"];
    assert_eq!(r["edges_unchanged"], true);
    assert_eq!(r["weakly_saturated"], true);
    assert_eq!(run(&["rotate", "P5", "--pattern", "K3", "--matching", "100000"]).0, 1);
}

#[test]
fn expander_sampling() {
    let (code, v, _) =
        run(&["expander", "sample", "--r", "6", "--n", "16", "--count", "4", "--threshold", "1", "--seed", "3"]);
    assert_eq!(code, 0);
    let s = v["results"]["samples"].as_array().unwrap();
    assert_eq!(s.len(), 4);
    assert_eq!(s[0]["seed"], 3);
    let g = from_graph6(s[1]["graph6"].as_str().unwrap()).unwrap();
    assert!(g.degrees().iter().all(|&d| d == 6));
}
