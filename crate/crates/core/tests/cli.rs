use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sigma-artin"))
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sigma-artin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> (i32, Value) {
    let Output { status, stdout, .. } = bin().args(args).output().unwrap();
    let json = serde_json::from_slice(&stdout).unwrap_or(Value::Null);
    (status.code().unwrap(), json)
}

const SPOKE: &str = "vertex u\nvertex u1\nvertex u2\nedge u u1 4\nedge u u2 4\nedge u1 u2 3\n";

fn classify(graph: &str, chi: &str) -> (i32, Value) {
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let n = NEXT.fetch_add(1, Ordering::Relaxed);
    let g = scratch(&format!("{n}.graph"), graph);
    let c = scratch(&format!("{n}.chi"), chi);
    run(&["classify", "--graph", g.to_str().unwrap(), "--chi", c.to_str().unwrap()])
}

#[test]
fn classify_exit_codes() {
    let (code, json) = classify(SPOKE, "chi u 1\nchi u1 -1\nchi u2 -1\n");
    assert_eq!(code, 1);
    assert_eq!(json["membership"], "out");
    assert_eq!(json["criterion"], false);
    assert_eq!(json["dead_edges"].as_array().unwrap().len(), 2);

    let (code, json) = classify(SPOKE, "chi u 0\nchi u1 1\nchi u2 1\n");
    assert_eq!(code, 0);
    assert_eq!(json["membership"], "in");

    let path = "vertex a\nvertex b\nedge a b 4\n";
    let (code, json) = classify(path, "chi a 1\nchi b -1\n");
    assert_eq!(code, 2);
    assert_eq!(json["membership"], "uncertified");
}

#[test]
fn classify_errors_exit_3() {
    let (code, json) = classify("vertex a\nvertex b\nedge a b four\n", "chi a 1\n");
    assert_eq!(code, 3);
    assert!(json["error"].as_str().unwrap().contains("line 3"));

    let (code, json) = classify(SPOKE, "chi u 1\nchi u1 1\nchi u2 2\n");
    assert_eq!(code, 3);
    assert!(json["error"].as_str().unwrap().contains("odd edge"));
}

#[test]
fn witness_reports() {
    let (code, json) = run(&["witness", "--n", "2", "--k", "2,2", "--l", "1", "--smax", "4"]);
    assert_eq!(code, 0);
    let dims: Vec<u64> = json["table"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims.len(), 4);
    assert!(dims.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(json["deltaR"], 1);
    assert_eq!(json["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(json["config"]["smax"], 4);

    let (code, json) = run(&["witness", "--n", "4", "--k", "2,2,2,2", "--l", "1,1,1"]);
    assert_eq!(code, 2);
    assert_eq!(json["hypothesis_sum"], "1");

    let (code, json) = run(&["reduce", "--k", "12,8", "--l", "1"]);
    assert_eq!(code, 0);
    let reductions = json["reduced_params"]["reductions"].as_array().unwrap();
    let pairs: Vec<(u64, u64)> = reductions
        .iter()
        .map(|r| (r["from"].as_u64().unwrap(), r["to"].as_u64().unwrap()))
        .collect();
    assert_eq!(pairs, [(12, 3), (8, 2)]);
}

#[test]
fn inline_and_graph_parameters_must_agree() {
    let g = scratch("agree.graph", SPOKE);
    let g = g.to_str().unwrap();
    assert_eq!(run(&["sphere", "--graph", g, "--k", "2,2", "--l", "1"]).0, 0);
    let (code, json) = run(&["sphere", "--graph", g, "--k", "2,3", "--l", "1"]);
    assert_eq!(code, 3);
    assert!(json["error"].as_str().unwrap().contains("disagree"));
    assert_eq!(run(&["sphere", "--n", "3", "--k", "2,2", "--l", "1"]).0, 3);
}

#[test]
fn verify_passes_and_catches_corruption() {
    let (code, json) = run(&["verify", "--k", "2,2", "--l", "1"]);
    assert_eq!(code, 0, "{json}");
    assert_eq!(json["failed"], 0);
    assert!(json["total"].as_u64().unwrap() > 50);

    let (code, json) = run(&["verify", "--n", "3", "--k", "2,3,3", "--l", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(json["windows"].as_array().unwrap().len(), 2);

    let (code, json) = run(&["verify", "--k", "2,2", "--l", "1", "--corrupt-theta", "2:0:0"]);
    assert_eq!(code, 1);
    assert!(!json["first_failure"].is_null());
    let failed_checks: Vec<&str> = json["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["pass"] == false)
        .map(|r| r["check"].as_str().unwrap())
        .collect();
    assert!(failed_checks.iter().any(|c| c.contains("relation")), "{failed_checks:?}");

    let (code, _) = run(&["verify", "--k", "2,2", "--l", "1", "--jmin", "1"]);
    assert_eq!(code, 3);
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let out = std::env::temp_dir().join(format!("sigma-artin-out-{}.json", std::process::id()));
    let args = ["witness", "--k", "2,2,3", "--l", "1,2", "--smax", "3"];
    let a = bin().args(args).output().unwrap().stdout;
    let b = bin().args(args).output().unwrap().stdout;
    assert_eq!(a, b);
    let status = bin()
        .args(args)
        .args(["--out", out.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert_eq!(std::fs::read(&out).unwrap(), a);
}
