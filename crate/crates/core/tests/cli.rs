use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn mll(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mll")).args(args).env_remove("MLL_MAX_LEAVES").output().expect("binary runs")
}

fn mll_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mll"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_out(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

const FIGURE: &str = r#"{"dom":"p","cod":"(p * (q * q^)^)","links":[
    [{"side":"dom","addr":""},{"side":"cod","addr":"L"}],
    [{"side":"cod","addr":"RNL"},{"side":"cod","addr":"RNRN"}]]}"#;

#[test]
fn check_accepts_the_figure_net() {
    let out = mll_stdin(&["check", "-"], FIGURE);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_out(&out)["status"], "correct");
}

#[test]
fn check_rejects_with_witness() {
    let bad = r#"{"formula":"(p * p^)","links":[[{"side":"cod","addr":"L"},{"side":"cod","addr":"RN"}]]}"#;
    let out = mll_stdin(&["check", "-"], bad);
    assert_eq!(out.status.code(), Some(1));
    let v = json_out(&out);
    assert_eq!(v["error"], "NotCorrect");
    assert_eq!(v["witness"]["failure"], "cycle");
}

#[test]
fn hom_count() {
    let out = mll(&["hom", "(p*p)", "(p*p)", "--count"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_out(&out), json!({"count": 2}));
}

#[test]
fn j_lists_elements() {
    let v = json_out(&mll(&["j", "p -o p"]));
    assert_eq!(v["count"], 1);
    assert_eq!(v["elements"].as_array().unwrap().len(), 1);
}

#[test]
fn bound_flag_and_environment() {
    let out = mll(&["hom", "((p*p)*(p*p))", "((p*p)*(p*p))", "--count", "--max-leaves", "6"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_out(&out)["error"], "SizeBoundExceeded");
    let out = Command::new(env!("CARGO_BIN_EXE_mll"))
        .args(["hom", "((p*p)*p)", "((p*p)*p)", "--count"])
        .env("MLL_MAX_LEAVES", "5")
        .output()
        .unwrap();
    assert_eq!(json_out(&out)["error"], "SizeBoundExceeded");
}

#[test]
fn syntax_errors_are_structured() {
    let out = mll(&["parse", "(p *"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_out(&out)["error"], "SyntaxError");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(mll(&["hom", "p"]).status.code(), Some(2));
    let out = mll(&["--json", "frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_out(&out)["error"], "Usage");
    assert_eq!(mll(&["canon", "sigma", "p"]).status.code(), Some(2));
    assert_eq!(mll(&["coherence", "--diagrams", "nonsense"]).status.code(), Some(2));
}

#[test]
fn parse_reports_occurrences() {
    let v = json_out(&mll(&["parse", "(p * (q * q^)^)"]));
    assert_eq!(v["formula"], "(p * (q * q^)^)");
    let pol: Vec<&str> = v["occurrences"].as_array().unwrap().iter().map(|o| o["polarity"].as_str().unwrap()).collect();
    assert_eq!(pol, ["pos", "neg", "pos"]);
}

#[test]
fn compose_via_files() {
    let dir = std::env::temp_dir().join(format!("mll-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let first = dir.join("f.json");
    let second = dir.join("g.json");
    std::fs::write(&first, FIGURE).unwrap();
    let g = mll(&["canon", "identity", "(p * (q * q^)^)"]);
    std::fs::write(&second, &g.stdout).unwrap();
    let out = mll(&["compose", first.to_str().unwrap(), second.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_out(&out);
    assert_eq!(v["links"].as_array().unwrap().len(), 2);
    // mismatched interface
    let h = mll(&["canon", "identity", "q"]);
    std::fs::write(&second, &h.stdout).unwrap();
    let out = mll(&["compose", first.to_str().unwrap(), second.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_out(&out)["error"], "InterfaceMismatch");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn output_is_deterministic() {
    let a = mll(&["hom", "((p*p)*p)", "(p*(p*p))"]);
    let b = mll(&["hom", "((p*p)*p)", "(p*(p*p))"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_out(&a)["count"], 6);
}

#[test]
fn dot_output() {
    let out = mll_stdin(&["dot", "-"], FIGURE);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph net {"));
    // one node for the domain atom, seven for the codomain tree
    assert_eq!(text.matches("style=dashed").count(), 2);
    assert_eq!(text.matches("shape=").count(), 1 + 7);
}

#[test]
fn coherence_small_run() {
    let out = mll(&["coherence", "--vars", "p,q", "--max-leaves", "4", "--diagrams", "pentagon,hexagon,sigma,l_iso"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> =
        String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.last().unwrap()["result"]["passed"], true);
    assert!(lines.iter().any(|l| l["summary"]["diagram"] == "hexagon"));

    // tensel needs three elements, so nothing below 6 leaves is non-vacuous:
    // no failures, but the run does not count as passed
    let out = mll(&["coherence", "--vars", "p", "--max-leaves", "3", "--diagrams", "tensel"]);
    assert_eq!(out.status.code(), Some(0));
    let last: Value = serde_json::from_str(String::from_utf8(out.stdout).unwrap().lines().last().unwrap()).unwrap();
    assert_eq!(last["result"], json!({"fails": 0, "passed": false, "l_bijective_on_grid": null, "model": "canonical"}));
}

#[test]
fn coherence_negative_control_exits_1() {
    let out = mll(&["coherence", "--vars", "p", "--max-leaves", "3", "--diagrams", "hexagon", "--model", "wrong-sigma"]);
    assert_eq!(out.status.code(), Some(1));
    let first: Value = serde_json::from_str(String::from_utf8(out.stdout).unwrap().lines().next().unwrap()).unwrap();
    assert_eq!(first["status"], "fails");
    assert_eq!(first["instance"], json!(["p", "p", "p"]));
    assert_eq!(first["witness"]["kind"], "nets");
}
