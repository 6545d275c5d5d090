use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use topomodal::reductions::harbor_example;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topomodal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const CHAIN: &str = r#"{"vars":["a","b","c"],"constraints":[
  {"i":"a","j":"b","rels":["tpp"]},
  {"i":"b","j":"c","rels":["tpp"]},
  {"i":"a","j":"c","rels":["dc"]}]}"#;

const EC_PAIR: &str = r#"{"vars":["x","y"],"constraints":[{"i":"x","j":"y","rels":["ec"]}]}"#;

const START_THEN_FILL: &str =
    r#"{"tiles":["s","f"],"h":[["s","f"],["f","f"]],"v":[["s","f"],["f","f"]],"s0":"s","f0":"f"}"#;

#[test]
fn solve_verdicts_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let ec3 = dir.path().join("ec3.json");
    assert_eq!(code(&run(&["generate", "--ec-k", "3", "-o", s(&ec3)])), 0);
    let o = run(&["solve", s(&ec3)]);
    assert_eq!((code(&o), stdout(&o)), (0, "SAT\n".to_string()));

    let chain = write(&dir, "chain.json", CHAIN);
    let o = run(&["solve", s(&chain)]);
    assert_eq!((code(&o), stdout(&o)), (1, "UNSAT\n".to_string()));

    let bad = write(&dir, "bad.json", "{\"vars\": [");
    assert_eq!(code(&run(&["solve", s(&bad)])), 2);
    assert_eq!(code(&run(&["solve", "/nonexistent/net.json"])), 2);
}

#[test]
fn solve_refinement_maps_every_variable() {
    let dir = TempDir::new().unwrap();
    let pair = write(&dir, "pair.json", EC_PAIR);
    let o = run(&["solve", "--refine", s(&pair)]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let json: serde_json::Value = serde_json::from_str(text.strip_prefix("SAT\n").unwrap()).unwrap();
    assert_eq!(json["structure"]["matrix"][0][1], "ec");
    assert!(json["region_of"]["x"].is_string());
    assert!(json["region_of"]["y"].is_string());
}

#[test]
fn realize_reports_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let pair = write(&dir, "pair.json", EC_PAIR);
    let a = run(&["realize", s(&pair)]);
    let b = run(&["realize", s(&pair)]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let json: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(json["verification"], "ok");
    assert!(json["realization"]["x"].is_array());

    let chain = write(&dir, "chain.json", CHAIN);
    assert_eq!(code(&run(&["realize", s(&chain)])), 1);
}

#[test]
fn check_on_the_harbor_model() {
    let dir = TempDir::new().unwrap();
    let h = harbor_example();
    let model = write(
        &dir,
        "harbor.json",
        &serde_json::to_string(&h.model.to_json()).unwrap(),
    );
    let consequence = h.consequence.to_string();
    let o = run(&["check", s(&model), &consequence, "--valid"]);
    assert_eq!((code(&o), stdout(&o)), (0, "true\n".to_string()));
    let o = run(&["check", s(&model), &h.non_consequence.to_string(), "--valid"]);
    assert_eq!((code(&o), stdout(&o)), (1, "false\n".to_string()));
    let o = run(&["check", s(&model), "<ec>sea", "--at", "dresden"]);
    assert_eq!(code(&o), 1);
    let o = run(&["check", s(&model), "<po>elbe", "--at", "dresden"]);
    assert_eq!(code(&o), 0);

    let file = write(&dir, "loeb.txt", "[pp]([pp]p -> p) -> [pp]p\n");
    let o = run(&["check", s(&model), "--formula-file", s(&file), "--valid"]);
    assert_eq!(code(&o), 0);

    assert_eq!(code(&run(&["check", s(&model), "p", "--at", "atlantis"])), 2);
    assert_eq!(code(&run(&["check", s(&model), "p &", "--valid"])), 2);
    assert_eq!(code(&run(&["check", s(&model), "<zz>p", "--valid"])), 2);
}

#[test]
fn check_on_a_single_region() {
    let dir = TempDir::new().unwrap();
    let model = write(
        &dir,
        "one.json",
        r#"{"structure":{"kind":"rcc5","regions":["a"],"matrix":[["eq"]]}}"#,
    );
    let o = run(&["check", s(&model), "<ppi> true", "--valid"]);
    assert_eq!((code(&o), stdout(&o)), (1, "false\n".to_string()));
}

#[test]
fn translate_modes() {
    let o = run(&["translate", "--modal-to-fo", "<dc>p"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "(exists y (and (dc x y) (p y)))\n");

    let o = run(&["translate", "--fo2-to-modal", "--phi-n", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("p_2"));

    let o = run(&["translate", "--fo2-to-modal", "(exists y (and (ec x y) (p y)))"]);
    assert_eq!(code(&o), 0);

    let o = run(&["translate", "--modal-to-fl4", "1", "<po>p"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("(forall (x1 x2)"));

    assert_eq!(code(&run(&["translate", "--modal-to-fl4", "3", "p"])), 2);
    assert_eq!(code(&run(&["translate", "--modal-to-fo", "--phi-n", "2"])), 2);
    assert_eq!(code(&run(&["translate", "--modal-to-fo", "<zz>p"])), 2);
    assert_eq!(code(&run(&["translate", "--fo2-to-modal", "(exists"])), 2);
}

#[test]
fn generate_fixed_artifacts() {
    let o = run(&["generate", "--loeb"]);
    assert_eq!(stdout(&o), "[pp]([pp]p -> p) -> [pp]p\n");

    let o = run(&["generate", "--ec-k", "3"]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["vars"].as_array().unwrap().len(), 3);
    assert_eq!(json["constraints"].as_array().unwrap().len(), 3);
    assert!(json["constraints"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["rels"] == serde_json::json!(["ec"])));

    let o = run(&["generate", "--domready", "3"]);
    assert_eq!(code(&o), 0);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["x"].as_array().unwrap().len(), 6);
    assert_eq!(json["violations"], serde_json::json!([]));

    let o = run(&["generate", "--s53", "<1>p & !<2>q"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(&["generate", "--s53", "<4>p"])), 2);
    assert_eq!(code(&run(&["generate", "--s53", "d12"])), 2);
}

#[test]
fn generated_reduction_holds_in_generated_model() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "d1.json", START_THEN_FILL);
    let phi = dir.path().join("fin.txt");
    let model = dir.path().join("model.json");
    assert_eq!(code(&run(&["generate", "--phi-d-fin", s(&d), "-o", s(&phi)])), 0);
    assert_eq!(code(&run(&["generate", "--tiling-model", s(&d), "-o", s(&model)])), 0);
    let o = run(&["check", s(&model), "--formula-file", s(&phi), "--at", "r1"]);
    assert_eq!((code(&o), stdout(&o)), (0, "true\n".to_string()));

    let a = run(&["generate", "--phi-d", s(&d)]);
    let b = run(&["generate", "--phi-d", s(&d)]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);

    let no_start = write(&dir, "d0.json", r#"{"tiles":["s"],"h":[],"v":[]}"#);
    assert_eq!(code(&run(&["generate", "--phi-d-fin", s(&no_start)])), 2);
    assert_eq!(code(&run(&["generate", "--phi-d-recurring", s(&no_start)])), 2);
}

#[test]
fn machine_to_domino() {
    let dir = TempDir::new().unwrap();
    let m = write(
        &dir,
        "m.json",
        &topomodal::reductions::marker_machine().to_json(),
    );
    let o = run(&["generate", "--tm-to-domino", s(&m)]);
    assert_eq!(code(&o), 0);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["s0"], "<q0,b,L>");

    let broken = write(&dir, "broken.json", r#"{"states":[]}"#);
    assert_eq!(code(&run(&["generate", "--tm-to-domino", s(&broken)])), 2);
}

#[test]
fn validate_structures_and_tables() {
    let dir = TempDir::new().unwrap();
    let good = write(
        &dir,
        "good.json",
        r#"{"kind":"rcc8","regions":["a","b"],"matrix":[["eq","tpp"],["tppi","eq"]]}"#,
    );
    let o = run(&["validate", "--structure", s(&good)]);
    assert_eq!((code(&o), stdout(&o)), (0, "ok\n".to_string()));

    let bad = write(
        &dir,
        "bad.json",
        r#"{"kind":"rcc8","regions":["a","b","c"],
            "matrix":[["eq","tpp","dc"],["tppi","eq","tpp"],["dc","tppi","eq"]]}"#,
    );
    let o = run(&["validate", "--structure", s(&bad)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("triangle (0,1,2)"));

    let junk = write(&dir, "junk.json", r#"{"kind":"rcc8","regions":["a"],"matrix":[["xx"]]}"#);
    assert_eq!(code(&run(&["validate", "--structure", s(&junk)])), 2);

    let o = run(&["validate", "--tables"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("rcc8\t0 violations\nrcc5\t0 violations\n"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["generate"])), 2);
    assert_eq!(code(&run(&["generate", "--loeb", "--ec-k", "2"])), 2);
    assert_eq!(code(&run(&["suite", "--level", "slow"])), 2);
    assert_eq!(code(&run(&["suite", "--seed", "nope"])), 2);
}

#[test]
fn quick_suite_passes() {
    let o = run(&["suite", "--level", "quick", "--seed", "0x5eed"]);
    let text = stdout(&o);
    assert_eq!(code(&o), 0, "{text}");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[11], "PASS 11/11");
    assert!(lines[..11].iter().all(|l| l.split('\t').nth(2) == Some("PASS")));
}
