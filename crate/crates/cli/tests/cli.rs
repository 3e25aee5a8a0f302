use std::process::{Command, Output};

fn ktf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ktf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn enumerate_two_topologies() {
    let out = ktf(&["enumerate", "-n", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("total 60"));
    assert!(text.contains("p(2) = 60"));
    let v = json(&ktf(&["enumerate", "-n", "3", "--format", "json"]));
    assert_eq!(v["total"], 157);
    assert_eq!(v["types"].as_array().unwrap().len(), 32);
}

#[test]
fn normalize_prints_canonical_forms() {
    let out = ktf(&["normalize", "-n", "2", "i1 f2 k1", "k2 i1", "c k1 c"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0\nk2 i*\ni1\n");
}

#[test]
fn orbit_of_the_empty_set() {
    let out = ktf(&[
        "orbit", "--model", "pmodel", "--set", "0x0", "--gens", "k1,c",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("2 sets"));
}

#[test]
fn orbit_json_of_the_34_set() {
    let out = ktf(&[
        "orbit", "--model", "set34", "--set", "p0,p1,p4", "--gens", "k1,f1,c", "--format", "json",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["size"], 34);
    assert_eq!(v["sets"][0]["witness"], "Id");
}

#[test]
fn poset_dot_and_json() {
    let out = ktf(&["poset", "--model", "kf1ref", "--dot"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("digraph order {"));
    let v = json(&ktf(&["poset", "--model", "kf1ref", "--format", "json"]));
    assert_eq!(v["elements"].as_array().unwrap().len(), 17);
}

#[test]
fn separate_reports_a_staircase() {
    let out = ktf(&["separate", "-n", "2", "k1", "k2"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("staircase:2:"));
    let bad = ktf(&["separate", "-n", "2", "k1", "k1 k1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn search_outcomes_and_exit_codes() {
    let v = json(&ktf(&[
        "search", "--target", "EVEN17", "--points", "5", "--format", "json",
    ]));
    assert_eq!(v["points"], 4);
    assert_eq!(v["minimal"], true);
    let none = ktf(&["search", "--target", "SET14", "--points", "6"]);
    assert_eq!(none.status.code(), Some(1));
    let beyond = ktf(&["search", "--target", "SET14", "--points", "9"]);
    assert_eq!(beyond.status.code(), Some(2));
}

#[test]
fn saved_witness_loads_as_a_model() {
    let path = std::env::temp_dir().join(format!("ktf-even17-{}.json", std::process::id()));
    let path_str = path.to_str().unwrap();
    let out = ktf(&[
        "search", "--target", "even17", "--points", "4", "--save", path_str,
    ]);
    assert!(out.status.success());
    let model = ktf(&["model", "--model", path_str]);
    assert!(model.status.success(), "{}", stdout(&model));
    let poset = json(&ktf(&["poset", "--model", path_str, "--format", "json"]));
    assert_eq!(poset["classes"].as_array().unwrap().len(), 17);
    std::fs::remove_file(path).ok();
}

#[test]
fn verify_single_suite() {
    let out = ktf(&["verify", "--suite", "inequalities"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("[PASS]  9"));
    let v = json(&ktf(&["verify", "--suite", "1", "--format", "json"]));
    assert_eq!(v["criteria"][0]["passed"], true);
    assert_eq!(ktf(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(ktf(&["normalize", "-n", "2", "q9"]).status.code(), Some(2));
    assert_eq!(ktf(&["normalize", "-n", "1", "k2"]).status.code(), Some(2));
    assert_eq!(ktf(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        ktf(&["orbit", "--model", "nosuch", "--set", "0x0", "--gens", "c"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ktf(&["enumerate", "-n", "2", "--format", "dot"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn model_validation() {
    let out = ktf(&["model", "--model", "pmodel"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("13 atoms, 2 topologies"));
    let v = json(&ktf(&[
        "model",
        "--model",
        "staircase:3:1",
        "--format",
        "json",
    ]));
    assert_eq!(v["valid"], true);
    assert_eq!(v["model"]["n"], 3);
}

#[test]
fn thread_cap_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_ktf"))
        .args(["normalize", "-n", "1", "k1"])
        .env("KTF_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
