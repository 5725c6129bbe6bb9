use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homobraid")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    serde_json::from_str(text.lines().next().unwrap()).unwrap()
}

#[test]
fn dims_of_slope_three_halves() {
    let v = json(&["dims", "--type", "A", "--rank", "1", "--slope", "3/2"]);
    assert_eq!(v["dim_M"], 2);
    assert_eq!(v["dim_A"], 1);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["manifest"]["inputs"]["slope"], "3/2");
}

#[test]
fn slope_braid_five_halves() {
    let v = json(&["braid", "--type", "A", "--rank", "1", "--slope", "5/2"]);
    assert_eq!(v["letters"], serde_json::json!([1, 1, 1, 1, 1]));
}

#[test]
fn full_type_names_are_accepted() {
    let v = json(&["degrees", "--type", "E8"]);
    assert_eq!(v["coxeter_number"], 30);
    assert_eq!(v["weyl_group_order"], 696729600);
    let v = json(&["regular-numbers", "--type", "B", "--rank", "2"]);
    assert_eq!(v["regular_numbers"], serde_json::json!([1, 2, 4]));
}

#[test]
fn invalid_inputs_exit_2() {
    for args in [
        &["degrees", "--type", "A", "--rank", "0"][..],
        &["dims", "--type", "A", "--rank", "2", "--slope", "2/4"],
        &["dims", "--type", "A", "--rank", "2", "--slope", "1/4"],
        &["braid-nf", "--type", "A2", "--braid", "1,3"],
        &["count", "asf", "--n", "2", "--d", "4", "--q", "3"],
        &["count", "betti", "--n", "2", "--braid", "1", "--q", "6"],
        &["degrees"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn budget_exit_4() {
    let out = run(&["count", "betti", "--n", "3", "--braid", "1,2,1,2", "--q", "3", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(out.stdout.is_empty());
}

#[test]
fn counts() {
    let v = json(&["count", "betti", "--n", "2", "--braid", "1,1,1", "--q", "3"]);
    assert_eq!(v["stacky"], "27");
    let v = json(&["count", "betti", "--n", "2", "--braid", "1,1,1", "--q", "3", "--constraint", "unipotent"]);
    assert_eq!(v["stacky"], "13");
    let v = json(&["count", "betti", "--n", "2", "--braid", "1,1,1", "--q", "3", "--constraint", "kappa"]);
    let total: u64 = v["per_kappa"].as_array().unwrap().iter().map(|e| e["raw"].as_u64().unwrap()).sum();
    assert_eq!(total, v["raw"].as_u64().unwrap());
    let v = json(&["count", "asf", "--n", "2", "--d", "3", "--q", "3"]);
    assert_eq!((v["count"].as_u64(), v["window"].as_u64(), v["stable"].as_bool()), (Some(7), Some(4), Some(true)));
}

#[test]
fn gauge_round_trip() {
    let v = json(&["gauge", "--n", "2", "--d", "3", "--depth", "8", "--seed", "7"]);
    assert_eq!(v["residual_zero"], true);
    assert!(!v["factors"].as_array().unwrap().is_empty());
}

#[test]
fn identical_seeds_give_identical_bytes() {
    for args in [
        &["gauge", "--n", "3", "--d", "2", "--depth", "6", "--seed", "42"][..],
        &["grading", "--type", "E6", "--slope", "1/9", "--seed", "5"],
        &["braid", "--type", "B3", "--slope", "1/3", "--seed", "9"],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn timing_and_tsv() {
    let v = json(&["degrees", "--type", "G2", "--timing"]);
    assert!(v["manifest"]["wall_time_ms"].is_number());
    let v = json(&["degrees", "--type", "G2"]);
    assert!(v["manifest"].get("wall_time_ms").is_none());
    let out = run(&["degrees", "--type", "G2", "--tsv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().skip(1).collect::<Vec<_>>(), vec!["2\t1", "6\t5"]);
}

#[test]
fn thread_count_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_homobraid"))
        .args(["count", "asf", "--n", "3", "--d", "2", "--q", "2"])
        .env("HOMOBRAID_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_homobraid"))
        .args(["degrees", "--type", "A1"])
        .env("HOMOBRAID_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
