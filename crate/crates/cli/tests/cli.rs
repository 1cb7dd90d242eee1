use std::fs;
use std::process::{Command, Output};

use defcalc::algebra::pmn;
use defcalc::json::algebra_to_json;
use defcalc::Field;
use serde_json::{json, Value};

fn defcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_defcalc")).args(args).output().expect("binary runs")
}

/// Runs with `--json` and returns the parsed output and exit code.
fn run_json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = defcalc(&full);
    let value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (value, out.status.code().expect("exit code"))
}

#[test]
fn defspace_examples() {
    let (v, code) = run_json(&["defspace", "--algebra", "pmn:1,1", "--d", "2", "--field", "Q"]);
    assert_eq!(code, 0);
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["representatives"].as_array().unwrap().len(), 2);

    let (v, _) = run_json(&["defspace", "--algebra", "cpn:2", "--d", "3"]);
    assert_eq!(v["dimension"], 0);

    let (v, _) = run_json(&["defspace", "--algebra", "cpn:2", "--d", "2", "--field", "Fp:3"]);
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["field"], "Fp:3");
}

#[test]
fn bound_and_lambda_bound() {
    let (v, code) = run_json(&["bound", "--m", "1", "--n", "1", "--k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["bound"], 2);
    let (v, _) = run_json(&["lambda-bound", "--m", "2", "--n", "1", "--k", "3"]);
    assert_eq!(v["covered"], true);
    assert_eq!(v["bound"], 1);
}

#[test]
fn cusp_examples() {
    let (v, code) = run_json(&["cusp", "--lambda", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["feasible"], false);
    let (v, _) = run_json(&["cusp", "--lambda", "5/2"]);
    assert_eq!(v["feasible"], true);
    assert_eq!(v["solutions"], json!([[-1, 3], [1, -2]]));
}

#[test]
fn qext_trivial_and_infeasible() {
    for factor in ["1", "2"] {
        let (v, code) = run_json(&["qext", "--algebra", "pmn:1,1", "--d", "2", "--factor", factor]);
        assert_eq!(code, 0);
        assert_eq!(v["feasible"], true);
        assert_eq!(v["verified"], true);
    }
    let (v, code) = run_json(&["qext", "--algebra", "pmn:1,1", "--d", "2", "--factor", "2", "--a", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["feasible"], false);
    assert!(!v["certificate"]["equations"].as_array().unwrap().is_empty());
}

#[test]
fn classify_split_semisplit() {
    let deformation = ["--algebra", "pmn:2,1", "--d", "4", "--a", "1,2", "--b", "3"];
    let with = |cmd: &str| {
        let mut args = vec![cmd];
        args.extend_from_slice(&deformation);
        run_json(&args)
    };
    let (v, _) = with("classify");
    assert_eq!(v["a"], json!({"u^0*v^1": "1", "u^1*v^0": "2"}));
    assert_eq!(v["b"], json!({"u^0*v^0": "3"}));
    let (v, _) = with("split");
    assert_eq!(v["split"], false);
    let (v, code) = with("semisplit");
    assert_eq!(code, 0);
    assert_eq!(v["factors"][0]["semisplit"], false);
    assert_eq!(v["factors"][1]["semisplit"], true);
    assert_eq!(v["factors"][1]["witness_verified"], true);

    let (v, _) = run_json(&["classify", "--algebra", "cpn:3", "--d", "4", "--a", "5/2"]);
    assert_eq!(v["alpha"], "5/2");
}

#[test]
fn coords_round_trip_through_classify() {
    let (v, code) = run_json(&["classify", "--algebra", "pmn:1,1", "--d", "4", "--coords", "0,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["trivial"], true);
    let (_, code) = run_json(&["classify", "--algebra", "pmn:1,1", "--d", "4", "--coords", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn pipeline_is_independent_of_jobs() {
    let a = defcalc(&["--json", "--jobs", "1", "pipeline", "--m", "2", "--n", "1"]);
    let b = defcalc(&["--json", "--jobs", "4", "pipeline", "--m", "2", "--n", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let dims: Vec<i64> = v["rows"].as_array().unwrap().iter().map(|r| r["d"].as_i64().unwrap()).collect();
    assert_eq!(dims, [2, 4, 6]);
    assert_eq!(v["rows"][1]["feasible_dims"], json!([3, 2]));
}

#[test]
fn output_is_byte_stable() {
    let args = ["--json", "defspace", "--algebra", "pmn:2,1", "--d", "4"];
    assert_eq!(defcalc(&args).stdout, defcalc(&args).stdout);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bound.json");
    let out = defcalc(&["--json", "--output", path.to_str().unwrap(), "bound", "--m", "1", "--n", "1", "--k", "1"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["bound"], 2);
}

#[test]
fn file_algebras() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("p11.json");
    fs::write(&good, algebra_to_json(&pmn(1, 1, Field::Rational).unwrap()).to_string()).unwrap();
    let spec = format!("file:{}", good.display());
    let (v, code) = run_json(&["verify-algebra", "--algebra", &spec]);
    assert_eq!(code, 0);
    assert_eq!(v["valid"], true);
    let (v, _) = run_json(&["defspace", "--algebra", &spec, "--d", "2"]);
    assert_eq!(v["dimension"], 2);

    // x^2 = 1 with x in degree 2 breaks degree additivity
    let bad = dir.path().join("bad.json");
    let text = json!({
        "field": "Q",
        "basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": 2}],
        "unit": 0,
        "constants": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"], [1, 1, 0, "1"]]
    });
    fs::write(&bad, text.to_string()).unwrap();
    let (v, code) = run_json(&["verify-algebra", "--algebra", &format!("file:{}", bad.display())]);
    assert_eq!(code, 1);
    assert_eq!(v["valid"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(defcalc(&["defspace", "--algebra", "bogus", "--d", "2"]).status.code(), Some(2));
    assert_eq!(defcalc(&["bound", "--m", "1", "--n", "1", "--k", "2"]).status.code(), Some(2));
    assert_eq!(defcalc(&["cusp", "--lambda", "1/2"]).status.code(), Some(2));
    assert_eq!(defcalc(&["--field", "Fp:4", "defspace", "--algebra", "cpn:1", "--d", "2"]).status.code(), Some(2));
    assert_eq!(defcalc(&["defspace", "--algebra", "file:/nonexistent.json", "--d", "2"]).status.code(), Some(2));
}

#[test]
fn text_output_lists_fields() {
    let out = defcalc(&["bound", "--m", "1", "--n", "1", "--k", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "bound: 2"));
}
