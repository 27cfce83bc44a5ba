use std::path::Path;
use std::process::{Command, Output};

use brauerkit::CommandReport;
use serde_json::{json, Value};

fn brauerkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauerkit")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> CommandReport {
    let out = brauerkit(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report parses")
}

fn write(dir: &Path, name: &str, value: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn documented_examples() {
    let split = report(&["quat", "split", "--", "-1", "-1"]);
    assert_eq!(split.result, json!({ "split": false, "obstructions": ["inf", "2"] }));

    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", &json!({ "permutation_generators": [[1, 2, 0]] }));
    let m = write(dir.path(), "m.json", &json!({ "rank": 1, "modulus": 3, "action": { "0": [[1]] } }));
    let h2 = report(&["cohomology", "--group", &g, "--module", &m, "--degree", "2"]);
    assert_eq!(h2.result, json!({ "free_rank": 0, "torsion": [3] }));

    let lr = report(&["lind-reichardt", "verify"]);
    assert_eq!(lr.result["verdict"], "empty");
    assert_eq!(lr.result["pairing_at_17"], "1/2");
}

#[test]
fn exit_codes() {
    assert_eq!(brauerkit(&["hilbert", "--place", "2", "3", "5"]).status.code(), Some(0));
    // A verdict is not an error.
    assert_eq!(brauerkit(&["qf", "isotropic", "1,1,1"]).status.code(), Some(0));
    let domain = brauerkit(&["qf", "disc", "1,2,3"]);
    assert_eq!(domain.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&domain.stdout).unwrap();
    assert_eq!(err["error"], "InvalidForm");
    assert_eq!(brauerkit(&["hilbert", "--place", "2", "3", "x"]).status.code(), Some(2));
    assert_eq!(brauerkit(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(brauerkit(&["bogomolov", "verify", "--prime", "9"]).status.code(), Some(1));
}

#[test]
fn seeded_runs_are_byte_identical() {
    for args in [
        &["--seed", "7", "quat", "split", "--trace", "--", "-3", "5"][..],
        &["--seed", "7", "selftest", "--only", "6"][..],
        &["--seed", "7", "qf", "clifford", "1,-2,-3,6"][..],
    ] {
        let a = brauerkit(args);
        let b = brauerkit(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let r: CommandReport = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(r.elapsed_ms, 0);
    }
}

#[test]
fn cohomology_inputs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", &json!({ "permutation_generators": [[1, 0, 2], [1, 2, 0]] }));
    // S3 acting on Z^2 by swapping coordinates through the sign.
    let m = write(dir.path(), "m.json", &json!({ "rank": 2, "modulus": 0, "action": { "0": [[0, 1], [1, 0]], "1": [[1, 0], [0, 1]] } }));
    let first = report(&["cohomology", "--group", &g, "--module", &m, "--degree", "1"]);
    let g2 = write(dir.path(), "g2.json", &first.inputs["group"]);
    let m2 = write(dir.path(), "m2.json", &first.inputs["module"]);
    let second = report(&["cohomology", "--group", &g2, "--module", &m2, "--degree", "1"]);
    assert_eq!(first.inputs, second.inputs);
    assert_eq!(first.result, second.result);

    let perm = report(&["perm-module", "--group", &g2, "--subgroup", "0,1", "--degree", "1"]);
    assert_eq!(perm.result["cohomology"], json!({ "free_rank": 0, "torsion": [] }));
    let again = report(&["perm-module", "--group", &write(dir.path(), "g3.json", &perm.inputs["group"]), "--subgroup", "0,1", "--degree", "1"]);
    assert_eq!(perm.inputs, again.inputs);
}

#[test]
fn form_and_symbol_inputs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for action in ["diag", "disc", "clifford", "isotropic"] {
        let first = report(&["qf", action, "1,-2,-3/4,6"]);
        let gram = write(dir.path(), "q.json", &first.inputs);
        let second = report(&["qf", action, "--gram", &gram]);
        assert_eq!(first.inputs, second.inputs, "{action}");
        assert_eq!(first.result, second.result, "{action}");
    }
    let first = report(&["quat", "invariants", "--", "-6/4", "10"]);
    let (a, b) = (first.inputs["a"].as_str().unwrap(), first.inputs["b"].as_str().unwrap());
    assert_eq!(a, "-3/2");
    let second = report(&["quat", "invariants", "--", a, b]);
    assert_eq!(first.inputs, second.inputs);
    assert_eq!(first.result, second.result);
}

#[test]
fn numeric_values_are_strings() {
    let r = report(&["hilbert", "--place", "inf", "-1", "-1"]);
    assert_eq!(r.inputs, json!({ "place": "inf", "a": "-1", "b": "-1" }));
    assert!(r.result.as_object().unwrap().values().all(Value::is_string), "{}", r.result);
    let q = report(&["qf", "isotropic", "1,-2,-7"]);
    assert!(q.result["witness"].as_array().unwrap().iter().all(Value::is_string));
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_brauerkit"))
        .args(["qf", "isotropic", "1,1,-2"])
        .env("BRAUERKIT_BUDGET", "not a number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
