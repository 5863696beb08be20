//! End-to-end tests of the `permutokit` binary: JSON shapes, determinism,
//! exit codes, and the seed fallback.

use std::collections::BTreeSet;
use std::process::{Command, Output};

fn permutokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permutokit"))
        .args(args)
        .env_remove("PERMUTOKIT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn zonotope_vertices_known_hexagon() {
    let out = permutokit(&[
        "zonotope", "vertices", "--n", "3", "--c", "1,2=2", "--c", "2,3=1", "--c", "1,3=3",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["schema"], "permutokit/1");
    let got: BTreeSet<Vec<String>> = v["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| {
            row.as_array()
                .unwrap()
                .iter()
                .map(|s| s.as_str().unwrap().to_string())
                .collect()
        })
        .collect();
    let expected: BTreeSet<Vec<String>> = [
        ["0", "2", "4"],
        ["2", "0", "4"],
        ["5", "0", "1"],
        ["5", "1", "0"],
        ["3", "3", "0"],
        ["0", "3", "3"],
    ]
    .iter()
    .map(|r| r.iter().map(|s| s.to_string()).collect())
    .collect();
    assert_eq!(got, expected);
}

#[test]
fn zonotope_contains_and_render() {
    let inside = permutokit(&[
        "zonotope", "contains", "--n", "3", "--c", "1,2=2", "--c", "2,3=1", "--c", "1,3=3",
        "--x", "1,2,3",
    ]);
    assert_eq!(stdout_json(&inside)["contains"], true);
    let outside = permutokit(&[
        "zonotope", "contains", "--n", "3", "--c", "1,2=2", "--c", "2,3=1", "--c", "1,3=3",
        "--x", "6,0,0",
    ]);
    assert_eq!(stdout_json(&outside)["contains"], false);

    let svg = permutokit(&[
        "zonotope", "render", "--n", "3", "--c", "1,2=2", "--c", "2,3=1", "--c", "1,3=3",
    ]);
    assert!(svg.status.success());
    let text = String::from_utf8_lossy(&svg.stdout);
    assert!(text.starts_with("<svg"));
}

#[test]
fn triangulate_m4_lists_five_trees() {
    let out = permutokit(&["triangulate", "--m", "4"]);
    let v = stdout_json(&out);
    assert_eq!(v["count"], 5);
    assert_eq!(v["trees"].as_array().unwrap().len(), 5);
}

#[test]
fn amplitude_values() {
    let m = permutokit(&["amplitude", "m", "--s", "1,2,3"]);
    assert_eq!(stdout_json(&m)["value"], "1");
    let malpha = permutokit(&["amplitude", "malpha", "--q", "1/2,1/2"]);
    assert_eq!(stdout_json(&malpha)["value"], "3");
}

#[test]
fn check_mizera_passes() {
    let out = permutokit(&["check", "mizera", "--n", "5", "--samples", "100", "--seed", "7"]);
    let v = stdout_json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["samples"], 100);
    assert_eq!(v["seed"], 7);
}

#[test]
fn identical_argv_and_seed_is_byte_identical() {
    let args = [
        "check", "alternating-sum", "--n", "3", "--samples", "20", "--draws", "4", "--seed", "11",
    ];
    let a = permutokit(&args);
    let b = permutokit(&args);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_env_fallback() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_permutokit"))
        .args(["check", "cyclic-sum", "--m", "3", "--samples", "10"])
        .env("PERMUTOKIT_SEED", "42")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&with_env.stdout).unwrap();
    assert_eq!(v["seed"], 42);
    let with_flag = permutokit(&["check", "cyclic-sum", "--m", "3", "--samples", "10", "--seed", "42"]);
    assert_eq!(with_env.stdout, with_flag.stdout);
}

#[test]
fn usage_error_exits_2() {
    let out = permutokit(&["zonotope", "vertices"]); // missing --n
    assert_eq!(out.status.code(), Some(2));
    let bad_constant = permutokit(&["zonotope", "vertices", "--n", "3", "--c", "nonsense"]);
    assert_eq!(bad_constant.status.code(), Some(2));
}

#[test]
fn pole_and_degenerate_errors_exit_3() {
    let pole = permutokit(&["amplitude", "m", "--s", "0,1"]);
    assert_eq!(pole.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&pole.stderr).unwrap();
    assert_eq!(err["schema"], "permutokit/1");
    assert!(err["error"]["message"].as_str().unwrap().contains("pole"));

    let too_big = permutokit(&["triangulate", "--m", "40"]);
    assert_eq!(too_big.status.code(), Some(3));

    let neg = permutokit(&["zonotope", "vertices", "--n", "3", "--c", "1,2=-1"]);
    assert_eq!(neg.status.code(), Some(3));
}

#[test]
fn check_all_small_passes_quickly() {
    let start = std::time::Instant::now();
    let out = permutokit(&["check", "all", "--small", "--seed", "5"]);
    let v = stdout_json(&out);
    assert_eq!(v["passed"], true);
    assert!(!v["reports"].as_array().unwrap().is_empty());
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("permutokit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hexagon.svg");
    let out = permutokit(&[
        "zonotope", "render", "--n", "3", "--c", "1,2=1", "--c", "2,3=1", "--c", "1,3=1",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("<svg"));
    std::fs::remove_file(&path).ok();
}
