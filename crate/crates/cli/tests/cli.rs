use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn pseudolab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseudolab"))
        .args(args)
        .env("PSEUDOLAB_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn field_on_constant_disc() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.csv");
    let out = pseudolab(&[
        "field", "--model", "shargorodsky", "--region", "-0.4,0.4,-0.4,0.4", "--nx", "9", "--ny", "9", "--out", path_str(&f),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&f).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,value"));
    let values: Vec<f64> = lines.map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(values.len(), 81);
    assert!(values.iter().all(|v| (v - 1.0).abs() < 1e-9));
}

#[test]
fn verify_global_min_passes() {
    let out = pseudolab(&["verify", "global-min", "--model", "shargorodsky", "--M", "1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["study"], "global-min");
    assert!(v["budget"]["grid_h"].is_number());
}

#[test]
fn failing_verdict_exits_one() {
    let out = pseudolab(&["verify", "global-min", "--model", "shargorodsky", "--M", "1.5", "--region", "-1,1,-1,1", "--nx", "5", "--ny", "5"]);
    assert_eq!(code(&out), 1);
    let out = pseudolab(&["verify", "constant-region", "--model", "nonconstant", "--probe", "2,3"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn hausdorff_of_a_file_with_itself_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    fs::write(&a, "re,im\n0,0\n1,2\n-3,0.5\n").unwrap();
    let out = pseudolab(&["hausdorff", "--a", path_str(&a), "--b", path_str(&a)]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "0");
}

#[test]
fn exported_mask_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.csv");
    let p = dir.path().join("p.csv");
    let out = pseudolab(&[
        "levelset", "--model", "diag_pair", "--region", "0,8,-2,2", "--nx", "33", "--ny", "17", "--epsilon", "1", "--out", path_str(&m),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    fs::write(&p, "re,im\n4,0\n").unwrap();
    let out = pseudolab(&["hausdorff", "--a", path_str(&m), "--b", path_str(&p)]);
    assert_eq!(code(&out), 0);
    let d: f64 = String::from_utf8_lossy(&out.stdout).trim().parse().unwrap();
    // farthest closed-ball point from 4 is 7 on the right ball
    assert!((d - 3.0).abs() < 1e-12, "{d}");
}

#[test]
fn matrix_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let mfile = dir.path().join("m.csv");
    fs::write(&mfile, "2,0,0,0\n0,0,6,0\n").unwrap();
    let out = pseudolab(&["field", "--matrix", path_str(&mfile), "--region", "0,4,0,1", "--nx", "2", "--ny", "2", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["values"][0], 0.5);
    fs::write(&mfile, "1,0,0\n").unwrap();
    assert_eq!(code(&pseudolab(&["field", "--matrix", path_str(&mfile), "--region", "0,1,0,1"])), 2);
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        vec!["field", "--model", "nope", "--region", "0,1,0,1"],
        vec!["field", "--model", "shargorodsky", "--region", "0,1,0"],
        vec!["field", "--model", "shargorodsky", "--region", "1,0,0,1"],
        vec!["field", "--model", "shargorodsky", "--bogus"],
        vec!["verify", "not-a-study"],
        vec!["levelset", "--model", "diag_pair", "--region", "0,1,0,1", "--epsilon", "-1"],
        vec!["verify", "counterexample-k", "--region", "0.5,8,-2,2"],
        vec!["decay", "--r-max", "20"],
        vec![],
    ] {
        let out = pseudolab(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn config_file_selects_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.json");
    fs::write(&c, r#"{"name": "diag_pair", "lambda1": 1, "lambda2": 4}"#).unwrap();
    let out = pseudolab(&["field", "--config", path_str(&c), "--region", "0,4,0,1", "--nx", "2", "--ny", "2"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("4,0,inf"));
    fs::write(&c, r#"{"name": "diag_pair", "colour": 1}"#).unwrap();
    assert_eq!(code(&pseudolab(&["field", "--config", path_str(&c), "--region", "0,1,0,1"])), 2);
}

#[test]
fn help_lists_examples_and_studies() {
    let out = pseudolab(&["--help"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    for name in pseudolab::EXAMPLE_NAMES.iter().chain(pseudolab::STUDY_NAMES.iter()) {
        assert!(text.contains(name), "missing {name}");
    }
}

#[test]
fn studies_run_from_the_command_line() {
    let out = pseudolab(&["verify", "empty-resolvent"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let out = pseudolab(&["verify", "counterexample-k", "--direction", "grow", "--ks", "2,8,32", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("x,value\n2,"));
    let out = pseudolab(&["converge", "--model", "diag_pair", "--scaling", "shrink", "--region", "1,7,-1.5,1.5", "--h", "0.05", "--ks", "4,8,16,32,64"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let out = pseudolab(&["decay"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn bad_thread_setting_is_a_configuration_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_pseudolab"))
        .args(["verify", "empty-resolvent"])
        .env("PSEUDOLAB_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}
