use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn tiltkit(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tiltkit"))
        .args(args)
        .env_remove("TILTKIT_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn help_exits_zero() {
    assert_eq!(tiltkit(&["--help"], "").status.code(), Some(0));
    assert_eq!(tiltkit(&["verify", "--help"], "").status.code(), Some(0));
}

#[test]
fn unknown_suite_and_kind_exit_two() {
    let o = tiltkit(&["--json-errors", "verify", "--suite", "nope"], "");
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "UnknownSuite");

    let o = tiltkit(&["--json-errors", "gen", "nope"], "");
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "UnknownKind");
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(tiltkit(&["verify"], "").status.code(), Some(2));
    assert_eq!(tiltkit(&["--bounds", "x", "gen", "group"], "").status.code(), Some(2));
}

#[test]
fn invalid_b_object_exits_one() {
    // [Z →0 Z] has H⁰ = Z, which is not finite.
    let input = r#"{"d":{"src":{"ambient_rank":1,"relations":[[]]},"dst":{"ambient_rank":1,"relations":[[]]},"lift":[["0"]]}}"#;
    let o = tiltkit(&["--json-errors", "b", "validate"], input);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "NotBObject");
}

#[test]
fn malformed_json_exits_one() {
    assert_eq!(tiltkit(&["group", "snf"], "{").status.code(), Some(1));
}

#[test]
fn reports_are_deterministic_apart_from_duration() {
    let run = |seed: &str| {
        let o = tiltkit(&["--seed", seed, "--trials", "12", "verify", "--suite", "b-laws"], "");
        assert_eq!(o.status.code(), Some(0));
        let mut v = json_out(&o);
        v.as_object_mut().unwrap().remove("duration_ms");
        v
    };
    assert_eq!(run("7"), run("7"));
    assert_eq!(run("7")["seed"], 7);
}

#[test]
fn seed_comes_from_the_environment() {
    let gen = |env: Option<&str>, args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_tiltkit"));
        cmd.args(args).env_remove("TILTKIT_SEED");
        if let Some(s) = env {
            cmd.env("TILTKIT_SEED", s);
        }
        cmd.output().unwrap().stdout
    };
    let from_env = gen(Some("9"), &["--trials", "3", "gen", "butterfly"]);
    let from_flag = gen(None, &["--seed", "9", "--trials", "3", "gen", "butterfly"]);
    let default = gen(None, &["--trials", "3", "gen", "butterfly"]);
    assert_eq!(from_env, from_flag);
    assert_ne!(from_env, default);
}

#[test]
fn generated_instances_feed_data_commands() {
    let o = tiltkit(&["--trials", "4", "gen", "butterfly"], "");
    assert_eq!(o.status.code(), Some(0));
    for inst in json_out(&o).as_array().unwrap() {
        let c = tiltkit(&["b", "classify"], &inst.to_string());
        assert_eq!(c.status.code(), Some(0), "{}", String::from_utf8_lossy(&c.stderr));
    }
}

#[test]
fn out_flag_writes_the_file() {
    let path = std::env::temp_dir().join(format!("tiltkit-out-{}.json", std::process::id()));
    let o = tiltkit(&["--out", path.to_str().unwrap(), "group", "snf"], r#"{"matrix":[["2","4"],["6","8"]]}"#);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["diagonal"], serde_json::json!(["2", "4"]));
}

#[test]
fn single_trial_replays_the_full_run() {
    let o = tiltkit(&["--trials", "5", "verify", "--suite", "classify-oracle", "--trial", "3"], "");
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["trials"], 1);
    assert_eq!(tiltkit(&["--trials", "5", "verify", "--suite", "classify-oracle", "--trial", "5"], "").status.code(), Some(2));
}
