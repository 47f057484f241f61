use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

use stokes_gauss::io_cli::{self, Document};
use stokes_gauss::stokes_core::samples::e1;

const E1: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/E1.json");

fn run(args: &[&str]) -> (i32, Value) {
    run_stdin(args, "")
}

fn run_stdin(args: &[&str], stdin: &str) -> (i32, Value) {
    let argv = std::iter::once("stokes-gauss").chain(args.iter().copied());
    let (code, out) = io_cli::run(argv, &mut stdin.as_bytes());
    (code, serde_json::from_str(&out).unwrap_or(Value::Null))
}

fn binary(args: &[&str], stdin: &str, env: Option<(&str, &str)>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_stokes-gauss"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::null());
    cmd.env_remove(io_cli::SEED_ENV);
    if let Some((k, v)) = env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn e1_file_is_canonical() {
    let text = std::fs::read_to_string(E1).unwrap();
    assert_eq!(text, io_cli::serialize(&Document::Matrices(e1())));
}

#[test]
fn rigidity_of_e1() {
    let (code, v) = run(&["rigidity", E1]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "report");
    assert_eq!(v["field"], "Q");
    assert_eq!(v["payload"], serde_json::json!({"rig": 4, "rigid": false}));
}

#[test]
fn strict_cohomology_of_e1() {
    let (code, v) = run(&["cohomology", "--c0", "3/1", E1, "--strict"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["h0"], 0);
    assert_eq!(v["payload"]["h1"], 4);
    assert_eq!(v["payload"]["chi"], -4);
}

#[test]
fn disc_cohomology_of_e1() {
    let (code, v) = run(&["disc-cohomology", E1]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"], serde_json::json!({"h0": 0, "h1": 2, "h2": 0}));
}

#[test]
fn generated_data_validates_through_a_pipe() {
    let (code, gen) = binary(&["gen-random", "--n", "2", "--ranks", "1,1", "--seed", "7"], "", None);
    assert_eq!(code, 0);
    let (code, out) = binary(&["validate", "-"], &gen, None);
    assert_eq!(code, 0, "{}", out);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["payload"]["valid"], true);
}

#[test]
fn output_is_deterministic() {
    let args = ["gen-random", "--ranks", "2,1,1", "--seed", "11", "--aligned"];
    let (_, a) = binary(&args, "", None);
    let (_, b) = binary(&args, "", None);
    assert_eq!(a, b);
    let (_, c) = binary(&["gen-random", "--ranks", "2,1,1", "--seed", "12", "--aligned"], "", None);
    assert_ne!(a, c);
    let (_, d) = binary(&["gen-random", "--ranks", "2,1,1", "--seed", "99", "--aligned"], "", Some((io_cli::SEED_ENV, "11")));
    assert_eq!(a, d, "environment seed overrides --seed");
    assert!(a.ends_with("}\n"));
}

#[test]
fn every_output_reparses() {
    let (_, gen) = binary(&["gen-random", "--ranks", "1,2", "--seed", "3", "--aligned"], "", None);
    for cmd in [&["normalize", "-"][..], &["to-filtrations", "-"], &["laplace", "-"], &["rigidity", "-"], &["splitting", "-"], &["disc-cohomology", "-"]] {
        let (code, out) = binary(cmd, &gen, None);
        assert_eq!(code, 0, "{:?}: {}", cmd, out);
        let doc = io_cli::parse(&out).unwrap();
        assert_eq!(io_cli::serialize(&doc), out, "{:?}", cmd);
    }
}

#[test]
fn conversions_and_laplace_round_trip() {
    let (_, gen) = binary(&["gen-random", "--ranks", "2,1", "--seed", "5", "--aligned"], "", None);
    let (_, filt) = binary(&["to-filtrations", "-"], &gen, None);
    let (_, mats) = binary(&["to-matrices", "-"], &filt, None);
    let (_, norm) = binary(&["normalize", "-"], &gen, None);
    assert_eq!(mats, norm);
    let (code, there) = binary(&["laplace", "-"], &filt, None);
    assert_eq!(code, 0);
    assert!(there.contains("stokes-filtrations"));
    let (_, back) = binary(&["laplace", "--inverse", "-"], &there, None);
    assert_eq!(back, filt);
}

#[test]
fn verify_laplace_reports_cases() {
    let (code, v) = run(&["verify-laplace", "--samples", "3", "--seed", "2"]);
    assert_eq!(code, 0, "{}", v);
    let p = &v["payload"];
    assert_eq!(p["pass"], true);
    assert_eq!(p["mode"], "modulus-rational");
    let cases = p["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 12);
    for c in cases {
        for key in ["nu", "gamma", "oracle_dim", "predicted_dim", "equal"] {
            assert!(c.get(key).is_some(), "{}", key);
        }
        assert_eq!(c["oracle_dim"], c["predicted_dim"]);
    }
}

#[test]
fn parse_errors_exit_2_with_path() {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(E1).unwrap()).unwrap();
    v["payload"]["S10"][0][1] = Value::String("1/0".into());
    let (code, out) = run_stdin(&["validate", "-"], &v.to_string());
    assert_eq!(code, 2);
    assert_eq!(out["error"]["kind"], "ParseError");
    assert_eq!(out["error"]["path"], "/payload/S10/0/1");

    v["payload"].as_object_mut().unwrap().remove("S03");
    let (code, out) = run_stdin(&["normalize", "-"], &v.to_string());
    assert_eq!(code, 2);
    assert_eq!(out["error"]["path"], "/payload/S03");
}

#[test]
fn validation_failure_exits_1() {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(E1).unwrap()).unwrap();
    v["payload"]["S10"][0][1] = Value::String("5/1".into());
    let (code, out) = run_stdin(&["validate", "-"], &v.to_string());
    assert_eq!(code, 1);
    assert_eq!(out["payload"]["valid"], false);
    assert!(!out["payload"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn precondition_failure_exits_2() {
    let (_, gen) = binary(&["gen-random", "--ranks", "1,1", "--seed", "1"], "", None);
    let (code, out) = run_stdin(&["laplace", "-"], &gen);
    assert_eq!(code, 2);
    assert_eq!(out["error"]["kind"], "NotAligned");
    assert_eq!(out["error"]["path"], Value::Null);
    let (code, out) = run(&["cohomology", "--c0", "zz", E1]);
    assert_eq!(code, 2);
    assert_eq!(out["error"]["kind"], "ParseError");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["no-such-command"]).0, 64);
    assert_eq!(run(&["rigidity"]).0, 64);
    assert_eq!(run(&["gen-random", "--n", "3", "--ranks", "1,1"]).0, 64);
    assert_eq!(binary(&["cohomology", E1], "", None).0, 64);
}
