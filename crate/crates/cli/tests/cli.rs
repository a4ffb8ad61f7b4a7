use std::process::{Command, Output};

use serde_json::Value;

fn cmcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmcert")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn eval_encloses_f0_at_one() {
    let out = cmcert(&["eval", "--fn", "f", "--lambda", "0", "--x", "1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let w = &v["checks"][0]["witnesses"][0];
    // π⁴/36 − 2ζ(3) − 13/48
    let oracle = std::f64::consts::PI.powi(4) / 36.0 - 2.0 * 1.202_056_903_159_594_3 - 13.0 / 48.0;
    let (lo, hi) = (w["lo"].as_f64().unwrap(), w["hi"].as_f64().unwrap());
    assert!(lo <= oracle + 1e-15 && oracle - 1e-15 <= hi, "[{lo}, {hi}]");
    assert!((oracle - 0.030_860_944_6).abs() < 1e-10);
    assert_eq!(v["command"], "eval");
    assert_eq!(v["summary"]["pass"], 1);
}

#[test]
fn kernel_verify_passes_and_lists_discrepancies() {
    let out = cmcert(&["kernel-verify"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["summary"]["fail"], 0);
    let names: Vec<&str> = v["discrepancies"].as_array().unwrap().iter().map(|d| d["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"q-coefficients/printed"));
}

#[test]
fn certify_cm_at_two_fails_with_a_negative_witness_near_zero() {
    let out = cmcert(&["certify-cm", "--lambda", "2", "--sign", "plus", "--orders", "1", "--grid", "log:1e-3:1e3:30"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    let n0 = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "cm/f/lambda=2/n=0").unwrap();
    assert_eq!(n0["status"], "fail");
    let w = n0["witnesses"].as_array().unwrap().iter().find(|w| w["status"] == "fail").unwrap();
    assert!(w["x"].as_f64().unwrap() < 1.0 && w["hi"].as_f64().unwrap() < 0.0);
}

#[test]
fn certify_cm_passes_for_f0() {
    let out = cmcert(&["certify-cm", "--lambda", "0", "--orders", "4", "--grid", "log:1e-2:1e2:20"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn usage_and_domain_errors() {
    assert_eq!(code(&cmcert(&["frobnicate"])), 2);
    assert_eq!(code(&cmcert(&["eval", "--fn", "f"])), 2);
    assert_eq!(code(&cmcert(&["eval", "--fn", "f", "--x", "1", "--lambda", "1/0"])), 2);
    assert_eq!(code(&cmcert(&["eval", "--fn", "nope", "--x", "1"])), 2);
    assert_eq!(code(&cmcert(&["certify-cm", "--lambda", "0", "--orders", "99"])), 2);
    assert_eq!(code(&cmcert(&["eval", "--fn", "f", "--x=-1"])), 3);
    assert_eq!(code(&cmcert(&["eval", "--fn", "S", "--x", "1", "--grid", "log:0:1:3"])), 2);
}

#[test]
fn parameters_are_exact_rationals() {
    let v = json(&cmcert(&["eval", "--fn", "B", "--lambda", "6/5", "--x", "0.1"]));
    assert_eq!(v["config"]["lambda"], "6/5");
    assert_eq!(v["config"]["x"], "1/10");
    let v = json(&cmcert(&["eval", "--fn", "B", "--lambda", "1.2", "--x", "1"]));
    assert_eq!(v["config"]["lambda"], "6/5");
    // B_{6/5}(1) = (1 + 6/5 + 12)/48 = 71/240
    let w = &v["checks"][0]["witnesses"][0];
    let want = 71.0 / 240.0;
    assert!(w["lo"].as_f64().unwrap() <= want && want <= w["hi"].as_f64().unwrap());
}

#[test]
fn reports_are_deterministic_across_thread_counts() {
    let args = ["bounds-check", "--grid", "log:1e-2:1e2:40"];
    let a = cmcert(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_cmcert")).args(args).env("CM_CERTIFY_THREADS", "1").output().unwrap();
    let c = Command::new(env!("CARGO_BIN_EXE_cmcert")).args(args).env("CM_CERTIFY_THREADS", "3").output().unwrap();
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(code(&cmcert(&["kernel-verify"])), 0);
    let bad = Command::new(env!("CARGO_BIN_EXE_cmcert")).arg("kernel-verify").env("CM_CERTIFY_THREADS", "zero").output().unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn csv_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("profile.csv");
    let p = path.to_str().unwrap();
    let out = cmcert(&["profile", "--grid", "log:1e-2:1e2:10", "--format", "csv", "--out", p]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("check,x,n,lo,hi,status"));
    assert!(lines.any(|l| l.starts_with("\"profile/in-(0,4)\",") && l.ends_with(",pass")));
}

#[test]
fn conjecture_scan_defaults_pass_and_violations_are_located() {
    let out = cmcert(&["conjecture-scan", "--grid", "log:1e-2:1e2:30"]);
    assert_eq!(code(&out), 0);
    let out = cmcert(&["conjecture-scan", "--alpha", "1", "--beta", "1", "--grid", "log:1e-2:1e2:30"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    let c = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "conjecture/alpha=1").unwrap();
    assert_eq!(c["status"], "fail");
    assert!(c["witnesses"].as_array().unwrap().iter().any(|w| w["status"] == "fail" && w["x"].is_number()));
}

#[test]
fn sharpness_and_laplace_subcommands() {
    let out = cmcert(&["sweep-sharpness", "--lambda", "1,2,3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["summary"]["total"], 6);
    let out = cmcert(&["laplace-check", "--lambda", "0", "--x", "1,2"]);
    assert_eq!(code(&out), 0);
}
