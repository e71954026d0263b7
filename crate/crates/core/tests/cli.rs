use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn sbp<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_sbp")).args(args).output().expect("sbp runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn verify_accepts_e1() {
    let out = sbp(["verify".as_ref(), data("e1.json").as_os_str()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let r = &v["results"][0];
    assert_eq!(r["name"], "E1");
    assert_eq!(r["semibiproduct"], true);
    assert_eq!(r["schreier"], false);
    assert_eq!(r["schreier_witness"], serde_json::json!(["s", "t"]));
}

#[test]
fn verify_names_the_sign_failure() {
    let out = sbp(["verify".as_ref(), data("e1_sign.json").as_os_str()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("k not homomorphism at (s,s)"), "{text}");
}

#[test]
fn dangling_reference_is_a_usage_error() {
    let out = sbp(["verify".as_ref(), data("dangling.json").as_os_str()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("sbp: ") && err.contains("\"C\""), "{err}");
}

#[test]
fn missing_file_and_bad_arguments() {
    assert_eq!(sbp(["verify", "/nonexistent/x.json"]).status.code(), Some(2));
    assert_eq!(sbp(["frobnicate"]).status.code(), Some(2));
    assert_eq!(sbp(["enumerate-actions", "--x", "nope", "--b", "Z2"]).status.code(), Some(2));
}

#[test]
fn broken_action_fails_validation() {
    let out = sbp(["validate-action".as_ref(), data("broken_action.json").as_os_str()]);
    assert_eq!(out.status.code(), Some(1));
    let ok = sbp(["validate-action".as_ref(), data("e1_action.json").as_os_str()]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stdout));
}

#[test]
fn extract_then_synthesize_round_trips() {
    let dir = std::env::temp_dir().join(format!("sbp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = sbp(["extract".as_ref(), data("e1.json").as_os_str()]);
    assert_eq!(out.status.code(), Some(0));
    let line = String::from_utf8(out.stdout).unwrap();
    let first = line.lines().next().expect("one action");
    let action = dir.join("action.json");
    std::fs::write(&action, first).unwrap();
    let synth = sbp(["synthesize".as_ref(), action.as_os_str()]);
    assert_eq!(synth.status.code(), Some(0), "{}", String::from_utf8_lossy(&synth.stderr));
    let bundle = dir.join("bundle.json");
    std::fs::write(&bundle, String::from_utf8(synth.stdout).unwrap().lines().next().unwrap()).unwrap();
    let verified = sbp(["verify".as_ref(), bundle.as_os_str()]);
    assert_eq!(verified.status.code(), Some(0), "{}", String::from_utf8_lossy(&verified.stdout));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn enumeration_streams_then_summarizes() {
    let out = sbp(["enumerate-actions", "--x", "Z2", "--b", "Z2", "--classify"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> =
        String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let (summary, actions) = lines.split_last().unwrap();
    assert_eq!(actions.len(), 2);
    assert_eq!(summary["summary"]["actions"], 2);
    assert_eq!(summary["summary"]["classes"], 2);
}

#[test]
fn budget_is_never_truncated() {
    let out = sbp(["--budget", "5", "enumerate-actions", "--x", "Z3", "--b", "Z2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn recognizer_and_corecognizer() {
    let out = sbp(["check-recognizer".as_ref(), "--map".as_ref(), "E1.k".as_ref(), data("e1.json").as_os_str()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let co = sbp(["check-recognizer".as_ref(), "--co".as_ref(), "--map".as_ref(), "E1.p".as_ref(), data("e1.json").as_os_str()]);
    // p is surjective, so nothing nonzero is killed by precomposition
    assert_eq!(co.status.code(), Some(0), "{}", String::from_utf8_lossy(&co.stdout));
    assert_eq!(json(&co)["report"]["counterexample"], Value::Null);
}

#[test]
fn examples_have_fixed_exit_codes() {
    for (name, code) in [("paper-e1", 0), ("paper-nat", 0), ("s3", 0), ("e1-sign", 1)] {
        assert_eq!(sbp(["examples", name]).status.code(), Some(code), "{name}");
    }
}

#[test]
fn text_format_reproduces_the_tables() {
    let out = sbp(["--format", "text", "examples", "paper-e1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0R1 | 0R1 | sR1 | 0Rt"), "{text}");
    assert!(text.contains("semi-biproduct: yes, Schreier: no"));
}

#[test]
fn output_is_independent_of_jobs() {
    let args = ["enumerate-actions", "--x", "M3.2", "--b", "M2.1", "--classify"];
    let one = sbp(["--jobs", "1"].iter().chain(&args));
    let many = sbp(["--jobs", "4"].iter().chain(&args));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}
