use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn data(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    dir.join(name).to_string_lossy().into_owned()
}

fn rlk(args: &[&str]) -> Output {
    rlk_with(args, None, &[])
}

fn rlk_with(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rlk"));
    cmd.args(args)
        .env_remove("RLK_SEED")
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.stdin(if stdin.is_some() { Stdio::piped() } else { Stdio::null() });
    let mut child = cmd.spawn().expect("binary runs");
    if let Some(text) = stdin {
        // The binary may exit before reading, e.g. on a usage error.
        let _ = child.stdin.take().unwrap().write_all(text.as_bytes());
    }
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn reynolds_operator_on_a1() {
    let a1 = data("a1.json");
    let op = data("r1.json");
    let o = rlk(&["check", "reynolds", "--alg", &a1, "--op", &op, "--lambda", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["holds"], true);
}

#[test]
fn abelian_plane_is_leibniz() {
    let o = rlk(&["check", "leibniz", "--alg", &data("zero2.json")]);
    assert_eq!(code(&o), 0);
}

#[test]
fn clybe_violation_reports_defect() {
    let o = rlk(&["check", "clybe", "--alg", &data("a1.json"), "--r", &data("bad_r.json")]);
    assert_eq!(code(&o), 2);
    let report = json(&o);
    assert_eq!(report["holds"], false);
    let defect: Vec<(u64, u64, u64, String)> = report["defect"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let idx = |k: &str| e[k].as_u64().unwrap();
            (idx("i"), idx("j"), idx("k"), e["v"].as_str().unwrap().to_owned())
        })
        .collect();
    assert_eq!(
        defect,
        vec![(1, 2, 2, "-2".into()), (2, 1, 2, "1".into()), (2, 2, 1, "1".into())]
    );
}

#[test]
fn coboundary_on_a1() {
    let o = rlk(&[
        "construct",
        "coboundary",
        "--alg",
        &data("a1.json"),
        "--r",
        &data("r_eta1_gamma1.json"),
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["delta"].as_array().unwrap().len(), 1);
    assert_eq!(v["delta"][0]["i"], 2);
    assert_eq!(v["delta"][0]["terms"], serde_json::json!([{"j": 1, "k": 1, "v": "1"}]));
}

#[test]
fn induced_by_zero_operator_is_abelian() {
    let o = rlk(&[
        "construct",
        "induced",
        "--alg",
        &data("a1.json"),
        "--op",
        &data("zero.json"),
        "--lambda",
        "1",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["brackets"], serde_json::json!([]));
}

#[test]
fn double_has_dimension_four() {
    let o = rlk(&[
        "construct",
        "double",
        "--alg",
        &data("a1.json"),
        "--delta",
        &data("d.json"),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["algebra"]["dim"], 4);
}

#[test]
fn stdin_input() {
    let text = std::fs::read_to_string(data("a1.json")).unwrap();
    let o = rlk_with(&["check", "leibniz", "--alg", "-"], Some(&text), &[]);
    assert_eq!(code(&o), 0);
    let o = rlk_with(
        &["check", "reynolds", "--alg", "-", "--op", "-", "--lambda", "1"],
        Some(&text),
        &[],
    );
    assert_eq!(code(&o), 1, "two inputs cannot share stdin");
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("delta.json");
    let args = [
        "construct",
        "coboundary",
        "--alg",
        &data("a1.json"),
        "--r",
        &data("r_eta1_gamma1.json"),
    ];
    let printed = rlk(&args).stdout;
    let mut with_out = args.to_vec();
    let p = path.to_string_lossy().into_owned();
    with_out.extend(["--out", &p]);
    assert_eq!(code(&rlk(&with_out)), 0);
    assert_eq!(std::fs::read(&path).unwrap(), printed);
    let o = rlk(&["construct", "double", "--alg", &data("a1.json"), "--delta", &p]);
    assert_eq!(code(&o), 0);
}

#[test]
fn reports_are_deterministic() {
    let args = ["family", "a2i-c", "--seed", "3"];
    assert_eq!(rlk(&args).stdout, rlk(&args).stdout);
    let other = rlk(&["family", "a2i-c", "--seed", "4"]).stdout;
    assert_ne!(rlk(&args).stdout, other);
}

#[test]
fn seed_variable_overrides_flag() {
    let from_flag = rlk(&["family", "a2i-c", "--seed", "4"]).stdout;
    let from_env = rlk_with(&["family", "a2i-c", "--seed", "3"], None, &[("RLK_SEED", "4")]).stdout;
    assert_eq!(from_flag, from_env);
    let bad = rlk_with(&["family", "a2i-c"], None, &[("RLK_SEED", "seven")]);
    assert_eq!(code(&bad), 1);
}

#[test]
fn classify_exit_codes() {
    let complete = rlk(&["classify", "--algebra", "A1", "--p", "3", "--lambda", "1"]);
    assert_eq!(code(&complete), 0);
    let report = json(&complete);
    assert_eq!(report["solutions"].as_array().unwrap().len(), 12);
    assert_eq!(report["unmatched"], serde_json::json!([]));

    let finding = rlk(&[
        "classify",
        "--case",
        "a1",
        "--r-params",
        "eta=0,gamma=1",
        "--p",
        "3",
        "--lambda",
        "1",
    ]);
    assert_eq!(code(&finding), 3);
    assert!(!json(&finding)["unmatched"].as_array().unwrap().is_empty());

    let bad = rlk(&["classify", "--algebra", "A1", "--p", "4", "--lambda", "1"]);
    assert_eq!(code(&bad), 1);
}

#[test]
fn enumerate_lists_solutions() {
    let o = rlk(&["enumerate", "--algebra", "A1", "--p", "3", "--lambda", "0"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["count"], 15);
    assert_eq!(v["solutions"].as_array().map(Vec::len), Some(15));
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(code(&rlk(&["check", "leibniz", "--alg", "/nonexistent.json"])), 1);
    assert_eq!(code(&rlk(&["check", "leibniz", "--alg", &data("r1.json")])), 1);
    assert_eq!(code(&rlk(&["check", "no-such-kind"])), 1);
    assert_eq!(code(&rlk(&["check", "reynolds", "--alg", &data("a1.json")])), 1);
    let mismatched = rlk(&[
        "check",
        "reynolds",
        "--alg",
        &data("a1.json"),
        "--op",
        &data("r1.json"),
        "--lambda",
        "x",
    ]);
    assert_eq!(code(&mismatched), 1);
}

#[test]
fn verify_suite_passes() {
    let o = rlk(&["verify", "--suite", "representations", "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let o = rlk(&["verify", "--suite", "nope"]);
    assert_eq!(code(&o), 1);
}
