use std::io::Write;
use std::process::{Command, Stdio};

use pencil::io::{pencil_from_json, witness_from_json};
use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pencil"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

const ZERO_1X1: &str = r#"{"m": 1, "n": 1, "A": [["0"]], "B": [["0"]]}"#;
const DIAG: &str =
    r#"{"m": 2, "n": 2, "A": [["1", "0"], ["0", "1"]], "B": [["5", "0"], ["0", "6"]]}"#;
const CUBIC: &str = r#"{"m": 3, "n": 3,
    "A": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
    "B": [["1", "1", "0"], ["b", "1", "1"], ["g", "0", "1"]]}"#;

#[test]
fn type_of_zero_pencil() {
    let (code, out, _) = run(&["type", "-"], ZERO_1X1);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "u1 d1");
}

#[test]
fn codim_of_distinct_eigenvalues() {
    let (code, out, _) = run(&["codim", "-"], DIAG);
    assert_eq!(code, 0);
    assert_eq!(json(&out), json(r#"{"total": 2, "stratum": 0}"#));
}

#[test]
fn kform_witness_reproduces_form() {
    let src = r#"{"m": 2, "n": 3, "A": [["1", "2", "0"], ["0", "1", "1"]], "B": [["0", "1", "1/2"], ["3", "0", "1+i"]]}"#;
    let (code, out, _) = run(&["kform", "-"], src);
    assert_eq!(code, 0);
    let v = json(&out);
    let p = pencil_from_json(&json(src)).unwrap();
    let form = pencil_from_json(&v["form"]).unwrap();
    let w = witness_from_json(&v["witness"], 2, 3).unwrap();
    assert_eq!(p.apply_equivalence(&w).unwrap(), form);
    assert!(v["type"].is_string());
}

#[test]
fn classify_finds_cusp() {
    let (code, out, _) = run(&["classify", "--seed", "7", "-"], CUBIC);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["origin"], "e{3}");
    assert_eq!(v["generic"], "e{1} e{1} e{1}");
    assert_eq!(v["curves"][0]["poly"], "4*b^3 - 27*g^2");
    assert_eq!(v["curves"][0]["type"], "e{2} e{1}");
}

#[test]
fn output_is_deterministic() {
    let a = run(&["classify", "--seed", "3", "-"], CUBIC);
    let b = run(&["classify", "--seed", "3", "-"], CUBIC);
    assert_eq!(a, b);
    let a = run(&["jiggle", "--eps", "1/10", "--seed", "5", "-"], DIAG);
    let b = run(&["jiggle", "--eps", "1/10", "--seed", "5", "-"], DIAG);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
    let p = pencil_from_json(&json(&a.1)).unwrap();
    assert_eq!((p.m(), p.n()), (2, 2));
}

#[test]
fn miniversal_and_checks() {
    let (code, out, _) = run(&["miniversal", "--variant", "M", "-"], ZERO_1X1);
    assert_eq!(code, 0);
    let t = json(&out);
    assert_eq!(t["slots"].as_array().unwrap().len(), 2);
    let (code, out, _) = run(&["check", "--miniversal", "-"], &out);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["miniversal"], true);
    let (code, out, _) = run(&["check", "--transversal", "-"], DIAG);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["transversal"], true);
    assert_eq!(v["direct"], true);

    let mut t = t;
    t["slots"].as_array_mut().unwrap().pop();
    let (code, out, _) = run(&["check", "--miniversal", "-"], &t.to_string());
    assert_eq!(code, 0);
    assert_eq!(json(&out)["miniversal"], false);
}

#[test]
fn strata_list() {
    let (code, out, _) = run(&["strata", "--m", "1", "--n", "1", "--k", "2"], "");
    assert_eq!(code, 0);
    assert_eq!(
        json(&out),
        json(
            r#"[{"type": "e{1}", "codim": 0, "diagram": "e1"},
                 {"type": "u1 d1", "codim": 2, "diagram": "t22.i"}]"#
        )
    );
}

#[test]
fn verify_paper_case() {
    let (code, out, _) = run(&["verify-paper", "--case", "t22.7", "--r", "1"], "");
    assert_eq!(code, 0);
    assert_eq!(json(&out)["passed"], true);
    let (code, _, err) = run(&["verify-paper", "--case", "t99.1"], "");
    assert_eq!(code, 1);
    assert!(json(&err)["error"].is_string());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"], "").0, 2);
    assert_eq!(run(&["type", "-"], "{not json").0, 2);
    let (code, _, err) = run(
        &["type", "-"],
        r#"{"m": 1, "n": 2, "A": [["1"]], "B": [["0", "0"]]}"#,
    );
    assert_eq!(code, 2);
    assert_eq!(json(&err)["error"], "parse");
    let (code, _, err) = run(&["jiggle", "--eps", "0", "-"], DIAG);
    assert_eq!(code, 1);
    assert_eq!(json(&err)["error"], "invalid_argument");
    let big = r#"{"m": 3, "n": 3, "A": [["1","0","0"],["0","1","0"],["0","0","1"]], "B": [["0","1","0"],["0","0","1"],["2","0","0"]]}"#;
    let (code, _, err) = run(&["miniversal", "-"], big);
    assert_eq!(code, 1);
    assert_eq!(json(&err)["error"], "unsupported");
}
