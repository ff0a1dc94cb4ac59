use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn ugnkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ugnkit")).args(args).env_remove("UGNKIT_RMAX").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

const TRANSLATION_CERT: &str = include_str!("../../../data/leavitt_translation_cert.json");

#[test]
fn leavitt_repro_passes() {
    let o = ugnkit(&["repro", "leavitt-certificate", "--n", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("status ValidBGN: ok"));
}

#[test]
fn every_repro_passes() {
    for name in [
        "matrix-units",
        "compression",
        "rank-collapse",
        "matching",
        "skew-iso",
        "monoid-gn",
        "bs-example",
        "weyl",
        "certificate-algebra",
        "endo-graded",
    ] {
        let o = ugnkit(&["repro", name]);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
    }
}

#[test]
fn free_group_has_no_folner_ball() {
    let o = ugnkit(&["folner", "--group", "F2", "--eps", "1/2", "--rmax", "6"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("4373/1457"), "{out}");
    assert!(out.contains("best ratio"));
}

#[test]
fn rmax_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_ugnkit"))
        .args(["folner", "--group", "F2", "--format", "json"])
        .env("UGNKIT_RMAX", "2")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["tried"].as_array().unwrap().len(), 3);
    assert_eq!(v["verdict"], "negative");
}

#[test]
fn folner_witness_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    let o = ugnkit(&["folner", "--group", "Z^2", "--eps", "1", "--rmax", "10", "--out", p(&w)]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&ugnkit(&["verify", "--in", p(&w)])), 0);

    let mut v: Value = serde_json::from_str(&fs::read_to_string(&w).unwrap()).unwrap();
    v["counts"][0] = Value::from(v["counts"][0].as_u64().unwrap() + 1);
    fs::write(&w, v.to_string()).unwrap();
    assert_eq!(code(&ugnkit(&["verify", "--in", p(&w)])), 1);
}

#[test]
fn explicit_folner_candidates() {
    let o = ugnkit(&["folner", "--group", "Z", "--f", "{0,1,2,3,4,5}"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("8 < (1+1/2)·6"));
}

#[test]
fn compress_writes_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    fs::write(&cert, TRANSLATION_CERT).unwrap();
    let o = ugnkit(&["compress", "--in", p(&cert), "--F", "{0}", "--K", "{0}"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = dir.path().join("cert.compressed.json");
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((v["n"].as_u64(), v["m"].as_u64()), (Some(1), Some(2)));
    assert_eq!(code(&ugnkit(&["cert", "verify", "--in", p(&out)])), 0);

    let o = ugnkit(&["compress", "--in", p(&cert), "--F", "{0,1}", "--K", "{-1,0,1}"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Følner inequality"));
}

#[test]
fn paradox_then_collapse() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("inj.json");
    assert_eq!(code(&ugnkit(&["paradox", "--group", "F2", "--radius", "1", "--out", p(&w)])), 0);
    let o = ugnkit(&["collapse", "--in", p(&w)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches(": ok").count(), 5);
    assert_eq!(code(&ugnkit(&["verify", "--in", p(&w)])), 0);
    assert_eq!(code(&ugnkit(&["paradox", "--group", "Z", "--v", "{0,1,2}", "--w", "{-1,0,1,2,3}"])), 1);
}

#[test]
fn certificate_transformations() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.json");
    fs::write(
        &c,
        r#"{"ring": "L(1,3)", "n": 1, "m": 2, "A": [["e1'"], ["e2'"]], "B": [["e1", "e2"]]}"#,
    )
    .unwrap();
    let e = dir.path().join("e.json");
    assert_eq!(code(&ugnkit(&["cert", "extend", "--in", p(&c), "--target", "5", "--out", p(&e)])), 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(&e).unwrap()).unwrap();
    assert_eq!(v["m"], 5);
    assert_eq!(code(&ugnkit(&["cert", "opposite", "--in", p(&e)])), 0);
    assert_eq!(code(&ugnkit(&["cert", "block", "--in", p(&c), "--up", "1"])), 0);
    assert_eq!(code(&ugnkit(&["cert", "product", "--in", p(&c), "--in", p(&c)])), 0);

    let z = dir.path().join("z.json");
    fs::write(&z, r#"{"ring": "Z", "n": 1, "m": 1, "A": [[-1]], "B": [[-1]]}"#).unwrap();
    let o = ugnkit(&["cert", "hom", "--in", p(&z), "--map", "reduction:5", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["certificate"]["ring"], "Z/5");

    fs::write(&z, r#"{"ring": "Z", "n": 1, "m": 1, "A": [[2]], "B": [[1]]}"#).unwrap();
    assert_eq!(code(&ugnkit(&["cert", "verify", "--in", p(&z)])), 1);
    assert_eq!(code(&ugnkit(&["cert", "hom", "--in", p(&z), "--map", "twist"])), 2);
}

#[test]
fn monoid_queries() {
    let o = ugnkit(&["monoid", "3*x1 <= 2*x1 in M(2,1,1)"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("psi1(s) = 3 > psi1(t) = 2"));
    assert_eq!(code(&ugnkit(&["monoid", "x1 <= u in M(2,1,1)"])), 0);
    assert_eq!(code(&ugnkit(&["monoid", "3a <= 2a in C(3,2)"])), 1);
    assert_eq!(code(&ugnkit(&["monoid", "3a <= 2a"])), 2);
}

#[test]
fn graded_commands() {
    assert_eq!(code(&ugnkit(&["endo-graded", "--ring", "Z/5", "--group", "C(2)", "--n", "2", "--l", "1"])), 0);
    assert_eq!(code(&ugnkit(&["endo-graded", "--group", "C(3)", "--n", "2", "--l", "1"])), 2);
    let o = ugnkit(&["psi", "--algebra", "weyl:n=1", "--degrees", "-1..1", "--window", "-3..3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = ugnkit(&["crossed", "--group", "C(3)", "--ring", "Z", "--mul", "{1: 1}", "{2: 1}"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("= {0: 1}"), "{}", stdout(&o));
}

#[test]
fn normalize_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ugnkit"))
        .args(["normalize", "--algebra", "leavitt:n=2"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"e1' e1\n\ne1 e1' + e2 e2'\ne2' e1\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1\n1\n0\n");
}

#[test]
fn baumslag_solitar_commands() {
    assert_eq!(code(&ugnkit(&["bs-check", "--k", "2", "--radius", "3"])), 0);
    let o = ugnkit(&["rosenblatt", "--k", "2", "--u", "(1/2, 1)", "--v", "(0, 0)", "--v", "(1, 3)"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&ugnkit(&["rosenblatt", "--k", "2", "--u", "(0, 0)", "--v", "(0, 0)"])), 2);
}

#[test]
fn json_reports_carry_seed() {
    let o = ugnkit(&["repro", "bs-example", "--seed", "7", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["command"], "repro");
    assert_eq!(v["verdict"], "pass");
}
