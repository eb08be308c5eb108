use std::fs;
use std::process::{Command, Output};

fn qsymp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsymp")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn verify_passing_suite_exits_zero() {
    let out = qsymp(&["verify", "--suite", "goldens"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}

#[test]
fn verify_violated_suite_exits_one() {
    let out = qsymp(&["verify", "--suite", "t_opt", "--trials", "5", "--json"]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!v[0]["failures"].as_array().unwrap().is_empty());
}

#[test]
fn unknown_suite_exits_two() {
    assert_eq!(code(&qsymp(&["verify", "--suite", "nope"])), 2);
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"n\": ").unwrap();
    assert_eq!(code(&qsymp(&["normalize", "--point", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&qsymp(&["cm-point", "--n", "2", "--tau", "1", "--x", "0,0", "--p", "1,1"])), 2);
}

#[test]
fn cm_point_normalize_and_flow_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = qsymp(&["cm-point", "--n", "2", "--tau", "-1", "--x", "0,1/2", "--p", "1,i"]);
    assert_eq!(code(&out), 0);
    let pt = dir.path().join("pt.json");
    fs::write(&pt, &out.stdout).unwrap();

    let norm = qsymp(&["normalize", "--point", pt.to_str().unwrap()]);
    assert_eq!(code(&norm), 0);
    let v: serde_json::Value = serde_json::from_slice(&norm.stdout).unwrap();
    assert_eq!(v["word"].as_array().unwrap().len(), 0);

    let ham = dir.path().join("h.json");
    fs::write(&ham, r#"{"kind": "H", "f": {"terms": [{"coeff": "1", "word": ["a", "b"]}]}}"#).unwrap();
    let fl = qsymp(&["flow", "--ham", ham.to_str().unwrap(), "--time", "1", "--point", pt.to_str().unwrap()]);
    assert_eq!(code(&fl), 0, "{}", String::from_utf8_lossy(&fl.stderr));
    let br = qsymp(&["bracket", "--h1", ham.to_str().unwrap(), "--h2", ham.to_str().unwrap(), "--point", pt.to_str().unwrap()]);
    assert_eq!(code(&br), 0);
    let b: serde_json::Value = serde_json::from_slice(&br.stdout).unwrap();
    assert_eq!(b["bracket"], "0");
}

#[test]
fn factor_then_imap() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    fs::write(&m, r#"[[["1"], ["0", "1"]], [["0"], ["1"]]]"#).unwrap();
    let out = qsymp(&["factor", m.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let w: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(w.is_array());
}
