use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn forcing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forcing"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    stdout(out).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn step_is_deterministic() {
    let first = forcing(&["step", "--seed", "42", "--samples", "3", "--prefix", "512"]);
    let second = forcing(&["step", "--seed", "42", "--samples", "3", "--prefix", "512"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let lines = json_lines(&first);
    assert_eq!(lines[0]["rng"], "ChaCha8Rng/seed_from_u64");
    assert_eq!(lines[0]["seed"], 42);
    assert_eq!(lines.len(), 1 + 15 + 1);
    let summary = lines.last().unwrap();
    assert_eq!(summary["summary"], true);
    assert_eq!(summary["total"], 15);
    assert_eq!(summary["refuted"], 0);
}

#[test]
fn step_with_no_samples() {
    let out = forcing(&["step", "--samples", "0"]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[1]["total"], 0);
}

#[test]
fn dyadic_points_are_rejected() {
    for point in ["1/2", "0/3", "3/3", "x"] {
        let out = forcing(&["step", "--point", point]);
        assert_eq!(out.status.code(), Some(2), "{point}");
    }
    assert!(forcing(&["step", "--samples", "1", "--prefix", "64", "--point", "2/7"]).status.success());
}

#[test]
fn step_writes_to_a_file_and_saves_its_chain() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.jsonl");
    let session = dir.path().join("chain.session");
    let out = forcing(&[
        "step", "--seed", "7", "--samples", "2", "--prefix", "256",
        "--out", report.to_str().unwrap(),
        "--save-session", session.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(fs::read_to_string(&report).unwrap().contains("\"summary\":true"));

    let dump = forcing(&["show-chain", session.to_str().unwrap()]);
    assert!(dump.status.success());
    assert_eq!(dump.stdout, forcing(&["show-chain", session.to_str().unwrap()]).stdout);
    let lines = json_lines(&dump);
    assert_eq!(lines.last().unwrap()["summary"], true);
}

#[test]
fn oracle_answers() {
    let out = forcing(&["oracle", "[1/4,1/2)"]);
    let lines = json_lines(&out);
    assert_eq!(lines[0]["answer"], serde_json::json!({"kind": "Cover", "witnesses": [1]}));
    assert_eq!(lines[1]["answer"], serde_json::json!({"kind": "Avoid", "i": 1}));

    let lines = json_lines(&forcing(&["oracle", "{}"]));
    assert_eq!(lines[0]["answer"]["witnesses"], serde_json::json!([]));
    assert_eq!(lines[1]["answer"]["i"], 0);

    let lines = json_lines(&forcing(&["oracle", "[0,1/8)u[1/2,5/8)"]));
    assert_eq!(lines[0]["answer"]["kind"], "Absorb");
    assert_eq!(lines[1]["answer"], serde_json::json!({"kind": "Between", "i": 2, "j": 3}));
}

#[test]
fn oracle_parse_errors_carry_offsets() {
    let out = forcing(&["oracle", "[0,1/2)x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 7"));
}

#[test]
fn show_chain_examples() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.session");
    fs::write(&empty, "").unwrap();
    let lines = json_lines(&forcing(&["show-chain", empty.to_str().unwrap()]));
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["p0"], "{}");
    assert_eq!(lines[0]["p1"], "{}");

    let one = dir.path().join("one.session");
    fs::write(&one, "format=forcing-session/1\nei=0\n").unwrap();
    let lines = json_lines(&forcing(&["show-chain", one.to_str().unwrap()]));
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[1]["kind"], "certificate");
    assert_eq!(lines[2]["p0"], "[0/1,1/4)");
    assert_eq!(lines[2]["p1"], "{}");

    let bad = dir.path().join("bad.session");
    fs::write(&bad, "ei=0\nwhat\n").unwrap();
    let out = forcing(&["show-chain", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn verify_single_claims() {
    let out = forcing(&["verify", "ultra-destroyed", "--a", "[1/2,3/4)"]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert_eq!(lines[0]["evidence"], serde_json::json!({"kind": "destroyed", "n0": "4", "n1": "5"}));
    assert_eq!(lines[1]["verified"], 1);

    let out = forcing(&["verify", "ideal-preserved", "--e", "[0,1/2)", "--f", "{}", "--prefix", "256"]);
    assert!(out.status.success());
    assert_eq!(json_lines(&out)[0]["clause"], 3);

    let out = forcing(&["verify", "not-atom", "--e", "[0,1/2)", "--f", "[0,1/2)"]);
    assert_eq!(json_lines(&out)[0]["evidence"]["separator"], "[0/1,1/4)");

    assert_eq!(forcing(&["verify", "ultra-destroyed", "--a", "[1/4,1/2)"]).status.code(), Some(2));
    assert_eq!(forcing(&["verify", "free-preserved", "--e", "[0,1/2)"]).status.code(), Some(2));
}

#[test]
fn verify_continues_a_session() {
    let dir = tempfile::tempdir().unwrap();
    let session = dir.path().join("s.session");
    fs::write(&session, "point=2/3\nda=[0,1/4)\n").unwrap();
    let out = forcing(&["verify", "not-in-a", "--a", "[0,1/2)", "--session", session.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json_lines(&out)[1]["verified"], 1);
}
