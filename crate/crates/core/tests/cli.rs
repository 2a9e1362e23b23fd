use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use opsdisc::commands::demo_set;
use opsdisc::io::{parse_state_set, state_set_to_json};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opsdisc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn fixtures_match_constructors() {
    for name in [
        "eq3",
        "eq10",
        "eq11",
        "theorem4-1",
        "theorem4-2",
        "theorem4-3",
    ] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let set = demo_set(name).unwrap();
        assert_eq!(parse_state_set(&text).unwrap(), set, "{name}");
        assert_eq!(state_set_to_json(&set), text, "{name}");
    }
}

#[test]
fn classify_reports_structure() {
    let v = json(&["classify", "--input", &fixture("eq11")]);
    assert_eq!(v["relation_vector"]["counts"], serde_json::json!([5, 3, 2]));
    assert_eq!(v["edges"][2], serde_json::json!([[2, 4], [3, 5]]));
    assert_eq!(v["local_ranks"], serde_json::json!([3, 2, 3]));
    let v = json(&["classify", "--input", &fixture("eq3")]);
    assert_eq!(v["relation_vector"]["counts"], serde_json::json!([5, 5]));
    assert_eq!(v["pattern"]["name"], "Cycle54");
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let mut doc: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("eq11")).unwrap()).unwrap();
    doc["states"][3][1] = serde_json::json!([[1.0, 0.0]]);
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = run(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("state 4, party 2"), "{err}");

    std::fs::write(&path, "{\"version\": ").unwrap();
    let out = run(&["certify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let out = run(&["demo", "eq4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn synthesize_verdicts() {
    let v = json(&["synthesize", "--input", &fixture("eq11")]);
    assert_eq!(v["verdict"], "Perfect");
    for s in v["success"].as_array().unwrap() {
        assert!((s.as_f64().unwrap() - 1.0).abs() < 1e-10);
    }
    let v = json(&["synthesize", "--input", &fixture("eq10")]);
    assert_eq!(v["verdict"], "IndistinguishableCertified");
    let v = json(&[
        "synthesize",
        "--input",
        &fixture("theorem4-1"),
        "--depth",
        "4",
    ]);
    assert_eq!(v["verdict"], "Probabilistic");
    assert!(v["overall"].as_f64().unwrap() >= 0.05 - 1e-12);
}

#[test]
fn certify_and_demo() {
    let v = json(&["certify", "--input", &fixture("eq3")]);
    assert_eq!(v["verdict"], "IndistinguishableCertified");
    for p in v["parties"].as_array().unwrap() {
        assert_eq!(p["verdict"], "ProportionalIdentityOnSpan");
    }
    let v = json(&["demo", "eq12"]);
    assert!(v["values"]["completeness residual"].as_f64().unwrap() <= 1e-12);
    let v = json(&["demo", "theorem4-1"]);
    assert!(
        (v["values"]["state 3 contribution (simulated)"]
            .as_f64()
            .unwrap()
            - 0.05)
            .abs()
            < 1e-12
    );
    let out = run(&["demo", "eq11", "--format", "text"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict: Perfect"));
}

#[test]
fn generate_then_classify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gen.json");
    let p = path.to_str().unwrap();
    let out = run(&["generate", "--vector", "9,1", "--seed", "7", "--output", p]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&["classify", "--input", p]);
    assert_eq!(v["relation_vector"]["counts"], serde_json::json!([9, 1]));

    let out = run(&[
        "generate",
        "--graph",
        "1:1-2,1-3;2:2-3",
        "--states",
        "3",
        "--dims",
        "3,2",
        "--output",
        p,
    ]);
    assert!(out.status.success());
    let v = json(&["classify", "--input", p]);
    assert_eq!(v["edges"], serde_json::json!([[[1, 2], [1, 3]], [[2, 3]]]));

    let out = run(&["generate", "--vector", "9,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_reproducible_and_protocols_replay() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let r = report.to_str().unwrap();
    let a = run(&["synthesize", "--input", &fixture("eq11"), "--output", r]);
    assert!(a.status.success());
    let first = std::fs::read(&report).unwrap();
    let b = run(&["synthesize", "--input", &fixture("eq11")]);
    assert_eq!(b.stdout, first);

    let g1 = run(&["generate", "--vector", "6,4", "--seed", "3"]);
    let g2 = run(&["generate", "--vector", "6,4", "--seed", "3"]);
    assert_eq!(g1.stdout, g2.stdout);

    let synthesized: Value = serde_json::from_slice(&first).unwrap();
    let v = json(&["simulate", "--input", &fixture("eq11"), "--protocol", r]);
    assert_eq!(v["success"], synthesized["success"]);
    assert_eq!(v["protocol"], synthesized["protocol"]);

    // a protocol document works too
    let proto = dir.path().join("proto.json");
    let doc = serde_json::json!({"version": "opsdisc-protocol/1", "root": synthesized["protocol"]});
    std::fs::write(&proto, doc.to_string()).unwrap();
    let v = json(&[
        "simulate",
        "--input",
        &fixture("eq11"),
        "--protocol",
        proto.to_str().unwrap(),
    ]);
    assert_eq!(v["success"], synthesized["success"]);

    // replaying on a different set is rejected as input
    let out = run(&["simulate", "--input", &fixture("eq3"), "--protocol", r]);
    assert_eq!(out.status.code(), Some(2));
}
