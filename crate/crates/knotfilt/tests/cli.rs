use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn knotfilt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotfilt"))
        .args(args)
        .output()
        .unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn invariants_of_fixtures() {
    let o = knotfilt(&["invariants", fixture("trefoil.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!((v["v2"].as_i64(), v["v3"].as_i64()), (Some(1), Some(1)));
    assert_eq!(v["jones"].as_array().unwrap().len(), 3);

    let v = json(&knotfilt(&[
        "invariants",
        fixture("unknot.json").to_str().unwrap(),
    ]));
    assert_eq!((v["v2"].as_i64(), v["v3"].as_i64()), (Some(0), Some(0)));
    assert_eq!(v["jones"], serde_json::json!(["1*t^0"]));

    let a = json(&knotfilt(&[
        "invariants",
        fixture("figure_eight.gauss").to_str().unwrap(),
    ]));
    let b = json(&knotfilt(&[
        "invariants",
        fixture("figure_eight.json").to_str().unwrap(),
    ]));
    assert_eq!(a, b);
    assert_eq!(a["v2"].as_i64(), Some(-1));
}

#[test]
fn malformed_input_exits_2() {
    let o = knotfilt(&["invariants", fixture("malformed.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(!e["violations"].as_array().unwrap().is_empty());
    assert_eq!(
        knotfilt(&["invariants", "/nonexistent"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_examples() {
    let o = knotfilt(&[
        "verify",
        "theorem2-lemma",
        "--exhaustive-upto",
        "5",
        "--random-graphs",
        "200",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        json(&o)["instances"][1]["detail"]["graphs"].as_u64(),
        Some(211)
    );

    let o = knotfilt(&["verify", "clasper", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let five: Vec<&Value> = v["instances"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|i| i["detail"]["n"] == 5)
        .collect();
    assert_eq!(five.len(), 3);
    assert!(five
        .iter()
        .all(|i| i["detail"]["collapse"].as_array().unwrap().len() == 31));

    let o = knotfilt(&[
        "verify",
        "theorem1",
        "--k",
        "0..1",
        "--instances",
        "3",
        "--format",
        "table",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stdout)
        .unwrap()
        .contains("6 passed, 0 failed"));
}

#[test]
fn bracket_reports() {
    let v = json(&knotfilt(&[
        "bracket",
        fixture("empty_moves.json").to_str().unwrap(),
    ]));
    assert_eq!(v["claim"], "none");
    assert_eq!(v["term_count"], 1);

    let o = knotfilt(&["bracket", fixture("five_circles.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["claim"], "F^alt_4");
    assert_eq!(v["evaluations"]["v2"], 0);
    assert_eq!(v["pass"], true);

    let moves: Vec<Value> = (0..13)
        .map(|i| serde_json::json!({ "kind": "interdependent", "reroutes": [i] }))
        .collect();
    let p = std::env::temp_dir().join(format!("knotfilt-13-moves-{}.json", std::process::id()));
    std::fs::write(&p, serde_json::to_string(&moves).unwrap()).unwrap();
    let o = knotfilt(&[
        "bracket",
        fixture("five_circles.json").to_str().unwrap(),
        "--moves",
        p.to_str().unwrap(),
    ]);
    std::fs::remove_file(&p).unwrap();
    assert_eq!(
        o.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn out_flag_writes_the_report() {
    let p = std::env::temp_dir().join(format!("knotfilt-out-{}.json", std::process::id()));
    let o = knotfilt(&[
        "invariants",
        fixture("trefoil.json").to_str().unwrap(),
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    std::fs::remove_file(&p).unwrap();
    assert_eq!(v["v2"], 1);
}
