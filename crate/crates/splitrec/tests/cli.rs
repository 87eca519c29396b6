use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const S3: &str = "x^6+3x^5+12x^4+25x^3+60x^2+51x+127";

fn splitrec(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_splitrec"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    for var in ["SPLITREC_LIFT_START", "SPLITREC_SEGMENT_SIZE", "SPLITREC_JOBS"] {
        cmd.env_remove(var);
    }
    cmd.envs(env.iter().copied());
    let mut child = cmd.spawn().unwrap();
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(input);
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let out = splitrec(args, stdin, &[]);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

/// The first JSON document in a stream of pretty-printed ones.
fn first_json(text: &str) -> Value {
    serde_json::Deserializer::from_str(text).into_iter::<Value>().next().unwrap().unwrap()
}

#[test]
fn shanks_family_pipes_into_verify() {
    let artifact = ok(&["family", "--cubic-shanks", "-t", "1"], None);
    let report = json(&ok(&["verify", "--range", "5:10000"], Some(&artifact)));
    assert_eq!(report["status"], "PASS");
    assert_eq!(report["mismatches"].as_array().unwrap().len(), 0);
    assert!(report["primes_tested"].as_u64().unwrap() > 1200);
}

#[test]
fn cyclotomic_eval_at_eleven() {
    let row = first_json(&ok(&["family", "--cyclotomic", "-q", "5", "eval", "--prime", "11"], None));
    assert_eq!(row["prime"], 11);
    assert_eq!(row["values"][0]["target"], json(r#"{"class": 0}"#));
    assert_eq!(row["values"][0]["value"], 1);
    assert_eq!(row["values"][0]["status"], "ok");
}

#[test]
fn s3_table_row() {
    let text = ok(&["build", "--poly", S3, "solve", "table", "--range", "2:43"], None);
    let row = |p: u64| -> String {
        let line = text.lines().find(|l| l.split('|').next().map(str::trim) == Some(&p.to_string())).unwrap();
        line.split('|').nth(1).unwrap().trim().to_string()
    };
    assert_eq!(row(3), "bad");
    assert_eq!(row(31), "1");
    assert_eq!(row(43), "1");
    for p in [7, 13, 17, 19, 23, 29, 37, 41] {
        assert_eq!(row(p), "0", "p = {p}");
    }
    assert!(text.contains("class 0"));
}

#[test]
fn stages_can_be_split_across_files() {
    let dir = tempfile::tempdir().unwrap();
    let field = dir.path().join("field.json");
    let solved = dir.path().join("solved.json");
    let field_s = field.to_str().unwrap();
    let solved_s = solved.to_str().unwrap();
    ok(&["build", "--poly", "x^2+x+1", "--out", field_s], None);
    ok(&["--in", field_s, "galois", "solve", "--class", "0", "--out", solved_s], None);
    let a = json(&std::fs::read_to_string(&solved).unwrap());
    assert_eq!(a["recurrences"].as_array().unwrap().len(), 1);
    assert_eq!(a["recurrences"][0]["initial"], json(r#"["-1", "1"]"#));
    assert_eq!(a["provenance"]["seed"], "fnv1a(p, f)");
    assert!(a["provenance"]["command"].as_str().unwrap().contains(" | splitrec galois"));
    let row = json(&ok(&["--in", solved_s, "eval", "--prime", "13"], None));
    assert_eq!(row["values"][0]["value"], 1);
}

#[test]
fn artifacts_contain_no_floats() {
    let text = ok(&["build", "--poly", S3, "solve"], None);
    fn check(v: &Value) {
        match v {
            Value::Number(n) => assert!(n.is_u64(), "non-integer number {n}"),
            Value::Array(a) => a.iter().for_each(check),
            Value::Object(o) => o.values().for_each(check),
            _ => {}
        }
    }
    check(&json(&text));
}

#[test]
fn eval_over_a_range() {
    let out = json(&ok(&["family", "--quadratic", "-D", "-3", "eval", "--range", "2:20"], None));
    let rows = out["rows"].as_array().unwrap();
    let primes: Vec<u64> = rows.iter().map(|r| r["prime"].as_u64().unwrap()).collect();
    assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19]);
    for r in rows {
        let p = r["prime"].as_u64().unwrap();
        if r["values"][0]["status"] == "ok" {
            assert_eq!(r["values"][0]["value"].as_u64().unwrap() == 1, p % 3 == 1, "p = {p}");
        }
    }
}

#[test]
fn subset_targets() {
    let out = ok(&["build", "--poly", S3, "solve", "--subset", "0,3,4", "eval", "--prime", "31"], None);
    let row = first_json(&out);
    assert_eq!(row["values"][0]["target"], json(r#"{"subset": [0, 3, 4]}"#));
    let open = splitrec(&["build", "--poly", S3, "solve", "--subset", "0,1"], None, &[]);
    assert_eq!(open.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&open.stderr).contains("not closed under conjugation"));
}

#[test]
fn every_family_builds() {
    for args in [
        &["family", "--quadratic", "-D", "5"][..],
        &["family", "--quadratic-coeffs", "1", "-1"],
        &["family", "--quadratic-coeffs", "3/2", "7"],
        &["family", "--cubic-shanks", "-t", "1/2"],
        &["family", "--quartic-cyclic", "-a", "2", "-b", "1", "-d", "2", "-r", "1"],
        &["family", "--cyclotomic", "-q", "7"],
    ] {
        let a = json(&ok(args, None));
        assert!(a["recurrences"].as_array().is_some_and(|r| !r.is_empty()), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &[][..],
        &["family"],
        &["family", "--cyclotomic", "-q", "6"],
        &["build", "--poly", "x^2+"],
        &["build", "--poly", "y^2+1"],
        &["build", "--poly", "x^2-1"],
        &["build", "--poly", "x^2+1", "verify", "--range", "10:5"],
        &["build", "--poly", "x^2+1", "eval"],
        &["build", "--poly", "x^2+1", "solve", "--class", "7"],
        &["build", "--poly", "x^3-2", "galois"],
    ] {
        let out = splitrec(args, None, &[]);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?} gave no message");
    }
}

#[test]
fn not_galois_is_reported() {
    let out = splitrec(&["build", "--poly", "x^3-2", "galois"], None, &[]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not Galois"));
}

#[test]
fn reducible_hint_mentions_the_flag() {
    // (x^2+1)(x^2+2) has no rational root but no certificate either
    let out = splitrec(&["build", "--poly", "x^4+3x^2+2"], None, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--assume-irreducible"));
}

#[test]
fn garbage_input_is_rejected() {
    let out = splitrec(&["verify", "--range", "5:50"], Some("{\"version\": 1}"), &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let out = splitrec(&["--help"], None, &[]);
    assert_eq!(out.status.code(), Some(0));
    let out = splitrec(&["verify", "--help"], None, &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("--range"));
}

#[test]
fn flags_override_environment() {
    let artifact = ok(&["family", "--quadratic", "-D", "-3"], None);
    let bad = splitrec(&["verify", "--range", "5:100"], Some(&artifact), &[("SPLITREC_SEGMENT_SIZE", "0")]);
    assert_eq!(bad.status.code(), Some(2));
    let good = splitrec(
        &["--segment-size", "64", "verify", "--range", "5:100"],
        Some(&artifact),
        &[("SPLITREC_SEGMENT_SIZE", "0")],
    );
    assert_eq!(good.status.code(), Some(0), "{}", String::from_utf8_lossy(&good.stderr));
    let env_only = splitrec(&["verify", "--range", "5:100"], Some(&artifact), &[("SPLITREC_JOBS", "2")]);
    assert_eq!(env_only.status.code(), Some(0));
}

#[test]
fn lift_start_is_accepted_from_the_environment() {
    let a = ok(&["build", "--poly", S3, "galois"], None);
    let out = splitrec(&["build", "--poly", S3, "galois"], None, &[("SPLITREC_LIFT_START", "2")]);
    assert_eq!(out.status.code(), Some(0));
    let b = String::from_utf8(out.stdout).unwrap();
    assert_eq!(json(&a)["automorphisms"], json(&b)["automorphisms"]);
}
