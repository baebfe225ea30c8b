use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phirep"))
        .args(args)
        .output()
        .expect("failed to run phirep")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let value: Value = serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("{e}: {text}"));
    (value, out.status.code().unwrap())
}

fn plain(args: &[&str]) -> (String, i32) {
    let out = run(args);
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

fn primes_of(v: &Value) -> Vec<u64> {
    v["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["prime"].as_str().unwrap().parse().unwrap())
        .collect()
}

#[test]
fn represent_nineteen_over_forty_seven() {
    let (v, code) = json(&["represent", "19/47"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["verified"], true);
    assert_eq!(v["input"], "19/47");
    assert!(primes_of(&v["m"]).iter().chain(&primes_of(&v["n"])).all(|&p| p <= 47));
    assert!(v["m"].get("value").is_none());
}

#[test]
fn represent_small_values() {
    let (v, code) = json(&["represent", "1", "--expanded"]);
    assert_eq!(code, 0);
    assert_eq!((v["m"]["value"].as_str(), v["n"]["value"].as_str()), (Some("1"), Some("1")));
    assert_eq!(v["depth"], 0);
    let (v, _) = json(&["represent", "3", "--expanded"]);
    assert_eq!((v["m"]["value"].as_str(), v["n"]["value"].as_str()), (Some("3"), Some("2")));
    assert_eq!(v["verified"], true);
}

#[test]
fn represent_factored_literal() {
    let (v, code) = json(&["represent", "2^-1000001 * 7^999999"]);
    assert_eq!(code, 0);
    assert_eq!(v["verified"], true);
    assert_eq!(v["m"]["text"], "7^500000");
}

#[test]
fn verify_examples() {
    let (v, code) = json(&["verify", "39330", "55836", "19/47"]);
    assert_eq!(code, 0);
    assert_eq!(v["holds"], true);
    assert_eq!(v["common_value"], "19673280");
    let (v, code) = json(&["verify", "14476", "20010", "47/58"]);
    assert_eq!(code, 0);
    assert_eq!(v["common_value"], "1700160");
    let (v, code) = json(&["verify", "2^2 * 7^1 * 11^1 * 47^1", "20010", "47/58"]);
    assert_eq!((v["holds"].as_bool(), code), (Some(true), 0));
}

#[test]
fn verify_mismatch_exits_four() {
    let (v, code) = json(&["verify", "2", "1", "3"]);
    assert_eq!(code, 4);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["holds"], false);
    assert_eq!(v["computed"]["text"], "2^1");
    assert!(v["common_value"].is_null());
}

#[test]
fn factor_command() {
    let (v, code) = json(&["factor", "39330"]);
    assert_eq!(code, 0);
    assert_eq!(v["factors"]["text"], "2^1 * 3^2 * 5^1 * 19^1 * 23^1");
    assert_eq!(v["factors"]["value"], "39330");
    let (v, _) = json(&["factor", "1"]);
    assert_eq!(v["factors"]["text"], "1");
}

#[test]
fn sequence_command() {
    let (text, code) = plain(&["sequence", "5"]);
    assert_eq!(code, 0);
    assert_eq!(text, "1\n2\n6\n8\n20\n");
    let (text, _) = plain(&["sequence", "1"]);
    assert_eq!(text, "1\n");
    let (v, _) = json(&["sequence", "10"]);
    assert_eq!(v["values"].as_array().unwrap().last().unwrap(), 40);
    assert_eq!(v["values"].as_array().unwrap().len(), 10);
}

#[test]
fn search_command() {
    let (v, code) = json(&["search", "3", "--bound", "10"]);
    assert_eq!(code, 0);
    assert_eq!((v["m"].as_u64(), v["n"].as_u64()), (Some(3), Some(2)));
    let (v, _) = json(&["search", "1", "--bound", "1"]);
    assert_eq!((v["m"].as_u64(), v["n"].as_u64()), (Some(1), Some(1)));
    let (v, code) = json(&["search", "19/47", "--bound", "100"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    if v["found"] == true {
        assert_eq!(v["verified"], true);
    } else {
        assert!(v["m"].is_null());
    }
}

#[test]
fn exit_codes() {
    for args in [
        &["represent", "abc"][..],
        &["represent", "0/3"],
        &["represent", "-3"],
        &["represent", "4^1"],
        &["verify", "2^-1", "1", "3"],
        &["sequence", "0"],
        &["search", "3", "--bound", "x"],
        &["nonsense"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
    }
    let (v, code) = json(&["represent", "zz"]);
    assert_eq!((v["status"].as_str(), code), (Some("parse_error"), 1));
    assert!(v.get("m").is_none());
    let (v, code) = json(&["search", "3", "--bound", "2000000"]);
    assert_eq!((v["status"].as_str(), code), (Some("unsupported_scale"), 2));
}

#[test]
fn plain_and_json_agree() {
    let (v, _) = json(&["represent", "47/58", "--expanded"]);
    let (text, _) = plain(&["represent", "47/58", "--expanded"]);
    for (key, expected) in [
        ("m", v["m"]["text"].as_str().unwrap().to_string()),
        ("m.value", v["m"]["value"].as_str().unwrap().to_string()),
        ("n", v["n"]["text"].as_str().unwrap().to_string()),
        ("n.value", v["n"]["value"].as_str().unwrap().to_string()),
        ("depth", v["depth"].to_string()),
        ("verified", v["verified"].to_string()),
        ("status", v["status"].as_str().unwrap().to_string()),
    ] {
        assert!(text.contains(&format!("{key}: {expected}\n")), "{key} missing from\n{text}");
    }
}

#[test]
fn selftest_passes() {
    let (v, code) = json(&["selftest"]);
    assert_eq!(code, 0);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    assert!(checks.iter().all(|c| c["passed"] == true));
    let (text, code) = plain(&["selftest"]);
    assert_eq!(code, 0);
    assert!(text.contains("round trip") && text.ends_with("status: ok\n"));
}
