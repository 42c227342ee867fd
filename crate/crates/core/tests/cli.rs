use std::process::{Command, Output};

use serde_json::Value;

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().expect("run hecke")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Vec<Value> {
    serde_json::from_slice::<Value>(&o.stdout).unwrap().as_array().unwrap().clone()
}

#[test]
fn verify_single_identity() {
    let o = hecke(&["verify", "--identity", "pentagonal", "--order", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 passed, 0 failed, 0 skipped"));
}

#[test]
fn unknown_identity_exits_two() {
    let o = hecke(&["verify", "--identity", "nope", "--order", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));
}

#[test]
fn verify_all_as_json() {
    let o = hecke(&["verify", "--identity", "all", "--order", "200", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports = json(&o);
    assert_eq!(reports.len(), 17);
    for r in &reports {
        let mut keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["elapsed_ms", "id", "mismatch", "order", "status"]);
        assert_eq!(r["status"], "pass");
        assert_eq!(r["order"], 200);
        assert!(r["mismatch"].is_null());
    }
}

#[test]
fn truncated_range() {
    let o = hecke(&["truncated", "--theorem", "t1-2", "--m", "0..4", "--order", "100", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports = json(&o);
    let ids: Vec<&str> = reports.iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["t1-2:m=0", "t1-2:m=1", "t1-2:m=2", "t1-2:m=3", "t1-2:m=4"]);
    assert!(reports.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn printed_t17_fails_with_exit_one() {
    let o = hecke(&["truncated", "--theorem", "t1-7", "--m", "0..0", "--order", "10", "--output", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let r = &json(&o)[0];
    assert_eq!(r["status"], "fail");
    assert_eq!(r["mismatch"]["exponent_halves"], 8);
    assert_eq!(r["mismatch"]["lhs"], "2");
    assert_eq!(r["mismatch"]["rhs"], "3");
}

#[test]
fn partitions_with_oracle() {
    let o = hecke(&["partitions", "--family", "pp", "--max", "10", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    // pp(10) = 481
    assert!(text.lines().any(|l| l.split_whitespace().take(2).eq(["10", "481"])), "{text}");
}

#[test]
fn inequality_single_row() {
    let o = hecke(&["inequality", "--theorem", "tt1", "--m-max", "0", "--n-max", "0", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json(&o);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["value"], "1");
    assert_eq!(rows[0]["pass"], true);
}

#[test]
fn invalid_enum_and_order_exit_two() {
    assert_eq!(hecke(&["partitions", "--family", "xx"]).status.code(), Some(2));
    assert_eq!(hecke(&["verify", "--order", "0"]).status.code(), Some(2));
    assert_eq!(hecke(&["verify", "--output", "yaml"]).status.code(), Some(2));
    assert_eq!(hecke(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn lemma_text_is_reproducible() {
    let args = ["lemmas", "--lemma", "1-1", "--n-max", "3", "--seed", "11"];
    let (a, b) = (hecke(&args), hecke(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}
