use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mckay-hodge")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn integrals(text: &str) -> Vec<Value> {
    let v: Value = serde_json::from_str(text).unwrap();
    v["integrals"].as_array().unwrap().clone()
}

#[test]
fn expand_z2z2_json() {
    let out = run(&["expand", "--group", "z2z2", "--order", "4", "--format", "json"]);
    assert!(out.status.success());
    let list = integrals(&stdout(&out));
    assert!(list.contains(&json!({"insertions": {"z1": 1, "z2": 1, "z3": 1}, "value": "1/4"})));
    assert!(list.contains(&json!({"insertions": {"z1": 4}, "value": "-1/4"})));
    assert!(list.contains(&json!({"insertions": {"z1": 2, "z2": 2}, "value": "-1/8"})));
}

#[test]
fn expand_is_deterministic_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = run(&["expand", "--group", "a4", "--order", "6", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let table = mckay_hodge::HurwitzTable::from_json_str(&text).unwrap();
    assert_eq!(table.get(&[2, 2, 0]).unwrap(), &mckay_hodge::rational::rat(-14, 9));
}

#[test]
fn expand_a4_csv() {
    let out = run(&["expand", "--group", "a4", "--order", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("group,s1,s2,zeta,value"));
    assert!(text.lines().any(|l| l == "a4,3,0,0,4/3"));
    assert!(text.lines().any(|l| l == "a4,1,1,1,1"));
}

#[test]
fn expand_s4_includes_transposition_families() {
    let out = run(&["expand", "--group", "s4", "--order", "5"]);
    assert!(out.status.success());
    let list = integrals(&stdout(&out));
    assert!(list.contains(&json!({"insertions": {"sigma": 3}, "value": "4/3"})));
    assert!(list.contains(&json!({"insertions": {"tau": 2, "sigma": 2}, "value": "-2/3"})));
    assert!(list.contains(&json!({"insertions": {"tau": 1, "rho": 1, "zeta": 1}, "value": "1/2"})));
}

#[test]
fn three_point_values() {
    for (args, want) in
        [(["s4", "zeta", "zeta", "one"], "1/8"), (["a4", "s1", "s2", "zeta"], "1"), (["z2z2", "z1", "z1", "z2"], "0")]
    {
        let mut full = vec!["three-point", "--group"];
        full.extend(args);
        let out = run(&full);
        assert!(out.status.success(), "{args:?}");
        assert_eq!(stdout(&out).trim(), want, "{args:?}");
    }
}

#[test]
fn passing_suites_exit_zero() {
    for (check, order) in [("theorem1", "8"), ("recursion", "8"), ("trig", "12")] {
        let out = run(&["verify", "--check", check, "--order", order]);
        assert!(out.status.success(), "{check}: {}", String::from_utf8_lossy(&out.stderr));
        let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(report["passed"], json!(true));
    }
}

#[test]
fn specializations_report_the_two_term_form() {
    let out = run(&["verify", "--check", "specializations", "--order", "6", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.contains(",false,")).count(), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("4/3 vs 5/18"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["expand", "--group", "q8"],
        vec!["expand", "--group", "a4", "--order", "2"],
        vec!["expand", "--group", "a4", "--order", "20"],
        vec!["expand", "--group", "a4", "--format", "xml"],
        vec!["verify", "--check", "everything"],
        vec!["three-point", "--group", "s4", "zeta", "zeta", "omega"],
        vec!["three-point", "--group", "a4", "s1", "s2"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn max_order_raises_the_cap() {
    let out = run(&["expand", "--group", "z2z2", "--order", "17", "--max-order", "17", "--format", "csv"]);
    assert!(out.status.success());
}
