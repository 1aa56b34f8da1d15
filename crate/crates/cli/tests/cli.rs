use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgonal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    serde_json::from_slice(&run(&a).stdout).expect("valid json")
}

#[test]
fn area_example() {
    let o = run(&["area", "(0,+,[3,3],{(3,3,3,3)})"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "5/3 * 2π\n");
    assert_eq!(stdout(&run(&["area", "(2,[-])"])), "2 * 2π\n");
    assert_eq!(json(&["area", "(0,[3,3,3,3])"])["area"], "2/3");
}

#[test]
fn species_example() {
    let o = run(&[
        "species",
        "--construction",
        "theta1",
        "--p",
        "3",
        "--genus",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-1\n");
    let v = json(&[
        "species",
        "--construction",
        "theta3",
        "--p",
        "3",
        "--genus",
        "4",
        "--target",
        "c",
        "--connector",
        "r",
    ]);
    assert_eq!(v["value"], 1);
    assert_eq!(v["species"], "+1");
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", "--case", "1a", "--p", "3", "--q", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("MATCH"));
    assert!(!stdout(&o).contains("MISMATCH"));
    let o = run(&["verify", "--case", "2a", "--p", "3", "--q", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("MISMATCH"));
    let o = run(&[
        "verify", "--case", "4b-a", "--p", "3", "--q", "3", "--param", "i=1", "--param", "k=0",
    ]);
    assert!(matches!(o.status.code(), Some(0) | Some(3)), "{o:?}");
}

#[test]
fn domain_errors_exit_one() {
    assert_eq!(run(&["area", "(0,[1])"]).status.code(), Some(1));
    assert_eq!(
        run(&["verify", "--case", "1a", "--p", "4", "--q", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["verify", "--case", "nope", "--p", "3", "--q", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["theorem2", "--p", "3", "--genus", "4"]).status.code(),
        Some(1)
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["area"]).status.code(), Some(2));
    assert_eq!(
        run(&["area", "(0,[3,3,3,3])", "--frobnicate"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify-all", "--budget", "r=2"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["classify", "--group", "dp:x"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn classify_and_enumerate() {
    let v = json(&["classify", "--group", "dp:3"]);
    assert_eq!(v["order"], 6);
    assert_eq!(v["classes"].as_array().unwrap().len(), 1);
    assert_eq!(v["classes"][0]["size"], 3);
    let v = json(&[
        "classify", "--group", "case:1a", "--param", "p=3", "--param", "q=2",
    ]);
    assert_eq!(v["classes"].as_array().unwrap().len(), 2);
    let v = json(&["enumerate", "(0,+,[3,3],{(3,3)})", "--group", "dp:3"]);
    assert_eq!(v["count"], 18);
    let o = run(&["enumerate", "(0,+,[3,3],{(3,3)})", "--group", "dp:3"]);
    assert!(stdout(&o).ends_with("18 epimorphisms onto dp:3 of order 6\n"));
}

#[test]
fn signatures_text_and_json_agree() {
    let text = stdout(&run(&["signatures", "--p", "3", "--genus", "4"]));
    let v = json(&["signatures", "--p", "3", "--genus", "4"]);
    assert!(text.contains(v["cyclic_p_gonal"].as_str().unwrap()));
    for row in v["real"].as_array().unwrap() {
        assert!(text.contains(row["signature"].as_str().unwrap()));
    }
    assert!(text.contains("(0,+,[3,3,3],{(-)})"));
}

#[test]
fn theorem2_runs_clean() {
    let o = run(&["theorem2", "--p", "3", "--genus", "5", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("240 epis, 240 consistent, 0 findings\n"));
}

#[test]
fn verify_all_reports_mismatches_with_exit_three() {
    let o = run(&["verify-all", "--budget", "p=3;q=3"]);
    assert_eq!(o.status.code(), Some(3));
    let v = json(&["verify-all", "--budget", "p=3;q=3"]);
    let line = format!("{} MISMATCH", v["summary"]["mismatches"]);
    assert!(stdout(&o).contains(&line));
}

#[test]
fn ledger_override() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/ledger.toml");
    let o = run(&[
        "verify", "--case", "1a", "--p", "3", "--q", "5", "--ledger", path,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[
        "verify",
        "--case",
        "1a",
        "--p",
        "3",
        "--q",
        "5",
        "--ledger",
        "/nonexistent.toml",
    ]);
    assert_eq!(o.status.code(), Some(1));
}
