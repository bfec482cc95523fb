//! JSON output of the example invocations, compared byte for byte with
//! tests/golden/*.json. Set CUSPDEF_BLESS=1 to rewrite the files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuspdef")).args(args).output().expect("binary runs")
}

fn golden(name: &str, args: &[&str], code: i32) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{}.json", name));
    let got = String::from_utf8(out.stdout).unwrap();
    if std::env::var_os("CUSPDEF_BLESS").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(got, want, "{} differs from golden", name);
    serde_json::from_str::<serde_json::Value>(&got).expect("valid JSON");
}

#[test]
fn tjurina_outputs() {
    golden("tjurina_cusp", &["tjurina", "x^2-y^3-z^2+w^3", "--json"], 0);
    golden("tjurina_curve", &["tjurina", "x^2-y^3", "--json"], 0);
    golden("tjurina_smooth", &["tjurina", "x", "--json"], 0);
}

#[test]
fn singular_outputs() {
    golden("singular_three_nodes", &["singular", "--lambda", "1", "--mu", "0", "--nu", "0", "--sigma", "3", "--json"], 0);
    golden("singular_central", &["singular", "-l", "0", "-m", "0", "-n", "0", "-s", "0", "--json"], 0);
    golden("singular_smooth", &["singular", "-l", "1", "-m", "0", "-n", "0", "-s", "0", "--json"], 0);
    golden("singular_numeric", &["singular", "-l", "1", "-s", "3", "--mode", "numeric", "--json"], 0);
}

#[test]
fn verify_outputs() {
    golden("verify_friedman", &["verify", "--suite", "friedman", "--json"], 0);
    golden("verify_c", &["verify", "--suite", "C", "--json"], 0);
    golden("verify_all", &["verify", "--suite", "all", "--json"], 0);
}

#[test]
fn report_schema() {
    let out = run(&["verify", "--suite", "all", "--json", "--seed", "7"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        for key in ["id", "cite", "status", "details"] {
            assert!(c[key].is_string(), "{} missing in {}", key, c);
        }
        assert_eq!(c["status"], "pass");
    }
    assert_eq!(v["passed"].as_u64().unwrap() as usize, checks.len());
    assert_eq!(v["failed"], 0);
}

#[test]
fn unicode_flags() {
    let ascii = run(&["singular", "-l", "-10", "-m", "9", "-n", "9", "-s", "6", "--json"]);
    let greek = run(&["singular", "--λ", "-10", "--μ", "9", "--ν", "9", "--σ", "6", "--json"]);
    assert!(ascii.status.success());
    assert_eq!(ascii.stdout, greek.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["tjurina", "x^2 +* y"]).status.code(), Some(2));
    assert_eq!(run(&["singular", "--lambda", "abc"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "S"]).status.code(), Some(0));
}

#[test]
fn human_output() {
    let out = run(&["tjurina", "x^2-y^3-z^2+w^3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "basis: 1, y, w, y*w\ntjurina: 4\n");
    let out = run(&["singular", "-l", "1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "smooth fiber\n");
}
