use std::process::{Command, Output};

use g2skein_core::askey_wilson::{aw_star, verify_three_term};
use g2skein_core::check::Checker;
use g2skein_core::exact::parse_expr;

const AW2: &str = include_str!("golden/aw_star_2.txt");

fn g2skein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2skein"))
        .args(args)
        .env_remove("G2SKEIN_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hecke_suite_reports_four_passes() {
    let o = g2skein(&["verify", "--suites", "hecke", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"], serde_json::json!({"pass": 4, "fail": 0, "skip": 0}));
    assert_eq!(v["records"].as_array().unwrap().len(), 4);
    for key in ["suite", "case", "params", "status", "lhs", "rhs", "elapsed_ms"] {
        assert!(v["records"][0].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn json_round_trips_and_is_deterministic() {
    let args = ["verify", "--suites", "blg,correspondence", "--triple-bound", "4", "--output", "json"];
    let a = g2skein(&args);
    let b = g2skein(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let report: g2skein_cli::Report = serde_json::from_value(v).unwrap();
    assert_eq!(g2skein_cli::emit_report(&report, report.config.output), stdout(&a));
    assert_eq!(report.summary.pass, 2 + 6 * 10 + 6);
}

#[test]
fn empty_selection_is_a_clean_run() {
    let o = g2skein(&["verify", "--suites=", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"], serde_json::json!({"pass": 0, "fail": 0, "skip": 0}));
}

#[test]
fn injected_failure_exits_one() {
    let o = g2skein(&["verify", "--suites", "hecke", "--inject-failure"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL") && text.contains("lhs: ") && text.contains("rhs: 0"), "{text}");
}

#[test]
fn usage_errors_exit_nonzero() {
    for args in [
        &["verify", "--suites", "nope"][..],
        &["verify", "--mode", "random", "--prime", "7"],
        &["verify", "--mode", "random", "--prime", "11"],
        &["verify", "--prime", "13"],
        &["aw", "2", "--params", "1,2,3"],
        &["aw", "2", "--params", "a,b,c,(d"],
        &["act", "--curve", "7"],
        &["skein", "--curve", "2", "1", "1", "1"],
    ] {
        let o = g2skein(args);
        assert!(!o.status.success(), "{args:?}");
        assert_ne!(o.status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn skein_names_the_violated_condition() {
    let o = g2skein(&["skein", "--curve", "2", "1", "1", "4"]);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("|i - j| <= k <= i + j"), "{err}");
    let o = g2skein(&["skein", "--curve", "2", "0", "0", "0"]);
    assert_eq!(stdout(&o), "n(1,1,0) : 1\n");
}

#[test]
fn aw_outputs() {
    assert_eq!(stdout(&g2skein(&["aw", "0"])), "1\n");
    let o = g2skein(&["aw", "2", "--star"]);
    assert_eq!(stdout(&o), AW2);
    // the frozen text reads back to the polynomial the recurrence certifies
    assert_eq!(parse_expr(AW2.trim()).unwrap(), aw_star(2).poly);
    assert!(verify_three_term(1, &Checker::Exact).passed());
    let p = g2skein(&["aw", "1", "--params", "a,b,q^(1/2),-1"]);
    assert!(p.status.success());
}

#[test]
fn act_term_lists() {
    let k6 = stdout(&g2skein(&["act", "--curve", "6"]));
    assert_eq!(k6.lines().next(), Some("(n+1, -1, -1) : 1"));
    assert_eq!(stdout(&g2skein(&["act", "--curve", "1"])), "(n, 0, 0) : x0 + x0^-1\n");
    let k2 = stdout(&g2skein(&["act", "--curve", "2", "--n", "0", "--mode", "prop"]));
    assert!(!k2.is_empty() && k2.lines().all(|l| !l.starts_with("(-1")), "{k2}");
}

#[test]
fn report_goes_to_env_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_g2skein"))
        .args(["verify", "--suites", "hecke", "--output", "json"])
        .env("G2SKEIN_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(dir.path().join("g2skein-report.json")).unwrap();
    assert!(written.contains("\"pass\": 4"));
}

#[test]
fn random_mode_matches_exact_mode() {
    let run = |mode: &str| {
        let o = g2skein(&["verify", "--suites", "hecke,factorize,eigen,blg", "--max-n", "3", "--mode", mode, "--output", "json"]);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["summary"].clone()
    };
    assert_eq!(run("exact"), run("random"));
}
