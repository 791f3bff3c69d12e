use std::process::Command;

use qcti_cli::config::{CombinatoricsGrid, IdentityGrid, Range};
use qcti_cli::{run, Report, RunConfig, Status, SuiteSpec};

fn config(suites: Vec<SuiteSpec>, jobs: usize) -> RunConfig {
    RunConfig { suites, jobs, ..RunConfig::default() }
}

fn small_qmorris() -> SuiteSpec {
    SuiteSpec::Qmorris(IdentityGrid {
        n: Range::span(1, 2),
        a: Range::span(0, 2),
        b: Range::span(0, 2),
        c: Range::span(0, 2),
        ..IdentityGrid::default()
    })
}

#[test]
fn qmorris_small_grid_passes() {
    let r = run(&config(vec![small_qmorris()], 0)).unwrap();
    assert_eq!(r.summary.pass, 54);
    assert!(!r.failed());
    assert!(r.results.iter().all(|e| e.verdict.as_ref().is_some_and(|v| v.equal)));
}

#[test]
fn combinatorics_grid_passes() {
    let g = CombinatoricsGrid { s: Range::span(1, 4), ..CombinatoricsGrid::default() };
    let r = run(&config(vec![SuiteSpec::Combinatorics(g)], 0)).unwrap();
    assert!(r.summary.pass > 0);
    assert_eq!(r.summary.fail, 0);
    assert_eq!(r.summary.timeout, 0);
}

#[test]
fn empty_config_gives_empty_report() {
    let r = run(&RunConfig::default()).unwrap();
    assert!(r.results.is_empty());
    assert_eq!(r.summary.pass + r.summary.fail + r.summary.skipped + r.summary.timeout, 0);
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let suites = vec![small_qmorris(), SuiteSpec::default_for("thm11").unwrap()];
    let one = run(&config(suites.clone(), 1)).unwrap().without_timings();
    let many = run(&config(suites, 4)).unwrap().without_timings();
    assert_eq!(one, many);
    assert_eq!(one.to_json(), many.to_json());
}

#[test]
fn out_of_domain_points_are_skipped_with_reason() {
    let r = run(&config(vec![SuiteSpec::default_for("thm11").unwrap()], 0)).unwrap();
    assert!(r.summary.skipped > 0);
    for e in r.results.iter().filter(|e| e.status == Status::Skip) {
        assert!(e.reason.as_deref().is_some_and(|s| !s.is_empty()), "{}", e.label);
    }
    assert_eq!(r.summary.fail, 0);
}

#[test]
fn known_splitting_points_fail() {
    let r = run(&config(vec![SuiteSpec::default_for("splitting").unwrap()], 0)).unwrap();
    let failed: Vec<&str> = r.results.iter().filter(|e| e.status == Status::Fail).map(|e| e.label.as_str()).collect();
    assert_eq!(failed.len(), 4);
    assert!(failed.iter().all(|l| l.contains("c=1")), "{failed:?}");
    assert!(r.failed());
}

#[test]
fn config_parsing_accepts_all_range_forms() {
    let cfg = RunConfig::from_json(
        r#"{"suites": [{"suite": "qmorris", "n": 2, "a": [0, 1], "b": {"from": 0, "to": 1}}], "jobs": 2}"#,
    )
    .unwrap();
    assert_eq!(cfg.jobs, 2);
    let SuiteSpec::Qmorris(g) = &cfg.suites[0] else { panic!("wrong suite") };
    assert_eq!(g.n.values(), vec![2]);
    assert_eq!(g.a.values(), vec![0, 1]);
    assert_eq!(g.b.values(), vec![0, 1]);
    let text = serde_json::to_string(&cfg).unwrap();
    assert_eq!(RunConfig::from_json(&text).unwrap(), cfg);
}

#[test]
fn config_errors_are_reported() {
    for bad in [
        r#"{"suites": [{"suite": "nope"}]}"#,
        r#"{"suites": [{"suite": "qmorris", "z": 1}]}"#,
        r#"{"suites": [{"suite": "qmorris", "a": {"from": 2, "to": 1}}]}"#,
        r#"{"suites": [{"suite": "splitting", "forms": ["U"]}]}"#,
        r#"{"suites": [{"suite": "combinatorics", "kinds": []}]}"#,
        r#"{"timeout_secs": -1}"#,
        r#"{"suites": 3}"#,
    ] {
        assert!(RunConfig::from_json(bad).is_err(), "{bad}");
    }
    assert!(SuiteSpec::default_for("nope").is_err());
}

#[test]
fn select_prefers_config_grids() {
    let mut cfg = config(vec![small_qmorris()], 0);
    cfg.select(&["qmorris".into(), "aflt".into()]).unwrap();
    assert_eq!(cfg.suites.len(), 2);
    assert_eq!(cfg.suites[0], small_qmorris());
    assert_eq!(cfg.suites[1], SuiteSpec::default_for("aflt").unwrap());
}

#[test]
fn text_report_has_one_line_per_point() {
    let r = run(&config(vec![small_qmorris()], 0)).unwrap();
    let text = r.to_text();
    assert_eq!(text.lines().count(), r.results.len());
    assert!(text.lines().all(|l| l.starts_with("qmorris ") && l.contains(" PASS ")));
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qcti"))
}

#[test]
fn binary_writes_json_report() {
    let path = std::env::temp_dir().join(format!("qcti-report-{}.json", std::process::id()));
    let out = bin().args(["--suite", "qmorris", "--jobs", "2", "--out"]).arg(&path).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("pass 54 fail 0"));
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(report.summary.pass, 54);
    assert_eq!(report.meta.q_field, "QQ(q)");
}

#[test]
fn binary_exit_codes() {
    let empty = std::env::temp_dir().join(format!("qcti-empty-{}.json", std::process::id()));
    std::fs::write(&empty, "{}").unwrap();
    let out = bin().arg("--config").arg(&empty).output().unwrap();
    std::fs::remove_file(&empty).ok();
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.results.is_empty());

    let out = bin().args(["--suite", "splitting", "--format", "text"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains(" FAIL "));

    let out = bin().args(["--suite", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
