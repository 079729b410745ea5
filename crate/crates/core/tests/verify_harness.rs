//! Determinism, witness replay and exit codes of the check runner.

use entcount::bounds::Verdict;
use entcount::verify::{
    emit, exit_code, read_reports, render_reports, replay_in, run_check, run_check_in, sweep, CheckClass, CheckEntry,
    CheckSpec, Format, Observation, Params, Registry,
};
use entcount::Result;
use serde_json::{json, Value};

fn small_inputs(_: &CheckSpec) -> Result<Vec<Value>> {
    Ok((0..20).map(|k| json!({ "k": k })).collect())
}

/// Claims k <= 10, which fails for k > 10.
fn inverted(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let k = v["k"].as_u64().unwrap();
    Ok(Observation {
        input: v.clone(),
        lhs: k.to_string(),
        rhs: "10".into(),
        verdict: if k < 10 { Verdict::BelowStrict } else if k == 10 { Verdict::Equal } else { Verdict::AboveStrict },
        violation: k > 10,
        tight: (k == 10).then(|| "k = 10".to_string()),
        detail: String::new(),
    })
}

fn registry() -> Registry {
    let mut r = Registry::standard();
    r.insert(CheckEntry {
        name: "inverted",
        class: CheckClass::Theorem,
        summary: "k <= 10 for k < 20",
        family: small_inputs,
        eval: inverted,
    });
    r
}

#[test]
fn reports_are_deterministic() {
    for name in ["entropy-fuzz", "loomis-whitney", "embed-bound"] {
        let spec = CheckSpec::new(name)
            .with_params(Params { instances: Some(50), ..Default::default() })
            .with_seed(7);
        let a = run_check(&spec).unwrap().without_timing();
        let b = run_check(&spec).unwrap().without_timing();
        assert_eq!(render_reports(&[a], Format::Json), render_reports(&[b], Format::Json), "{name}");
    }
}

#[test]
fn seeds_change_random_families() {
    let p = Params { instances: Some(30), ..Default::default() };
    let mut a = CheckSpec::new("loomis-whitney").with_params(p.clone()).with_seed(1);
    let mut b = CheckSpec::new("loomis-whitney").with_params(p).with_seed(2);
    a.verbose = true;
    b.verbose = true;
    let (ra, rb) = (run_check(&a).unwrap(), run_check(&b).unwrap());
    assert_ne!(ra.rows, rb.rows);
}

#[test]
fn violation_gives_witnesses_that_replay() {
    let reg = registry();
    let spec = CheckSpec::new("inverted");
    let report = run_check_in(&reg, &spec).unwrap();
    assert!(!report.pass);
    assert_eq!(report.violations.len(), 9);
    assert_eq!(report.tight, vec!["k = 10".to_string()]);
    assert_eq!(exit_code(&[report.clone()]), 1);
    for w in &report.violations {
        assert!(replay_in(&reg, &spec, w).unwrap());
    }
    let mut forged = report.violations[0].clone();
    forged.lhs = "3".into();
    assert!(!replay_in(&reg, &spec, &forged).unwrap());
}

#[test]
fn witnesses_survive_a_file_round_trip() {
    let reg = registry();
    let spec = CheckSpec::new("inverted");
    let report = run_check_in(&reg, &spec).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reports.json");
    emit(&[report.clone()], Format::Json, Some(&path)).unwrap();
    let back = read_reports(&path).unwrap();
    assert_eq!(back, vec![report]);
    for w in &back[0].violations {
        assert!(replay_in(&reg, &spec, w).unwrap());
    }
}

#[test]
fn empty_sweep_passes() {
    let reports = sweep(&[]).unwrap();
    assert!(reports.is_empty());
    assert_eq!(exit_code(&reports), 0);
}

#[test]
fn unknown_check_and_bad_params_are_errors() {
    assert!(run_check(&CheckSpec::new("no-such-check")).is_err());
    let too_big = CheckSpec::new("bregman").with_params(Params { n: Some(5), ..Default::default() });
    assert!(run_check(&too_big).is_err());
}

#[test]
fn csv_summary_has_one_row_per_report() {
    let specs = [CheckSpec::new("coin"), CheckSpec::new("triangle-family")];
    let reports = sweep(&specs).unwrap();
    let csv = render_reports(&reports, Format::Csv);
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.lines().nth(1).unwrap().starts_with("coin,"));
}
