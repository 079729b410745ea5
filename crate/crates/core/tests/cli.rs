//! The command-line front end, driven in process.

use entcount::cli::run_with;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("entcount").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn count_prints_the_number() {
    assert_eq!(run(&["count", "colorings", "--graph", "k_dd:3", "--q", "3"]), (0, "42\n".into(), String::new()));
    assert_eq!(run(&["count", "independent-sets", "--graph", "k_dd:3"]).1, "15\n");
    assert_eq!(run(&["count", "permanent", "--matrix", "ones:4"]).1, "24\n");
    assert_eq!(run(&["count", "triangle-family", "--n", "4"]).1, "8\n");
}

#[test]
fn count_json_carries_the_value() {
    let (code, out, _) = run(&["count", "perfect-matchings", "--graph", "kn:6", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], "15");
}

#[test]
fn bregman_on_identity_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("id3.txt");
    std::fs::write(&path, "matrix 3\n100\n010\n001\n").unwrap();
    let out = dir.path().join("out.json");
    let (code, stdout, err) = run(&[
        "bound",
        "bregman",
        "--matrix",
        path.to_str().unwrap(),
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!((code, stdout.as_str(), err.as_str()), (0, "", ""));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["count"], "1");
    assert_eq!(v["verdict"], "Equal");
}

#[test]
fn umc_check_reports_json() {
    let (code, out, _) = run(&["check", "umc", "--half-n", "3", "--d", "3", "--t-max", "4", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["check"], "umc");
    assert_eq!(v[0]["pass"], true);
    assert!(v[0]["instances"].as_u64().unwrap() > 0);
}

#[test]
fn sweep_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let specs = dir.path().join("specs.json");
    std::fs::write(&specs, r#"[{"name":"coin","params":{"max_n":4},"seed":1},{"name":"chernoff"}]"#).unwrap();
    let (code, out, err) = run(&["sweep", "--specs", specs.to_str().unwrap(), "--format", "text"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["count", "colorings", "--graph", "k_dd:3"]).0, 2);
    assert_eq!(run(&["count", "colorings", "--graph", "nonsense:1", "--q", "3"]).0, 2);
    assert_eq!(run(&["check", "no-such-check"]).0, 2);
    assert_eq!(run(&["check", "bregman", "--n", "9"]).0, 2);
    assert_eq!(run(&["sweep"]).0, 2);
}

#[test]
fn enumerate_counts_classes() {
    assert_eq!(run(&["enumerate", "all", "--n", "4"]).1, "11\n");
    assert_eq!(run(&["enumerate", "regular", "--n", "8", "--d", "3"]).1, "6\n");
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Exit codes"));
}

#[test]
fn environment_caps_reject_large_params() {
    std::env::set_var("ENTCOUNT_CAP_MAX_RANGE", "3");
    let (code, _, err) = run(&["check", "entropy-fuzz", "--instances", "5", "--max-range", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("ENTCOUNT_CAP_MAX_RANGE"));
    assert_eq!(run(&["check", "entropy-fuzz", "--instances", "5", "--max-range", "3"]).0, 0);
}
