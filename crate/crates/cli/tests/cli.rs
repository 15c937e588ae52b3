use std::path::PathBuf;
use std::process::Command;

use pathmodel_cli::model::{build, load_model, parse, Guards, LoadError};
use pathmodel_cli::report::{without_timing, Status};
use pathmodel_cli::suites::{parse_suites, run_suites, ALL_SUITES};

fn path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn all() -> Vec<String> {
    ALL_SUITES.iter().map(|s| s.to_string()).collect()
}

fn status_of(r: &pathmodel_cli::report::Report, name: &str) -> Status {
    r.suites.iter().find(|s| s.name == name).unwrap().status
}

#[test]
fn bundled_examples_pass_every_suite() {
    for ex in ["examples/set_extensional.json", "examples/groupoid_walking_iso.json"] {
        let m = load_model(&path(ex), &Guards::default()).unwrap();
        let r = run_suites(&m, &all());
        for s in &r.suites {
            assert_eq!(s.status, Status::Pass, "{ex}: {} {:?}", s.name, s.reason);
            assert!(!s.checks.is_empty());
        }
        assert_eq!(r.exit_code(), 0);
    }
}

#[test]
fn set_model_records_path_iff_equal() {
    let m = load_model(&path("examples/set_extensional.json"), &Guards::default()).unwrap();
    let r = run_suites(&m, &["a1".to_string()]);
    assert!(r.suites[0].checks.iter().any(|c| c.name == "path_iff_equal" && c.holds));
}

#[test]
fn reports_are_deterministic_up_to_timing() {
    let m = load_model(&path("examples/groupoid_walking_iso.json"), &Guards::default()).unwrap();
    let a = run_suites(&m, &all()).to_json();
    let b = run_suites(&m, &all()).to_json();
    assert_eq!(without_timing(&a).unwrap(), without_timing(&b).unwrap());
}

#[test]
fn suite_selection_keeps_fixed_order_and_runs_dependencies_silently() {
    assert_eq!(parse_suites("kan, a1").unwrap(), vec!["a1", "kan"]);
    assert_eq!(parse_suites("all").unwrap().len(), 7);
    assert!(parse_suites("a3").is_err());
    let m = load_model(&path("examples/set_extensional.json"), &Guards::default()).unwrap();
    let r = run_suites(&m, &["j".to_string()]);
    assert_eq!(r.suites.len(), 1);
    assert_eq!(r.suites[0].status, Status::Pass);
}

#[test]
fn non_isofibration_fails_a2_and_skips_downstream() {
    let m = load_model(&path("tests/fixtures/not_isofibration.json"), &Guards::default()).unwrap();
    let r = run_suites(&m, &all());
    assert_eq!(status_of(&r, "laws"), Status::Pass);
    assert_eq!(status_of(&r, "a2"), Status::Fail);
    for s in ["a1", "normal", "connection", "j", "kan"] {
        assert_eq!(status_of(&r, s), Status::Skipped, "{s}");
        assert!(r.suites.iter().find(|x| x.name == s).unwrap().reason.is_some());
    }
    let hur = r.suites.iter().find(|s| s.name == "a2").unwrap();
    assert!(hur.checks.iter().all(|c| c.witness.is_some()));
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn parse_errors_carry_positions() {
    let text = std::fs::read_to_string(path("tests/fixtures/parse_error.json")).unwrap();
    match parse(&text) {
        Err(LoadError::Parse { line, column, .. }) => assert_eq!((line, column), (4, 31)),
        other => panic!("expected a parse error, got {:?}", other.err()),
    }
    assert!(matches!(parse(r#"{"name": "x", "colour": 1}"#), Err(LoadError::Parse { .. })));
}

#[test]
fn non_associative_tables_are_rejected() {
    let err = load_model(&path("tests/fixtures/not_associative.json"), &Guards::default()).err().unwrap();
    assert!(err.to_string().contains("not associative"), "{err}");
}

#[test]
fn overrides_beat_file_guards() {
    let text = std::fs::read_to_string(path("examples/groupoid_walking_iso.json")).unwrap();
    let m = build(parse(&text).unwrap(), &Guards::default()).unwrap();
    assert_eq!(m.max_box_dim, 3);
    let o = Guards {
        max_objects: Some(2),
        max_morphisms: None,
        max_box_dim: Some(1),
    };
    let m = build(parse(&text).unwrap(), &o).unwrap();
    assert_eq!((m.max_box_dim, m.guard.max_objects), (1, 2));
    let r = run_suites(&m, &all());
    assert!(r.suites.iter().any(|s| s.reason.as_deref().is_some_and(|r| r.starts_with("bound"))));
    assert_eq!(r.exit_code(), 2);
}

#[test]
fn binary_exit_codes_and_outputs() {
    let bin = env!("CARGO_BIN_EXE_pathmodel");
    let dir = tempfile::tempdir().unwrap();
    let (json, md) = (dir.path().join("r.json"), dir.path().join("r.md"));
    let run = |model: &str| {
        Command::new(bin)
            .args(["check", "--model"])
            .arg(path(model))
            .arg("--report")
            .arg(&json)
            .arg("--markdown")
            .arg(&md)
            .env_remove("PATHMODEL_MAX_OBJECTS")
            .status()
            .unwrap()
            .code()
    };
    assert_eq!(run("examples/set_extensional.json"), Some(0));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["format_version"], 1);
    assert!(std::fs::read_to_string(&md).unwrap().starts_with("# set_extensional"));
    assert_eq!(run("tests/fixtures/not_isofibration.json"), Some(1));
    assert_eq!(run("tests/fixtures/parse_error.json"), Some(2));

    let out = Command::new(bin)
        .args(["check", "--suites", "laws", "--model"])
        .arg(path("examples/set_extensional.json"))
        .env("PATHMODEL_MAX_BOX_DIM", "2")
        .output()
        .unwrap();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["config"]["guards"]["max_box_dim"], 2);
}
