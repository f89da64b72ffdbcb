//! Binary-level contract tests: output bytes, exit codes, the element
//! cap environment variable, and schema validity of every JSON report
//! kind.

use std::path::PathBuf;
use std::process::{Command, Output};

const CAP_ENV: &str = "SCALEKIT_MAX_ELEMENTS";

fn scalekit(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_scalekit"));
    // Isolate from any ambient cap override.
    cmd.env_remove(CAP_ENV);
    cmd.args(args);
    cmd
}

fn run(args: &[&str]) -> Output {
    scalekit(args).output().expect("the binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "`scalekit {}` failed: {}",
        args.join(" "),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("output is utf-8")
}

fn json_of(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout_of(args)).expect("output parses as json")
}

#[test]
fn check_reports_the_counterexample_verdict() {
    let report = json_of(&[
        "check",
        "--mode",
        "set",
        "--n",
        "2",
        "--measure",
        "precision",
        "--ordering",
        "paper-counterexample",
    ]);
    assert_eq!(report["measure"], "precision");
    assert_eq!(report["ordering"], "counterexample");
    assert_eq!(report["kind"], "strict-total");
    assert_eq!(report["verdict"], "not-ordinal");
    assert_eq!(report["spacing"], serde_json::Value::Null);
    let witness = &report["witnesses"][0];
    assert_eq!(witness["elements"], serde_json::json!(["00", "10"]));
    assert_eq!(witness["values"], serde_json::json!(["0", "1/2"]));
}

#[test]
fn check_reports_rbp_interval_spacing_on_rbto() {
    let report = json_of(&[
        "check", "--mode", "rank", "--n", "4", "--measure", "rbp", "--p", "1/2", "--ordering",
        "rbto",
    ]);
    assert_eq!(report["verdict"], "interval");
    assert_eq!(report["spacing"], "1/16");
    assert_eq!(report["ordering"], "rbto(n=4) (reconstruction)");
    assert_eq!(report["witnesses"], serde_json::json!([]));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec![
            "check",
            "--mode",
            "set",
            "--n",
            "3",
            "--measure",
            "f",
            "--ordering",
            "sbto",
        ],
        vec![
            "census", "--mode", "rank", "--n", "2", "--measure", "ap", "--measure", "dcg",
        ],
        vec!["repro-paper"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout, "args: {args:?}");
    }
}

#[test]
fn universe_text_lists_elements_in_enumeration_order() {
    assert_eq!(
        stdout_of(&["universe", "--mode", "rank", "--n", "2", "--format", "text"]),
        "00\n01\n10\n11\n"
    );
}

#[test]
fn exit_codes_separate_config_errors_from_cap_violations() {
    // Completed analysis: 0.
    assert_eq!(run(&["universe", "--mode", "set", "--n", "2"]).status.code(), Some(0));

    // Invalid measure spec (rbp without --p): 2.
    let out = run(&[
        "check", "--mode", "rank", "--n", "2", "--measure", "rbp", "--ordering", "rbto",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rbp"));

    // Unknown measure: 2.
    let out = run(&[
        "measure", "--mode", "set", "--n", "2", "--measure", "ndcg",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Universe over the cap: 3, and the message names both sizes.
    let out = scalekit(&["universe", "--mode", "rank", "--n", "2"])
        .env(CAP_ENV, "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains('4') && stderr.contains('3'), "{stderr}");

    // A malformed cap value is a config error, not a cap violation.
    let out = scalekit(&["universe", "--mode", "rank", "--n", "2"])
        .env(CAP_ENV, "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_env_permits_universes_within_the_cap() {
    let out = scalekit(&["universe", "--mode", "rank", "--n", "2"])
        .env(CAP_ENV, "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn check_accepts_an_ordering_file_with_a_partial_order() {
    let path = std::env::temp_dir().join(format!("scalekit-partial-{}.txt", std::process::id()));
    std::fs::write(&path, "partial\n00 < 10\n10 < 11\n").unwrap();
    let report = json_of(&[
        "check",
        "--mode",
        "set",
        "--n",
        "2",
        "--measure",
        "precision",
        "--ordering",
        path.to_str().unwrap(),
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(report["kind"], "partial");
    assert_eq!(report["verdict"], "ordinal");
    assert_eq!(report["spacing"], serde_json::Value::Null);
}

#[test]
fn csv_and_text_formats_are_available() {
    let csv = stdout_of(&[
        "check", "--mode", "set", "--n", "2", "--measure", "recall", "--ordering", "sbto",
        "--format", "csv",
    ]);
    assert!(csv.starts_with("measure,ordering,kind,verdict,spacing,affine_a,affine_b\n"));
    assert!(csv.contains("recall"));

    let text = stdout_of(&[
        "check", "--mode", "set", "--n", "2", "--measure", "recall", "--ordering", "sbto",
        "--format", "text",
    ]);
    assert!(text.contains("verdict: interval"));

    let census_csv = stdout_of(&[
        "census", "--mode", "set", "--n", "2", "--measure", "precision", "--format", "csv",
    ]);
    assert!(census_csv.starts_with("measure,order_space,examined,"));

    let table = stdout_of(&[
        "measure", "--mode", "rank", "--n", "2", "--measure", "dcg", "--format", "csv",
    ]);
    assert!(table.starts_with("element,"));
}

/// Every JSON report kind validates against the published schema.
#[test]
fn json_reports_validate_against_the_schema() {
    let schema_path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "report.schema.json"]
        .iter()
        .collect();
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&schema_path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("the schema compiles");

    let reports: Vec<(&str, Vec<&str>)> = vec![
        (
            "check/not-ordinal",
            vec![
                "check",
                "--mode",
                "set",
                "--n",
                "2",
                "--measure",
                "precision",
                "--ordering",
                "paper-counterexample",
            ],
        ),
        (
            "check/interval",
            vec![
                "check", "--mode", "rank", "--n", "3", "--measure", "rbp", "--p", "1/2",
                "--ordering", "rbto",
            ],
        ),
        (
            "check/ordinal-not-interval",
            vec![
                "check", "--mode", "rank", "--n", "2", "--measure", "rbp", "--p", "1/4",
                "--ordering", "rbto",
            ],
        ),
        (
            "check/partial-induced",
            vec![
                "check", "--mode", "rank", "--n", "2", "--measure", "dcg", "--ordering",
                "induced",
            ],
        ),
        (
            "census/exhaustive",
            vec![
                "census", "--mode", "set", "--n", "2", "--measure", "precision", "--measure",
                "recall",
            ],
        ),
        (
            "census/sampled",
            vec![
                "census", "--mode", "rank", "--n", "2", "--measure", "ap", "--sample", "50",
                "--seed", "7",
            ],
        ),
        (
            "diffstruct",
            vec!["diffstruct", "--mode", "set", "--n", "2", "--ordering", "sbto"],
        ),
        ("universe", vec!["universe", "--mode", "rank", "--n", "2"]),
        (
            "measure-table",
            vec!["measure", "--mode", "rank", "--n", "2", "--measure", "err"],
        ),
    ];
    for (label, args) in reports {
        let instance = json_of(&args);
        let errors: Vec<String> = validator
            .iter_errors(&instance)
            .map(|e| format!("{e} at {}", e.instance_path()))
            .collect();
        assert!(errors.is_empty(), "{label}: {errors:?}");
    }
}
