//! End-to-end tests of the `condmon` binary: exit-code contract, golden-file
//! byte determinism, and the worked examples for each subcommand.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .expect("golden file is checked in")
}

fn condmon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_condmon"))
        .args(args)
        // Isolate from the ambient environment.
        .env_remove("CONDMON_BUDGET_SCALE")
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).expect("stdout is UTF-8")
}

fn stderr_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stderr).expect("stderr is UTF-8")
}

#[test]
fn validate_accepts_a_good_spec_and_reports_its_digest() {
    let out = condmon(&["validate", data("ideal.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let value: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(value["valid"], serde_json::json!(true));
    assert_eq!(value["kind"], serde_json::json!("ideal-extension"));
    assert_eq!(value["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn validate_rejects_a_dominated_generator_with_exit_2() {
    let out = condmon(&["validate", data("bad_antichain.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(
        err.contains("(2,2)"),
        "diagnostic must name the dominated generator: {err}"
    );
}

#[test]
fn io_failures_exit_3() {
    let out = condmon(&["validate", data("no_such_file.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let out = condmon(&["validate", data("malformed.json").to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "malformed JSON is an I/O-category failure"
    );
    assert!(stderr_of(&out).contains("malformed JSON"));
}

#[test]
fn invariants_match_the_golden_file_byte_for_byte() {
    let spec = data("ideal.json");
    let args = ["invariants", spec.to_str().unwrap(), "--element", "(3,3)"];
    let first = condmon(&args);
    assert_eq!(
        first.status.code(),
        Some(0),
        "stderr: {}",
        stderr_of(&first)
    );
    assert_eq!(stdout_of(&first), golden("invariants_ideal.json"));
    // Timing goes to stderr only; stdout is byte-identical across runs.
    let second = condmon(&args);
    assert_eq!(first.stdout, second.stdout);
    assert!(stderr_of(&first).contains("elapsed:"));
}

#[test]
fn invariants_of_the_identity_are_all_zero() {
    let out = condmon(&[
        "invariants",
        data("ideal.json").to_str().unwrap(),
        "--element",
        "(0,0)",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    let body = &value["elements"][0];
    assert_eq!(body["Z_count"], serde_json::json!(1));
    assert_eq!(body["L"], serde_json::json!([0]));
    assert_eq!(body["c"], serde_json::json!(0));
    assert_eq!(body["c_mon"], serde_json::json!(0));
}

#[test]
fn zero_sum_invariants_use_the_spec_default_element() {
    // (0)^2 (1)^2 over C2 factors as ((0)(1)^2)·(0) and (0)·(0)·((1)^2)
    // — lengths {2, 3} at distance 3.
    let out = condmon(&["invariants", data("zerosum.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let value: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    let body = &value["elements"][0];
    assert_eq!(body["Z_count"], serde_json::json!(2));
    assert_eq!(body["L"], serde_json::json!([2, 3]));
    assert_eq!(body["c"], serde_json::json!(3));
}

#[test]
fn labeled_prime_invariants_analyze_prime_multisets() {
    let out = condmon(&[
        "invariants",
        data("primes.json").to_str().unwrap(),
        "--element",
        "p^3",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let value: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    let body = &value["elements"][0];
    assert_eq!(body["element"], serde_json::json!("p^3"));
    assert_eq!(body["Z_count"], serde_json::json!(1));
    assert_eq!(body["L"], serde_json::json!([1]));
}

#[test]
fn survey_rows_match_the_golden_csv() {
    let spec = data("ideal.json");
    let args = ["survey", spec.to_str().unwrap(), "--format", "csv"];
    let out = condmon(&args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    assert_eq!(stdout_of(&out), golden("survey_ideal.csv"));
    // Header plus one row per member of the (5,5) window: the identity and
    // the 25 vectors above (1,1).
    assert_eq!(stdout_of(&out).lines().count(), 27);
}

#[test]
fn survey_json_summary_counts_every_row_as_an_interval() {
    let out = condmon(&["survey", data("ideal.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    let summary = &value["summary"];
    assert_eq!(summary["rows"], serde_json::json!(26));
    assert_eq!(summary["max_c"], serde_json::json!(3));
    assert_eq!(summary["interval_rows"], serde_json::json!(26));
    assert_eq!(summary["error_rows"], serde_json::json!(0));
    for row in value["rows"].as_array().unwrap() {
        assert!(row["invariants"]["c"].as_u64().unwrap() <= 3);
    }
}

#[test]
fn survey_window_flag_overrides_the_spec_window() {
    let out = condmon(&[
        "survey",
        data("ideal.json").to_str().unwrap(),
        "--window",
        "2,2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    // identity, (1,1), (1,2), (2,1), (2,2)
    assert_eq!(value["summary"]["rows"], serde_json::json!(5));
}

#[test]
fn constructed_cycle_monoid_surveys_the_equal_catenary_row() {
    let out = condmon(&["construct", "cycle", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let spec_path = std::env::temp_dir().join(format!("condmon-cycle-{}.json", std::process::id()));
    std::fs::write(&spec_path, &out.stdout).unwrap();
    let survey = condmon(&[
        "survey",
        spec_path.to_str().unwrap(),
        "--window",
        "1,1,1,1,1,1",
        "--format",
        "csv",
    ]);
    std::fs::remove_file(&spec_path).ok();
    assert_eq!(
        survey.status.code(),
        Some(0),
        "stderr: {}",
        stderr_of(&survey)
    );
    let all_ones = stdout_of(&survey)
        .lines()
        .find(|line| line.starts_with("\"(1,1,1,1,1,1)\""))
        .expect("the all-ones vector is a member");
    // element,Z_count,L,delta,c,c_eq,...: the cycle's all-ones element has
    // equal-length catenary 3.
    let fields: Vec<&str> = all_ones.split(',').collect();
    assert_eq!(fields[fields.len() - 5], "3", "c_eq field of {all_ones}");
}

#[test]
fn construct_output_is_consumable_by_validate() {
    let out = condmon(&[
        "construct",
        "interval",
        "--group",
        "C5",
        "--k",
        "2",
        "--ell",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let value: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(value["group"], serde_json::json!("C5"));
    assert!(value["element"].is_string());
    let spec_path =
        std::env::temp_dir().join(format!("condmon-interval-{}.json", std::process::id()));
    std::fs::write(&spec_path, &out.stdout).unwrap();
    let check = condmon(&["validate", spec_path.to_str().unwrap()]);
    std::fs::remove_file(&spec_path).ok();
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn construct_rejects_missing_parameters_with_exit_2() {
    let out = condmon(&["construct", "cycle"]);
    assert_eq!(out.status.code(), Some(2));
    let out = condmon(&["construct", "warp_drive"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn davenport_cross_check_agrees_on_cyclic_and_elementary_groups() {
    for (group, expected) in [("C8", 8u64), ("C2xC2", 3)] {
        let out = condmon(&["davenport", group]);
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
        let value: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
        assert_eq!(value["davenport"], serde_json::json!(expected));
        assert_eq!(value["via_zero_sum_free"], serde_json::json!(expected));
        assert_eq!(value["agree"], serde_json::json!(true));
    }
}

#[test]
fn davenport_accepts_a_restricted_support() {
    // Over C8 with support {(2)}: the only minimal zero-sum is (2)^4.
    let out = condmon(&["davenport", "C8", "--support", "(2)"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(value["davenport"], serde_json::json!(4));
}

#[test]
fn verify_reports_suite_verdicts_as_json() {
    let out = condmon(&["verify", "davenport", "cycle-monoids"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let value: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    let verdicts = value["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 2);
    for verdict in verdicts {
        assert_eq!(verdict["passed"], serde_json::json!(true));
        assert!(verdict["assertions"].as_u64().unwrap() > 0);
    }
    let err = stderr_of(&out);
    assert!(err.contains("suite davenport: pass"), "stderr: {err}");
}

#[test]
fn verify_rejects_unknown_suites_with_exit_2() {
    let out = condmon(&["verify", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
    let out = condmon(&["verify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_list_prints_all_suite_names() {
    let out = condmon(&["verify", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    let names: Vec<&str> = stdout_of(&out).lines().collect();
    assert_eq!(names.len(), 13);
    assert_eq!(names[0], "catenary-sweep");
    assert_eq!(names[12], "engine-audit");
}

#[test]
fn budget_scale_environment_variable_limits_work() {
    let out = Command::new(env!("CARGO_BIN_EXE_condmon"))
        .args([
            "invariants",
            data("ideal.json").to_str().unwrap(),
            "--element",
            "(3,3)",
        ])
        .env("CONDMON_BUDGET_SCALE", "0.0000001")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(4), "stderr: {}", stderr_of(&out));
    assert!(
        stderr_of(&out).contains("cap"),
        "stderr: {}",
        stderr_of(&out)
    );
    let out = Command::new(env!("CARGO_BIN_EXE_condmon"))
        .args(["davenport", "C2"])
        .env("CONDMON_BUDGET_SCALE", "not-a-number")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}
