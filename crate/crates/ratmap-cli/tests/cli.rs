use std::process::{Command, Output};

fn ratmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratmap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn analyze_json_is_one_object_with_expected_regime() {
    let out = ratmap(&[
        "analyze", "--a", "1", "--b", "1", "--c", "1", "--d", "1", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("single json object");
    assert_eq!(v["regime"], "T4a");
    assert_eq!(v["equilibria"].as_array().unwrap().len(), 1);
    assert_eq!(v["cycles"].as_array().unwrap().len(), 0);
}

#[test]
fn analyze_lists_both_cycles_of_the_two_cycle_case() {
    let out = ratmap(&["analyze", "--a", "0.1", "--b", "4", "--c", "-4", "--d", "1.1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("2-cycles (2)"), "text output: {text}");
}

#[test]
fn analyze_far_below_c_minus_reports_invalid_with_exit_zero() {
    let out = ratmap(&[
        "analyze", "--a", "1", "--b", "1", "--c", "-100", "--d", "1", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["regime"], "invalid");
}

#[test]
fn negative_c_flag_forms_agree() {
    let separated = ratmap(&["analyze", "--a", "1", "--b", "5", "--c", "-4", "--d", "1"]);
    let joined = ratmap(&["analyze", "--a", "1", "--b", "5", "--c=-4", "--d", "1"]);
    assert!(separated.status.success());
    assert!(joined.status.success());
    assert_eq!(stdout(&separated), stdout(&joined));
}

#[test]
fn cli_json_is_byte_identical_to_library_serialization() {
    let out = ratmap(&[
        "analyze", "--a", "0.21", "--b", "2.1", "--c", "-2.8", "--d", "1.3", "--format", "json",
    ]);
    let lib = ratmap::report::analyze(0.21, 2.1, -2.8, 1.3).unwrap();
    let expected = serde_json::to_string_pretty(&lib).unwrap();
    assert_eq!(stdout(&out).trim_end(), expected);
}

#[test]
fn orbit_reaches_published_cycle() {
    let out = ratmap(&[
        "orbit", "--a", "0.1", "--b", "2", "--c", "1", "--d", "0.1", "--x0", "1", "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cycle = v["fate"]["TwoCycle"].as_array().expect("cycle fate");
    assert!((cycle[0].as_f64().unwrap() - 0.1118).abs() < 5e-4);
    assert!((cycle[1].as_f64().unwrap() - 169.4132).abs() < 5e-4);
}

#[test]
fn orbit_from_equilibrium_stays_fixed() {
    let out = ratmap(&[
        "orbit", "--a", "1", "--b", "1", "--c", "1", "--d", "1", "--x0", "1.927561975482925",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("FixedPoint"));
}

#[test]
fn orbit_budget_exhaustion_is_undecided_with_exit_zero() {
    let out = ratmap(&[
        "orbit", "--a", "0.1", "--b", "2", "--c", "1", "--d", "0.1", "--x0", "1", "--max-iter",
        "10",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("Undecided"));
}

#[test]
fn orbit_honors_env_iteration_budget() {
    let out = Command::new(env!("CARGO_BIN_EXE_ratmap"))
        .args([
            "orbit", "--a", "0.1", "--b", "2", "--c", "1", "--d", "0.1", "--x0", "1",
        ])
        .env("RATMAP_MAX_ITER", "10")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("Undecided"));
}

#[test]
fn orbit_trace_file_has_constant_columns() {
    let dir = std::env::temp_dir().join("ratmap-cli-test-trace");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("trace.csv");
    let out = ratmap(&[
        "orbit",
        "--a",
        "1",
        "--b",
        "1",
        "--c",
        "1",
        "--d",
        "1",
        "--x0",
        "0.5",
        "--trace",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.trim_end().lines().collect();
    assert_eq!(lines[0], "n,x_n");
    assert!(lines.len() > 2);
    assert!(lines.iter().all(|l| l.split(',').count() == 2));
    assert!(lines[1].starts_with("0,0.5"));
}

#[test]
fn missing_flag_is_usage_error_exit_one() {
    let out = ratmap(&["analyze", "--a", "1", "--b", "1", "--c", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn nonpositive_parameter_is_usage_error_exit_one() {
    let out = ratmap(&["analyze", "--a", "-1", "--b", "1", "--c", "1", "--d", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn csv_format_for_analyze_is_rejected() {
    let out = ratmap(&[
        "analyze", "--a", "1", "--b", "1", "--c", "1", "--d", "1", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn csv_format_for_orbit_is_rejected() {
    let out = ratmap(&[
        "orbit", "--a", "1", "--b", "1", "--c", "1", "--d", "1", "--x0", "1", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_emits_csv_with_header_and_constant_columns() {
    let out = ratmap(&[
        "sweep", "--a", "1", "--b", "2", "--d", "1", "--c-from", "-3.2", "--c-to", "-2.8",
        "--steps", "11",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines[0], "c,c_minus,c_star,n_equilibria,n_cycles,regime");
    assert_eq!(lines.len(), 12);
    assert!(lines.iter().all(|l| l.split(',').count() == 6));
}

#[test]
fn sweep_writes_out_file() {
    let dir = std::env::temp_dir().join("ratmap-cli-test-sweep");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.csv");
    let out = ratmap(&[
        "sweep",
        "--a",
        "1",
        "--b",
        "1",
        "--d",
        "1",
        "--c-from",
        "0",
        "--c-to",
        "1",
        "--steps",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("c,c_minus,c_star"));
    assert_eq!(csv.trim_end().lines().count(), 4);
}

#[test]
fn verify_passes_all_fourteen_cases() {
    let out = ratmap(&["verify"]);
    assert!(out.status.success(), "verify failed:\n{}", stdout(&out));
    assert!(stdout(&out).contains("14/14 passed"));
}

#[test]
fn verify_json_is_machine_readable() {
    let out = ratmap(&["verify", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["total"], 14);
    assert_eq!(v["passed"], 14);
    assert_eq!(v["results"].as_array().unwrap().len(), 14);
}
