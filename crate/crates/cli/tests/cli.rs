//! End-to-end tests of the `sumrules` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sumrules"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn verify_single_case_json_schema() {
    let out = run(&["verify", "--case", "box", "--format", "json"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cases = parsed.as_array().unwrap();
    assert_eq!(cases.len(), 1);
    let case = &cases[0];
    assert_eq!(case["case"], "box");
    assert_eq!(case["pass"], true);
    let quantities = case["quantities"].as_array().unwrap();
    assert!(!quantities.is_empty());
    for q in quantities {
        for key in ["name", "expected", "got", "tol", "provenance", "pass"] {
            assert!(q.get(key).is_some(), "missing key {key}");
        }
    }
}

#[test]
fn verify_output_is_deterministic() {
    let first = run(&["verify", "--case", "powerlaw:4", "--format", "json"]);
    let second = run(&["verify", "--case", "powerlaw:4", "--format", "json"]);
    assert!(first.status.success() && second.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_rejects_unknown_case() {
    let out = run(&["verify", "--case", "nonsense"]);
    assert!(!out.status.success());
}

#[test]
fn verify_csv_has_header_and_rows() {
    let out = run(&["verify", "--case", "powerlaw:6", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "case,quantity,expected,got,tol,provenance,pass"
    );
    assert!(lines.clone().count() >= 3);
    assert!(lines.all(|l| l.ends_with("true")));
}

#[test]
fn verify_writes_out_file() {
    let path = std::env::temp_dir().join("sumrules_cli_test_report.json");
    let _ = std::fs::remove_file(&path);
    let out = run(&[
        "verify",
        "--case",
        "box",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.contains("\"case\": \"box\""));
}

#[test]
fn closed_form_prints_pi_over_four() {
    let out = run(&["closed-form", "--N", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("S = 0.7853981633974"), "{text}");
    assert!(text.contains("S1 = divergent"));
    assert!(text.contains("beta = 0.25"));
}

#[test]
fn spectrum_csv_for_the_shifted_oscillator() {
    let out = run(&[
        "spectrum",
        "--potential",
        "sho_shifted",
        "--parity",
        "both",
        "--count",
        "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "parity,n,lambda,nodes,residual");
    assert_eq!(lines.len(), 5);
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first[0], "even");
    let lambda: f64 = first[2].parse().unwrap();
    assert!((lambda - 2.0).abs() < 1e-7);
    let odd_first: Vec<&str> = lines[3].split(',').collect();
    assert_eq!(odd_first[0], "odd");
    let lambda: f64 = odd_first[2].parse().unwrap();
    assert!((lambda - 4.0).abs() < 1e-7);
}

#[test]
fn report_json_fields() {
    let out = run(&["report", "--N", "4", "--terms", "4", "--order", "1"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["order"], 1);
    assert_eq!(parsed["exact_terms"], 5);
    let s = parsed["s_estimate"].as_f64().unwrap();
    assert!((s - 0.76327).abs() < 5e-4);
    assert!((parsed["closed_form_ref"].as_f64().unwrap() - 0.76330).abs() < 5e-5);
    assert!(parsed["abs_error"].as_f64().unwrap() < 5e-4);
}

#[test]
fn greens_csv_and_second_order_footer() {
    let out = run(&[
        "greens",
        "--potential",
        "powerlaw:N=4",
        "--second-order",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("x,g1,g2,difference\n"));
    assert!(text.contains("# second_order_even,"));
    assert!(text.contains("# second_order_odd,"));
    // difference column is positive and equals g2 - g1
    let line = text.lines().nth(50).unwrap();
    let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
    assert!((cols[2] - cols[1] - cols[3]).abs() < 1e-9);
    assert!(cols[3] > 0.0);
}

#[test]
fn airy_zero_table_csv() {
    let out = run(&["airy-zeros", "--count", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,parity,zero");
    assert_eq!(lines.len(), 7);
    assert!(lines[1].starts_with("0,even,1.018792"));
    assert!(lines[2].starts_with("1,odd,2.338107"));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = std::env::temp_dir().join("sumrules_cli_config_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join("defaults.conf");
    std::fs::write(&path, "N = 2\ngamma = 1\n").unwrap();

    let out = run(&["closed-form", "--config", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("N = 2"));

    let out = run(&[
        "closed-form",
        "--config",
        path.to_str().unwrap(),
        "--N",
        "4",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("N = 4"));

    // missing N anywhere is an error
    let out = run(&["closed-form"]);
    assert!(!out.status.success());
}
