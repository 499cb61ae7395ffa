use std::process::{Command, Output};

use poincare_cli::RunResult;
use poincare_core::bounds::VERDICT_NAMES;
use serde_json::Value;

fn poincare(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poincare"))
        .args(args)
        .env_remove("POINCARE_TAIL_EPS")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> RunResult {
    let out = poincare(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn report(args: &[&str]) -> serde_json::Map<String, Value> {
    json(args).report.unwrap()
}

#[test]
fn analyze_poisson() {
    let r = report(&["analyze", "--dist", "poisson:2", "--format", "json"]);
    assert!((r["exact_value"].as_f64().unwrap() - 2.0).abs() < 1e-6);
    assert_eq!(r["exact_kind"], "Finite");
    for key in VERDICT_NAMES {
        assert!(r.contains_key(&format!("verdict_{key}")), "{key}");
    }
}

#[test]
fn analyze_binomial_crossing() {
    let r = report(&["analyze", "--dist", "binomial:10:0.3"]);
    assert!((r["crossing_n_bound"].as_f64().unwrap() - 3.0).abs() < 1e-8);
}

#[test]
fn analyze_point_mass_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pm.txt");
    std::fs::write(&path, "# point mass\n3 1.0\n").unwrap();
    let spec = format!("file:{}", path.display());
    let r = report(&["analyze", "--dist", &spec]);
    assert_eq!(r["exact_kind"], "Degenerate");
    assert_eq!(r["exact_value"], Value::Null);
}

#[test]
fn csv_matches_json_keys() {
    let out = poincare(&[
        "analyze",
        "--dist",
        "bernoulli_sum:0.2,0.5,0.7",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].len(), header.len());
    let r = report(&["analyze", "--dist", "bernoulli_sum:0.2,0.5,0.7"]);
    let mut expected = vec!["spec".to_string()];
    expected.extend(r.keys().cloned());
    assert_eq!(header, expected);
}

#[test]
fn text_lists_bounds_in_order() {
    let out = poincare(&["analyze", "--dist", "binomial:10:0.3", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let upper: Vec<f64> = text
        .split("upper bounds\n")
        .nth(1)
        .unwrap()
        .lines()
        .take_while(|l| l.starts_with("  "))
        .map(|l| l.split_whitespace().next().unwrap().parse().unwrap())
        .collect();
    assert!(upper.len() >= 5);
    assert!(upper.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "analyze",
            "--dist",
            "convolve:[poisson:1]:[binomial:5:0.4]",
            "--format",
            "json",
        ][..],
        &["analyze", "--dist", "binomial:7:0.2", "--format", "text"],
        &["verify", "--seed", "4", "--trials", "20"],
    ] {
        assert_eq!(poincare(args).stdout, poincare(args).stdout);
    }
}

#[test]
fn timing_is_opt_in() {
    assert!(json(&["analyze", "--dist", "poisson:1"])
        .timing_ms
        .is_none());
    assert!(json(&["analyze", "--dist", "poisson:1", "--timing"])
        .timing_ms
        .is_some());
}

#[test]
fn json_round_trips() {
    let out = poincare(&[
        "analyze",
        "--dist",
        "mixture:0.3:[poisson:2]:[binomial:6:0.5]",
    ]);
    let run: RunResult = serde_json::from_slice(&out.stdout).unwrap();
    let again = serde_json::to_string_pretty(&run).unwrap() + "\n";
    assert_eq!(again.as_bytes(), out.stdout.as_slice());
}

#[test]
fn input_errors_exit_one() {
    for args in [
        &["analyze", "--dist", "gamma:2"][..],
        &["analyze", "--dist", "binomial:5:1.5"],
        &["analyze", "--dist", "file:/nonexistent/pm.txt"],
        &["analyze", "--dist", "pmf:0.5,0.2"],
        &["analyze"],
        &["reproduce", "nope"],
        &["verify", "--trials", "0"],
    ] {
        let out = poincare(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn tail_eps_from_environment() {
    let run = |eps: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_poincare"));
        cmd.args(["analyze", "--dist", "poisson:2"]);
        match eps {
            Some(e) => cmd.env("POINCARE_TAIL_EPS", e),
            None => cmd.env_remove("POINCARE_TAIL_EPS"),
        };
        cmd.output().unwrap()
    };
    let mean = |o: Output| {
        let r: RunResult = serde_json::from_slice(&o.stdout).unwrap();
        r.report.unwrap()["mean"].as_f64().unwrap()
    };
    assert!((mean(run(None)) - 2.0).abs() < 1e-10);
    assert!((mean(run(Some("1e-2"))) - 2.0).abs() > 1e-4);
    assert_eq!(run(Some("zero")).status.code(), Some(1));
    // An explicit field wins over the environment.
    let explicit = Command::new(env!("CARGO_BIN_EXE_poincare"))
        .args(["analyze", "--dist", "poisson:2:1e-12"])
        .env("POINCARE_TAIL_EPS", "1e-2")
        .output()
        .unwrap();
    assert!((mean(explicit) - 2.0).abs() < 1e-10);
}

#[test]
fn reproduce_cases_verify() {
    for case in poincare_cli::reproduce::CASES {
        let out = poincare(&["reproduce", case]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{case}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
    let run = json(&["reproduce", "poisson", "--format", "json"]);
    assert_eq!(run.claims.len(), 8);
}

#[test]
fn verify_suite() {
    let run = json(&[
        "verify", "--seed", "0", "--trials", "100", "--format", "json",
    ]);
    let suite = run.suite.unwrap();
    assert_eq!(suite.failed, 0, "{:?}", suite.properties);
    let one = json(&["verify", "--trials", "1", "--format", "json"])
        .suite
        .unwrap();
    assert!(one.properties.iter().all(|p| p.passed + p.failed == 1));
}
