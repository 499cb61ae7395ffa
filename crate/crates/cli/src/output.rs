use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Value};

use crate::error::CliError;
use crate::run::RunResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn render(run: &RunResult, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(run).map_err(|e| CliError::Output(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv(run),
        Format::Text => Ok(text(run)),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn write_rows(
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Output(e.to_string());
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(&row).map_err(err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

fn csv(run: &RunResult) -> Result<String, CliError> {
    if let Some(report) = &run.report {
        let mut keys: Vec<&str> = vec!["spec"];
        keys.extend(report.keys().map(String::as_str));
        let mut row = vec![run.spec.clone().unwrap_or_default()];
        row.extend(report.values().map(cell));
        if let Some(ms) = run.timing_ms {
            keys.push("timing_ms");
            row.push(ms.to_string());
        }
        return write_rows(&keys, [row]);
    }
    if let Some(suite) = &run.suite {
        return write_rows(
            &["property", "passed", "failed", "first_failure"],
            suite.properties.iter().map(|p| {
                vec![
                    p.name.clone(),
                    p.passed.to_string(),
                    p.failed.to_string(),
                    p.first_failure.clone().unwrap_or_default(),
                ]
            }),
        );
    }
    write_rows(
        &["label", "claimed", "computed", "holds"],
        run.claims.iter().map(|c| {
            vec![
                c.label.clone(),
                c.claimed.clone(),
                c.computed.map(|v| v.to_string()).unwrap_or_default(),
                c.holds.to_string(),
            ]
        }),
    )
}

fn num(report: &Map<String, Value>, key: &str) -> Option<f64> {
    report.get(key).and_then(Value::as_f64)
}

fn flag(report: &Map<String, Value>, key: &str) -> bool {
    report.get(key).and_then(Value::as_bool).unwrap_or(false)
}

fn chain(out: &mut String, title: &str, mut rows: Vec<(f64, String)>) {
    let _ = writeln!(out, "{title}");
    if rows.is_empty() {
        let _ = writeln!(out, "  (none)");
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (v, label) in rows {
        let _ = writeln!(out, "  {v:>16.9}  {label}");
    }
}

fn text_report(out: &mut String, r: &Map<String, Value>) {
    let kind = r["exact_kind"].as_str().unwrap_or("?");
    let exact = match (num(r, "exact_value"), kind) {
        (Some(v), _) => format!("{v:.9}"),
        (None, "Infinite") => format!("infinite (support gap after {})", cell(&r["gap_location"])),
        (None, _) => "undefined (single support point)".to_string(),
    };
    let degree = r["ulc_degree"]
        .as_u64()
        .map_or("none".to_string(), |d| d.to_string());
    let _ = writeln!(
        out,
        "mean {:.9}  variance {:.9}",
        num(r, "mean").unwrap_or(f64::NAN),
        num(r, "variance").unwrap_or(f64::NAN)
    );
    let _ = writeln!(
        out,
        "ULC(inf) {}  least ULC degree {degree}  interval support {}",
        flag(r, "ulc_inf"),
        flag(r, "support_interval")
    );

    let mut lower = Vec::new();
    if let Some(v) = num(r, "lower_variance") {
        lower.push((v, "variance".to_string()));
    }
    if let Some(v) = num(r, "bg_C") {
        lower.push((v, "Bobkov-Götze sup F(1-F)/P".to_string()));
    }
    chain(out, "lower bounds", lower);
    let _ = writeln!(out, "exact\n  {exact:>16}  Poincaré constant");

    let degree_used = cell(&r["thm_degree"]);
    let licensed = |ok: bool| if ok { "" } else { " [hypothesis not met]" };
    let inf_ok = flag(r, "thm_inf_applicable");
    let n_ok = flag(r, "thm_n_applicable");
    let mut upper = Vec::new();
    let mut push = |key: &str, label: String| {
        if let Some(v) = num(r, key) {
            upper.push((v, label));
        }
    };
    push("bg_upper", "Bobkov-Götze C/P(0)".into());
    push(
        "thm_inf",
        format!("ULC(inf) moment bound{}", licensed(inf_ok)),
    );
    push(
        "thm_n",
        format!("ULC(n) moment bound, n = {degree_used}{}", licensed(n_ok)),
    );
    push(
        "thm_n_refined",
        format!(
            "ULC(n) quadratic-root bound, n = {degree_used}{}",
            licensed(n_ok)
        ),
    );
    push("crossing_inf", "score-ratio crossing".into());
    push(
        "crossing_n_bound",
        format!("degree-{degree_used} score-ratio crossing D n"),
    );
    push("convolution_note", "sum of component constants".into());
    chain(out, "upper bounds", upper);

    let verdicts: Vec<(&str, bool)> = r
        .iter()
        .filter_map(|(k, v)| Some((k.strip_prefix("verdict_")?, v.as_bool()?)))
        .collect();
    let failed: Vec<&str> = verdicts
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(k, _)| *k)
        .collect();
    if failed.is_empty() {
        let _ = writeln!(out, "checks: {} applicable, all hold", verdicts.len());
    } else {
        let _ = writeln!(
            out,
            "checks: {} applicable, FAILED: {}",
            verdicts.len(),
            failed.join(", ")
        );
    }
}

fn text(run: &RunResult) -> String {
    let mut out = String::new();
    if let Some(spec) = &run.spec {
        let _ = writeln!(out, "{} {spec}", run.command);
    }
    if let Some(r) = &run.report {
        text_report(&mut out, r);
    }
    if let Some(s) = &run.suite {
        let _ = writeln!(out, "verify seed {} trials {}", s.seed, s.trials);
        for p in &s.properties {
            let _ = writeln!(
                out,
                "  {:<28} {:>6} passed {:>4} failed",
                p.name, p.passed, p.failed
            );
            if let Some(f) = &p.first_failure {
                let _ = writeln!(out, "    first failure: {f}");
            }
        }
        let _ = writeln!(out, "total {} passed, {} failed", s.passed, s.failed);
    }
    for c in &run.claims {
        let computed = c.computed.map_or("-".to_string(), |v| format!("{v:.9}"));
        let mark = if c.holds { "ok  " } else { "FAIL" };
        let _ = writeln!(
            out,
            "{mark} {:<44} claimed {:<36} computed {computed}",
            c.label, c.claimed
        );
    }
    if let Some(ms) = run.timing_ms {
        let _ = writeln!(out, "time {ms:.3} ms");
    }
    out
}
