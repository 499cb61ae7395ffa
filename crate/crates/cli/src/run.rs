use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use poincare_core::{
    full_report, full_report_with_components, poincare_exact, run_suite, ExactGap, Pmf,
};

use crate::error::CliError;
use crate::spec::DistSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyCounts {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteCounts {
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub properties: Vec<PropertyCounts>,
}

/// A published value next to the recomputed one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub label: String,
    pub claimed: String,
    pub computed: Option<f64>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<Map<String, Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<SuiteCounts>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub claims: Vec<Claim>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    pub ok: bool,
}

impl RunResult {
    fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            spec: None,
            report: None,
            suite: None,
            claims: Vec::new(),
            timing_ms: None,
            ok: true,
        }
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Finite constant, zero for a point mass, `None` otherwise.
fn component_constant(p: &Pmf) -> Result<Option<f64>, CliError> {
    Ok(match poincare_exact(p).map_err(CliError::Internal)? {
        ExactGap::Finite { value, .. } => Some(value),
        ExactGap::Degenerate => Some(0.0),
        ExactGap::Infinite { .. } => None,
    })
}

pub fn cmd_analyze(spec: &DistSpec, tail_eps: f64) -> Result<RunResult, CliError> {
    let start = Instant::now();
    let pmf = spec.build(tail_eps)?;
    let report = match spec.convolution_parts() {
        Some(parts) => {
            let mut constants = Vec::with_capacity(2);
            for part in parts {
                constants.push(component_constant(&part.build(tail_eps)?)?);
            }
            match constants.into_iter().collect::<Option<Vec<f64>>>() {
                Some(c) => full_report_with_components(&pmf, &c),
                None => full_report(&pmf),
            }
        }
        None => full_report(&pmf),
    }
    .map_err(CliError::Internal)?;
    let mut run = RunResult::new("analyze");
    run.spec = Some(spec.to_string());
    run.ok = report.consistent();
    run.report = Some(report.to_flat());
    run.timing_ms = Some(elapsed_ms(start));
    Ok(run)
}

pub fn cmd_verify(seed: u64, trials: usize) -> RunResult {
    let start = Instant::now();
    let suite = run_suite(seed, trials);
    let mut run = RunResult::new("verify");
    run.ok = suite.total_failed() == 0;
    run.suite = Some(SuiteCounts {
        seed,
        trials,
        passed: suite.total_passed(),
        failed: suite.total_failed(),
        properties: suite
            .properties
            .into_iter()
            .map(|p| PropertyCounts {
                name: p.name.to_string(),
                passed: p.passed,
                failed: p.failed,
                first_failure: p.first_failure,
            })
            .collect(),
    });
    run.timing_ms = Some(elapsed_ms(start));
    run
}

pub fn cmd_reproduce(case: &str, tail_eps: f64) -> Result<RunResult, CliError> {
    let start = Instant::now();
    let claims = crate::reproduce::claims(case, tail_eps)?;
    let mut run = RunResult::new("reproduce");
    run.spec = Some(case.to_string());
    run.ok = claims.iter().all(|c| c.holds);
    run.claims = claims;
    run.timing_ms = Some(elapsed_ms(start));
    Ok(run)
}
