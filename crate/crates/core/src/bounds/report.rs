use serde_json::{Map, Value};

use super::{
    bobkov_gotze, bound_thm_ulc_inf, bound_thm_ulc_n, bound_thm_ulc_n_refined,
    crossing_constant_inf, crossing_constant_n, moment_feasible, variance_lower, BobkovGotze,
    Certificate, CertificateKind, VERDICT_SLACK,
};
use crate::error::Result;
use crate::pmf::{Moments, Pmf};
use crate::spectral_gap::{
    centered_second_moment, dirichlet_form, poincare_exact, rayleigh, ExactGap, WITNESS_TOLERANCE,
};
use crate::ulc::{classify_ulc, UlcClass};

/// Every verdict a report carries, in serialization order.
pub const VERDICT_NAMES: [&str; 15] = [
    "witness",
    "lower_variance",
    "bg_lower",
    "bg_upper",
    "thm_inf",
    "thm_n",
    "thm_n_refined",
    "crossing_inf",
    "crossing_n",
    "crossing_n_le_refined",
    "refined_le_thm_n",
    "thm_n_le_thm_inf",
    "convolution",
    "moment_feasible",
    "infinite_has_no_certificate",
];

/// A named consistency check; `holds` is `None` when it does not apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub name: &'static str,
    pub holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub exact: ExactGap,
    pub moments: Moments,
    pub ulc: UlcClass,
    pub lower_variance: f64,
    pub bobkov_gotze: BobkovGotze,
    pub thm_inf: Option<f64>,
    /// The pmf is ULC(∞), so `thm_inf` is licensed.
    pub thm_inf_applicable: bool,
    /// Degree used for `thm_n`, `thm_n_refined` and `crossing_n`.
    pub thm_degree: u64,
    pub thm_n: Option<f64>,
    pub thm_n_refined: Option<f64>,
    /// The pmf is ULC(`thm_degree`).
    pub thm_n_applicable: bool,
    pub crossing_inf: Option<Certificate>,
    pub crossing_n: Option<Certificate>,
    /// Sum of component constants when the pmf is a known convolution.
    pub convolution_note: Option<f64>,
    pub verdicts: Vec<Verdict>,
}

pub fn full_report(p: &Pmf) -> Result<BoundReport> {
    build(p, None)
}

/// Report for a pmf known to be the convolution of components with the given constants.
pub fn full_report_with_components(p: &Pmf, component_bounds: &[f64]) -> Result<BoundReport> {
    build(p, Some(super::convolution_bound(component_bounds)))
}

fn build(p: &Pmf, convolution_note: Option<f64>) -> Result<BoundReport> {
    let exact = poincare_exact(p)?;
    let moments = p.moments();
    let ulc = classify_ulc(p);
    let thm_degree = ulc.min_ulc_degree.unwrap_or(p.max_index().max(1) as u64);
    let crossing_n = crossing_constant_n(p, thm_degree)?;
    let mut report = BoundReport {
        exact,
        moments,
        ulc,
        lower_variance: variance_lower(p),
        bobkov_gotze: bobkov_gotze(p),
        thm_inf: bound_thm_ulc_inf(&moments).ok(),
        thm_inf_applicable: ulc.is_ulc_inf,
        thm_degree,
        thm_n: bound_thm_ulc_n(&moments, thm_degree).ok(),
        thm_n_refined: bound_thm_ulc_n_refined(&moments, thm_degree).ok(),
        thm_n_applicable: ulc.min_ulc_degree.is_some(),
        crossing_inf: crossing_constant_inf(p),
        crossing_n,
        convolution_note,
        verdicts: Vec::new(),
    };
    report.verdicts = evaluate(p, &report);
    Ok(report)
}

fn le(a: f64, b: f64) -> bool {
    a <= b + VERDICT_SLACK
}

fn evaluate(p: &Pmf, r: &BoundReport) -> Vec<Verdict> {
    let value = r.exact.value();
    let below = |bound: Option<f64>, applicable: bool| -> Option<bool> {
        match (value, bound) {
            (Some(v), Some(b)) if applicable => Some(le(v, b)),
            _ => None,
        }
    };
    let crossing_inf = r.crossing_inf.map(|c| c.implied_bound());
    let crossing_n = r.crossing_n.map(|c| c.implied_bound());
    let pair = |a: Option<f64>, b: Option<f64>, applicable: bool| match (a, b) {
        (Some(a), Some(b)) if applicable => Some(le(a, b)),
        _ => None,
    };

    let witness = match &r.exact {
        ExactGap::Finite { value, witness } => Some(
            rayleigh(p, witness)
                .map(|q| (q - value).abs() <= WITNESS_TOLERANCE * value)
                .unwrap_or(false),
        ),
        ExactGap::Infinite { witness, .. } => Some(
            dirichlet_form(p, witness).is_ok_and(|d| d == 0.0)
                && centered_second_moment(p, witness).is_ok_and(|n| n > 0.0),
        ),
        ExactGap::Degenerate => None,
    };
    let infinite = matches!(r.exact, ExactGap::Infinite { .. });
    let moment = if r.thm_n_applicable {
        Some(moment_feasible(&r.moments, Some(r.thm_degree)))
    } else if r.thm_inf_applicable {
        Some(moment_feasible(&r.moments, None))
    } else {
        None
    };

    let holds = [
        witness,
        value.map(|v| le(r.lower_variance, v)),
        value.map(|v| le(r.bobkov_gotze.constant, v)),
        below(r.bobkov_gotze.upper, true),
        below(r.thm_inf, r.thm_inf_applicable),
        below(r.thm_n, r.thm_n_applicable),
        below(r.thm_n_refined, r.thm_n_applicable),
        below(crossing_inf, true),
        below(crossing_n, true),
        pair(crossing_n, r.thm_n_refined, r.thm_n_applicable),
        pair(r.thm_n_refined, r.thm_n, r.thm_n_applicable),
        pair(r.thm_n, r.thm_inf, r.thm_n_applicable),
        below(r.convolution_note, true),
        moment,
        infinite.then(|| crossing_inf.is_none() && crossing_n.is_none()),
    ];
    VERDICT_NAMES
        .iter()
        .zip(holds)
        .map(|(&name, holds)| Verdict { name, holds })
        .collect()
}

fn num(v: Option<f64>) -> Value {
    v.map_or(Value::Null, Value::from)
}

impl BoundReport {
    /// True unless some applicable verdict fails.
    pub fn consistent(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds != Some(false))
    }

    pub fn failed_verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| v.holds == Some(false))
    }

    /// Flat key-value view; absent values are `null`.
    pub fn to_flat(&self) -> Map<String, Value> {
        let mut m = Map::new();
        let mut put = |k: &str, v: Value| {
            m.insert(k.to_string(), v);
        };
        put("exact_kind", Value::from(self.exact.kind().as_str()));
        put("exact_value", num(self.exact.value()));
        put(
            "gap_location",
            self.exact.gap_location().map_or(Value::Null, Value::from),
        );
        put("mean", Value::from(self.moments.mean));
        put("variance", Value::from(self.moments.variance));
        put("ulc_inf", Value::from(self.ulc.is_ulc_inf));
        put(
            "ulc_degree",
            self.ulc.min_ulc_degree.map_or(Value::Null, Value::from),
        );
        put(
            "support_interval",
            Value::from(self.ulc.support_is_interval),
        );
        put("lower_variance", Value::from(self.lower_variance));
        put("bg_C", Value::from(self.bobkov_gotze.constant));
        put("bg_upper", num(self.bobkov_gotze.upper));
        put("thm_inf", num(self.thm_inf));
        put("thm_inf_applicable", Value::from(self.thm_inf_applicable));
        put("thm_degree", Value::from(self.thm_degree));
        put("thm_n", num(self.thm_n));
        put("thm_n_refined", num(self.thm_n_refined));
        put("thm_n_applicable", Value::from(self.thm_n_applicable));
        put(
            "crossing_inf",
            num(self.crossing_inf.map(|c| c.implied_bound())),
        );
        let d = self.crossing_n.and_then(|c| match *c.kind() {
            CertificateKind::CrossingDegreeN { d, .. } => Some(d),
            _ => None,
        });
        put("crossing_n_D", num(d));
        put(
            "crossing_n_bound",
            num(self.crossing_n.map(|c| c.implied_bound())),
        );
        put("convolution_note", num(self.convolution_note));
        for v in &self.verdicts {
            put(
                &format!("verdict_{}", v.name),
                v.holds.map_or(Value::Null, Value::from),
            );
        }
        m
    }
}
