//! Closed-form bounds, certificates and the assembled comparison report.

mod crossing;
mod report;
mod tail;

pub use crossing::{
    crossing_constant_inf, crossing_constant_n, satisfies_crossing_inf, satisfies_crossing_n,
    CROSSING_REFINEMENT,
};
pub use report::{full_report, full_report_with_components, BoundReport, Verdict, VERDICT_NAMES};
pub use tail::{
    kernel_apply, klaasen_kernel, minimal_tail_constant, tail_certificate, verify_tail_certificate,
    weighted_kernel_sum,
};

use crate::error::{Error, Result};
use crate::pmf::{Moments, Pmf};

/// Absolute slack used by every consistency verdict.
pub const VERDICT_SLACK: f64 = 1e-8;
/// Slack on the ULC moment constraint `E X − Var X ≥ (E X)²/n`.
pub const MOMENT_SLACK: f64 = 1e-10;
/// Tiny negative discriminants from rounding are clamped to zero.
const DISCRIMINANT_SLACK: f64 = 1e-12;

/// A checked witness for an upper bound on the Poincaré constant.
///
/// Only constructed inside this crate after its defining inequalities have
/// been verified on the pmf it certifies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certificate {
    kind: CertificateKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CertificateKind {
    /// Tail conditions around `x0` with constant `c` for the `alpha` component.
    TailCondition { x0: f64, c: f64, alpha: f64 },
    /// Score ratio crosses the constant `c`.
    CrossingInf { c: f64 },
    /// Degree-`n` score ratio crosses `d / (1 − d)` at `d · n`.
    CrossingDegreeN { d: f64, n: u64 },
}

impl Certificate {
    pub(crate) fn new(kind: CertificateKind) -> Self {
        Self { kind }
    }

    pub fn kind(&self) -> &CertificateKind {
        &self.kind
    }

    pub fn implied_bound(&self) -> f64 {
        match self.kind {
            CertificateKind::TailCondition { c, alpha, .. } => c / alpha,
            CertificateKind::CrossingInf { c } => c,
            CertificateKind::CrossingDegreeN { d, n } => d * n as f64,
        }
    }
}

fn sqrt_checked(disc: f64) -> Result<f64> {
    if disc < -DISCRIMINANT_SLACK || disc.is_nan() {
        return Err(Error::NegativeDiscriminant(disc));
    }
    Ok(disc.max(0.0).sqrt())
}

fn check_degree(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::BadParameter("degree n must be positive".into()));
    }
    Ok(n as f64)
}

/// `E X + 1/2 + √(1/4 + E X − Var X)`, the ULC(∞) moment bound.
pub fn bound_thm_ulc_inf(m: &Moments) -> Result<f64> {
    Ok(m.mean + 0.5 + sqrt_checked(0.25 + m.mean - m.variance)?)
}

/// `E X + 1/2 − E X/(2n) + √(1/4 + E X − Var X − E X/(2n))`, the ULC(n) moment bound.
pub fn bound_thm_ulc_n(m: &Moments, n: u64) -> Result<f64> {
    let nf = check_degree(n)?;
    let half = m.mean / (2.0 * nf);
    Ok(m.mean + 0.5 - half + sqrt_checked(0.25 + m.mean - m.variance - half)?)
}

/// Larger root of `C² − C(2 E X + 1 − E X/n) + E X² ≤ 0`, before the two
/// negative terms are dropped under the square root.
pub fn bound_thm_ulc_n_refined(m: &Moments, n: u64) -> Result<f64> {
    let nf = check_degree(n)?;
    let mu = m.mean;
    let half = mu / (2.0 * nf);
    let disc = 0.25 + mu - m.variance - half - mu * mu / nf + mu * mu / (4.0 * nf * nf);
    Ok(mu + 0.5 - half + sqrt_checked(disc)?)
}

/// Bobkov–Götze constant `sup F(x)(1 − F(x)) / P(x)` and its upper companion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BobkovGotze {
    pub constant: f64,
    /// `constant / P(0)`; absent when `P(0) = 0` or the support has a gap.
    pub upper: Option<f64>,
}

pub fn bobkov_gotze(p: &Pmf) -> BobkovGotze {
    let cdf = p.cdf();
    let tails = p.upper_tails();
    let constant = (0..=p.max_index())
        .filter(|&x| p.get(x) > 0.0 && tails[x] > 0.0)
        .map(|x| cdf[x] * tails[x] / p.get(x))
        .fold(0.0, f64::max);
    let upper = (p.get(0) > 0.0 && p.support_is_interval()).then(|| constant / p.get(0));
    BobkovGotze { constant, upper }
}

/// `Var X`, always a lower bound.
pub fn variance_lower(p: &Pmf) -> f64 {
    p.moments().variance
}

/// Subadditivity under independent sums: the constants add.
pub fn convolution_bound(component_bounds: &[f64]) -> f64 {
    component_bounds.iter().sum()
}

/// `E X − Var X ≥ (E X)²/n` (or `≥ 0` without a degree), up to [`MOMENT_SLACK`].
pub fn moment_feasible(m: &Moments, n: Option<u64>) -> bool {
    let floor = match n {
        Some(n) if n > 0 => m.mean * m.mean / n as f64,
        _ => 0.0,
    };
    m.mean - m.variance >= floor - MOMENT_SLACK
}
