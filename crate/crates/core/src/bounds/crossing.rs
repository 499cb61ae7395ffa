//! Crossing-constant certificates.
//!
//! For `C` in a unit interval `(k, k+1]` the sets `{x < C}` and `{x ≥ C}` are
//! fixed, so the feasible constants there form an explicit interval bounded
//! by the extreme score ratios on either side. Scanning `k` upward yields the
//! smallest feasible constant; every candidate is re-checked by the verifier.

use super::{Certificate, CertificateKind};
use crate::error::Result;
use crate::pmf::Pmf;

/// Relative slack in the multiplicative crossing inequalities.
const CROSSING_SLACK: f64 = 1e-12;
/// Offset used when the infimum of a feasible interval is its open left end.
pub const CROSSING_REFINEMENT: f64 = 1e-9;

fn below_ok(lhs: f64, rhs: f64) -> bool {
    lhs >= rhs * (1.0 - CROSSING_SLACK)
}

fn above_ok(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs * (1.0 + CROSSING_SLACK)
}

/// Checks `x P(x) ≥ c P(x−1)` for `x < c` and `x P(x) ≤ c P(x−1)` for `x ≥ c`.
/// `x = 0` is vacuous; indices past `N + 1` compare zero with zero.
pub fn satisfies_crossing_inf(p: &Pmf, c: f64) -> bool {
    if !(c > 0.0 && c.is_finite()) {
        return false;
    }
    (1..=p.max_index() + 1).all(|x| {
        let xf = x as f64;
        let lhs = xf * p.get(x);
        let rhs = c * p.get(x - 1);
        if xf < c {
            below_ok(lhs, rhs)
        } else {
            above_ok(lhs, rhs)
        }
    })
}

/// Degree-`n` analogue: `(1−d) x P(x)` against `d (n−x+1) P(x−1)`, split at `x < d n`.
pub fn satisfies_crossing_n(p: &Pmf, n: u64, d: f64) -> Result<bool> {
    p.check_degree(n)?;
    if !(d > 0.0 && d < 1.0) {
        return Ok(false);
    }
    let nf = n as f64;
    let split = d * nf;
    Ok((1..=n as usize).all(|x| {
        let xf = x as f64;
        let lhs = (1.0 - d) * xf * p.get(x);
        let rhs = d * (nf - xf + 1.0) * p.get(x - 1);
        if xf < split {
            below_ok(lhs, rhs)
        } else {
            above_ok(lhs, rhs)
        }
    }))
}

/// Ratio at `x`, or `None` when both masses vanish and the constraint is vacuous.
fn ratio(num: f64, den: f64) -> Option<f64> {
    match (num > 0.0, den > 0.0) {
        (_, true) => Some(num / den),
        (true, false) => Some(f64::INFINITY),
        (false, false) => None,
    }
}

/// Smallest constant in `(0, upper)` accepted by `verify`, where `ratios[x-1]`
/// is the score ratio at `x` and `to_constant` maps a ratio threshold to `C`.
fn scan(
    ratios: &[Option<f64>],
    upper: f64,
    to_constant: impl Fn(f64) -> f64,
    verify: impl Fn(f64) -> bool,
) -> Option<f64> {
    let xmax = ratios.len();
    for k in 0..xmax {
        let lo = k as f64;
        if lo >= upper {
            break;
        }
        let right = ratios[k..].iter().flatten().copied().fold(0.0, f64::max);
        let mut c = to_constant(right);
        if c.is_nan() || c <= lo {
            c = lo + CROSSING_REFINEMENT;
        }
        c = c.min(lo + 1.0);
        if c >= upper {
            continue;
        }
        if verify(c) {
            return Some(c);
        }
    }
    None
}

/// Minimal crossing constant for the score ratio `ρ(x) = x P(x)/P(x−1)`.
pub fn crossing_constant_inf(p: &Pmf) -> Option<Certificate> {
    let ratios: Vec<Option<f64>> = (1..=p.max_index() + 1)
        .map(|x| ratio(x as f64 * p.get(x), p.get(x - 1)))
        .collect();
    scan(
        &ratios,
        f64::INFINITY,
        |r| r,
        |c| satisfies_crossing_inf(p, c),
    )
    .map(|c| Certificate::new(CertificateKind::CrossingInf { c }))
}

/// Minimal `D` for the degree-`n` score ratio; the implied bound is `D n`.
pub fn crossing_constant_n(p: &Pmf, n: u64) -> Result<Option<Certificate>> {
    p.check_degree(n)?;
    let nf = n as f64;
    let ratios: Vec<Option<f64>> = (1..=n as usize)
        .map(|x| ratio(x as f64 * p.get(x), (nf - x as f64 + 1.0) * p.get(x - 1)))
        .collect();
    // t = d/(1−d) maps to C = d n = n t / (1 + t).
    let to_constant = |t: f64| {
        if t.is_infinite() {
            nf
        } else {
            nf * t / (1.0 + t)
        }
    };
    let verify = |c: f64| satisfies_crossing_n(p, n, c / nf).unwrap_or(false);
    Ok(scan(&ratios, nf, to_constant, verify)
        .map(|c| Certificate::new(CertificateKind::CrossingDegreeN { d: c / nf, n })))
}
