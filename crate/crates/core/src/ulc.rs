//! Ultra log-concavity classification.

use crate::pmf::Pmf;

/// Relative slack on "nonincreasing": `ρ(x+1) ≤ ρ(x)·(1 + ULC_SLACK)`.
pub const ULC_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UlcClass {
    pub is_ulc_inf: bool,
    /// Smallest `n` with ULC(n), searched up to [`degree_cap`].
    pub min_ulc_degree: Option<u64>,
    pub support_is_interval: bool,
}

/// Search cap for the ULC degree of a pmf with support end `N`.
pub fn degree_cap(max_index: usize) -> u64 {
    (4 * max_index as u64).max(1024)
}

/// ρ(x) nonincreasing, checked as `(x+1) P(x+1) P(x−1) ≤ x P(x)²`.
pub fn is_ulc_inf(p: &Pmf) -> bool {
    if !p.support_is_interval() {
        return false;
    }
    let pr = p.probs();
    (1..p.max_index()).all(|x| {
        let lhs = (x + 1) as f64 * pr[x + 1] * pr[x - 1];
        let rhs = x as f64 * pr[x] * pr[x];
        lhs <= rhs * (1.0 + ULC_SLACK)
    })
}

/// ρ⁽ⁿ⁾(x) nonincreasing on a support inside `{0, ..., n}`, checked as
/// `(x+1)(n−x+1) P(x+1) P(x−1) ≤ x (n−x) P(x)²`.
pub fn is_ulc_n(p: &Pmf, n: u64) -> bool {
    if (p.max_index() as u64) > n || n == 0 || !p.support_is_interval() {
        return false;
    }
    let pr = p.probs();
    let nf = n as f64;
    (1..p.max_index()).all(|x| {
        let xf = x as f64;
        let lhs = (xf + 1.0) * (nf - xf + 1.0) * pr[x + 1] * pr[x - 1];
        let rhs = xf * (nf - xf) * pr[x] * pr[x];
        lhs <= rhs * (1.0 + ULC_SLACK)
    })
}

pub fn classify_ulc(p: &Pmf) -> UlcClass {
    let support_is_interval = p.support_is_interval();
    let n_max = p.max_index();
    if p.is_point_mass() {
        return UlcClass {
            is_ulc_inf: true,
            min_ulc_degree: Some(n_max.max(1) as u64),
            support_is_interval,
        };
    }
    if !support_is_interval {
        return UlcClass {
            is_ulc_inf: false,
            min_ulc_degree: None,
            support_is_interval,
        };
    }
    let lo = n_max.max(1) as u64;
    let cap = degree_cap(n_max);
    // The ULC(n) condition weakens as n grows, so the feasible degrees form
    // a ray and the least one is found by bisection.
    let min_ulc_degree = if is_ulc_n(p, lo) {
        Some(lo)
    } else if !is_ulc_n(p, cap) {
        None
    } else {
        let (mut bad, mut good) = (lo, cap);
        while good - bad > 1 {
            let mid = bad + (good - bad) / 2;
            if is_ulc_n(p, mid) {
                good = mid;
            } else {
                bad = mid;
            }
        }
        Some(good)
    };
    UlcClass {
        is_ulc_inf: is_ulc_inf(p),
        min_ulc_degree,
        support_is_interval,
    }
}
