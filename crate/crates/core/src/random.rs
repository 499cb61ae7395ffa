//! Seeded random instance generators shared by the property suite and tests.

use rand::Rng;

use crate::pmf::Pmf;
use crate::ulc::is_ulc_inf;

/// Connected-support pmf on `{0, ..., N}`, `N` uniform in `1..=max_n`,
/// weights uniform in `[0.05, 1)` before normalization.
pub fn random_connected_pmf(rng: &mut impl Rng, max_n: usize) -> Pmf {
    let n = rng.random_range(1..=max_n.max(1));
    Pmf::from_weights((0..=n).map(|_| rng.random_range(0.05..1.0)).collect())
}

/// Bernoulli sum with `1..=max_terms` success probabilities in `(0.05, 0.95)`.
pub fn random_bernoulli_sum(rng: &mut impl Rng, max_terms: usize) -> (Vec<f64>, Pmf) {
    let n = rng.random_range(1..=max_terms.max(1));
    let ps: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..0.95)).collect();
    let pmf = Pmf::bernoulli_sum(&ps).expect("probabilities in range");
    (ps, pmf)
}

/// Connected-support pmf that is not ULC(∞), by rejection.
pub fn random_non_ulc_pmf(rng: &mut impl Rng, max_n: usize) -> Pmf {
    loop {
        let p = random_connected_pmf(rng, max_n.max(2));
        if !is_ulc_inf(&p) {
            return p;
        }
    }
}
