//! Seeded cross-module property suite.
//!
//! Every property draws `trials` instances from its own ChaCha stream, so
//! counts and failure messages depend only on `(seed, trials)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{
    bobkov_gotze, bound_thm_ulc_inf, bound_thm_ulc_n, bound_thm_ulc_n_refined,
    crossing_constant_inf, crossing_constant_n, kernel_apply, minimal_tail_constant,
    moment_feasible, verify_tail_certificate, weighted_kernel_sum,
};
use crate::charlier::{check_delta_identity, check_orthogonality, squared_norm};
use crate::oracle::{maximize_rayleigh, DEFAULT_RESTARTS};
use crate::pmf::Pmf;
use crate::random::{random_bernoulli_sum, random_connected_pmf};
use crate::spectral_gap::{poincare_exact, rayleigh, ExactGap, WITNESS_TOLERANCE};
use crate::ulc::{classify_ulc, is_ulc_n};

const SLACK: f64 = 1e-8;
const TIGHT: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    pub properties: Vec<PropertyOutcome>,
}

impl SuiteReport {
    pub fn total_passed(&self) -> usize {
        self.properties.iter().map(|p| p.passed).sum()
    }

    pub fn total_failed(&self) -> usize {
        self.properties.iter().map(|p| p.failed).sum()
    }
}

type Check = fn(&mut ChaCha8Rng) -> Result<(), String>;

pub const PROPERTIES: [(&str, Check); 17] = [
    ("normalization", normalization),
    ("convolution_moments", convolution_moments),
    ("ulc_degree_monotonicity", ulc_degree_monotonicity),
    ("liggett_closure", liggett_closure),
    ("moment_constraint", moment_constraint),
    ("oracle_equivalence", oracle_equivalence),
    ("variance_lower", variance_lower_holds),
    ("bg_diagonal", bg_diagonal),
    ("witness_consistency", witness_consistency),
    ("trailing_zero_invariance", trailing_zero_invariance),
    ("bound_chain", bound_chain),
    ("bobkov_gotze_sandwich", bobkov_gotze_sandwich),
    ("convolution_subadditivity", convolution_subadditivity),
    ("certificate_soundness", certificate_soundness),
    ("weighted_kernel_bound", weighted_kernel_bound),
    ("kernel_identities", kernel_identities),
    ("charlier_identities", charlier_identities),
];

pub fn run_suite(seed: u64, trials: usize) -> SuiteReport {
    let properties = PROPERTIES
        .iter()
        .enumerate()
        .map(|(stream, &(name, check))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream as u64);
            let mut outcome = PropertyOutcome {
                name,
                passed: 0,
                failed: 0,
                first_failure: None,
            };
            for trial in 0..trials {
                match check(&mut rng) {
                    Ok(()) => outcome.passed += 1,
                    Err(msg) => {
                        outcome.failed += 1;
                        outcome
                            .first_failure
                            .get_or_insert_with(|| format!("trial {trial}: {msg}"));
                    }
                }
            }
            outcome
        })
        .collect();
    SuiteReport {
        seed,
        trials,
        properties,
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn finite_value(p: &Pmf) -> Result<f64, String> {
    match poincare_exact(p).map_err(|e| e.to_string())? {
        ExactGap::Finite { value, .. } => Ok(value),
        other => Err(format!(
            "expected a finite constant, got {:?}",
            other.kind()
        )),
    }
}

fn weights(p: &Pmf) -> String {
    format!("{:?}", p.probs())
}

fn normalization(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let lambda = rng.random_range(0.1..20.0);
    let n = rng.random_range(1..=60);
    let q = rng.random_range(0.01..0.99);
    let a = random_connected_pmf(rng, 50);
    let b = random_connected_pmf(rng, 50);
    let alpha = rng.random_range(0.0..=1.0);
    let (_, bs) = random_bernoulli_sum(rng, 30);
    let built = [
        Pmf::poisson(lambda, 1e-12),
        Pmf::binomial(n, q),
        Pmf::mixture(alpha, &a, &b),
        Ok(a.convolve(&b)),
        Ok(bs),
        Ok(a),
    ];
    for p in built {
        let p = p.map_err(|e| e.to_string())?;
        let total: f64 = p.probs().iter().sum();
        ensure((total - 1.0).abs() <= 1e-12, || {
            format!("sum {total} for {}", weights(&p))
        })?;
    }
    Ok(())
}

fn convolution_moments(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let a = random_connected_pmf(rng, 50);
    let b = random_connected_pmf(rng, 50);
    let (ma, mb, mc) = (a.moments(), b.moments(), a.convolve(&b).moments());
    ensure((mc.mean - ma.mean - mb.mean).abs() <= TIGHT, || {
        "mean not additive".into()
    })?;
    ensure(
        (mc.variance - ma.variance - mb.variance).abs() <= TIGHT,
        || "variance not additive".into(),
    )
}

fn ulc_degree_monotonicity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (_, p) = random_bernoulli_sum(rng, 30);
    let d = classify_ulc(&p)
        .min_ulc_degree
        .ok_or("Bernoulli sum not ULC(n)")?;
    ensure(is_ulc_n(&p, d + 1) && is_ulc_n(&p, d + 5), || {
        format!("degree {d} not monotone")
    })
}

fn liggett_closure(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (_, a) = random_bernoulli_sum(rng, 15);
    let (_, b) = random_bernoulli_sum(rng, 15);
    let n = classify_ulc(&a)
        .min_ulc_degree
        .ok_or("left input not ULC(n)")?;
    let m = classify_ulc(&b)
        .min_ulc_degree
        .ok_or("right input not ULC(n)")?;
    let c = classify_ulc(&a.convolve(&b))
        .min_ulc_degree
        .ok_or("convolution not ULC(n)")?;
    ensure(c <= n + m, || format!("degree {c} > {n} + {m}"))
}

fn moment_constraint(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (_, b) = random_bernoulli_sum(rng, 30);
    for p in [b, random_connected_pmf(rng, 20)] {
        let class = classify_ulc(&p);
        let m = p.moments();
        if let Some(n) = class.min_ulc_degree {
            ensure(moment_feasible(&m, Some(n)), || {
                format!("ULC({n}) violates moment floor")
            })?;
        }
        if class.is_ulc_inf {
            ensure(moment_feasible(&m, None), || {
                "ULC(∞) has Var X > E X".into()
            })?;
        }
    }
    Ok(())
}

fn oracle_equivalence(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let p = random_connected_pmf(rng, 12);
    let exact = finite_value(&p)?;
    let direct =
        maximize_rayleigh(&p, DEFAULT_RESTARTS, rng.random()).map_err(|e| e.to_string())?;
    ensure((exact - direct.value).abs() <= 1e-5 * exact, || {
        format!(
            "eigen {exact} vs direct {} on {}",
            direct.value,
            weights(&p)
        )
    })
}

fn variance_lower_holds(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let p = random_connected_pmf(rng, 30);
    let v = finite_value(&p)?;
    ensure(v >= p.moments().variance - TIGHT, || {
        format!("{v} below variance")
    })
}

fn bg_diagonal(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let p = random_connected_pmf(rng, 30);
    let v = finite_value(&p)?;
    let c = bobkov_gotze(&p).constant;
    ensure(v >= c - TIGHT, || format!("{v} below diagonal bound {c}"))
}

fn witness_consistency(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let p = random_connected_pmf(rng, 40);
    match poincare_exact(&p).map_err(|e| e.to_string())? {
        ExactGap::Finite { value, witness } => {
            let q = rayleigh(&p, &witness).map_err(|e| e.to_string())?;
            ensure((q - value).abs() <= WITNESS_TOLERANCE * value, || {
                format!("quotient {q} vs {value}")
            })
        }
        other => Err(format!("unexpected {:?}", other.kind())),
    }
}

fn trailing_zero_invariance(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let p = random_connected_pmf(rng, 20);
    let mut padded = p.probs().to_vec();
    padded.extend(std::iter::repeat_n(0.0, rng.random_range(1..5)));
    let q = Pmf::new(padded).map_err(|e| e.to_string())?;
    let (a, b) = (finite_value(&p)?, finite_value(&q)?);
    ensure((a - b).abs() <= TIGHT * a, || format!("{a} vs padded {b}"))
}

fn bound_chain(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (ps, p) = random_bernoulli_sum(rng, 30);
    let n = ps.len() as u64;
    let exact = finite_value(&p)?;
    let m = p.moments();
    let crossing = crossing_constant_n(&p, n)
        .map_err(|e| e.to_string())?
        .ok_or("no degree-n crossing certificate")?
        .implied_bound();
    let refined = bound_thm_ulc_n_refined(&m, n).map_err(|e| e.to_string())?;
    let thm_n = bound_thm_ulc_n(&m, n).map_err(|e| e.to_string())?;
    let thm_inf = bound_thm_ulc_inf(&m).map_err(|e| e.to_string())?;
    let chain = [m.variance, exact, crossing, refined, thm_n, thm_inf];
    ensure(chain.windows(2).all(|w| w[0] <= w[1] + SLACK), || {
        format!("chain {chain:?} for p = {ps:?}")
    })
}

fn bobkov_gotze_sandwich(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (_, b) = random_bernoulli_sum(rng, 30);
    for p in [b, random_connected_pmf(rng, 10)] {
        let v = finite_value(&p)?;
        let bg = bobkov_gotze(&p);
        ensure(bg.constant <= v + SLACK, || {
            format!("C = {} above {v}", bg.constant)
        })?;
        if let Some(upper) = bg.upper {
            ensure(v <= upper + SLACK, || {
                format!("{v} above C/P(0) = {upper} on {}", weights(&p))
            })?;
        }
    }
    Ok(())
}

fn convolution_subadditivity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let a = random_connected_pmf(rng, 10);
    let b = random_connected_pmf(rng, 10);
    let (ra, rb, rc) = (
        finite_value(&a)?,
        finite_value(&b)?,
        finite_value(&a.convolve(&b))?,
    );
    ensure(rc <= ra + rb + SLACK, || format!("{rc} > {ra} + {rb}"))
}

/// Mixture `α p1 + (1 − α) p2` with the minimal tail constant at a random `x0`, inflated by up to 2x.
fn tail_instance(rng: &mut ChaCha8Rng) -> Option<(Pmf, Pmf, f64, f64, f64)> {
    let p1 = random_connected_pmf(rng, 10);
    let p2 = random_connected_pmf(rng, 10);
    let alpha = if rng.random_bool(0.5) {
        1.0
    } else {
        rng.random_range(0.3..1.0)
    };
    let px = Pmf::mixture(alpha, &p1, &p2).ok()?;
    let x0 = rng.random_range(0.0..=px.max_index() as f64);
    let c = minimal_tail_constant(&px, &p1, x0)? * rng.random_range(1.0..2.0);
    Some((px, p1, alpha, x0, c))
}

fn certificate_soundness(rng: &mut ChaCha8Rng) -> Result<(), String> {
    if let Some((px, p1, alpha, x0, c)) = tail_instance(rng) {
        if verify_tail_certificate(&px, &p1, alpha, x0, c).map_err(|e| e.to_string())? {
            let v = finite_value(&px)?;
            ensure(v <= c / alpha + SLACK, || {
                format!("{v} > c/α = {} at x0 = {x0}", c / alpha)
            })?;
        }
    }
    let p = random_connected_pmf(rng, 12);
    if let Some(cert) = crossing_constant_inf(&p) {
        let v = finite_value(&p)?;
        ensure(v <= cert.implied_bound() + SLACK, || {
            format!("{v} above crossing {}", cert.implied_bound())
        })?;
    }
    Ok(())
}

fn weighted_kernel_bound(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let Some((px, p1, alpha, x0, c)) = tail_instance(rng) else {
        return Ok(());
    };
    if !verify_tail_certificate(&px, &p1, alpha, x0, c).map_err(|e| e.to_string())? {
        return Ok(());
    }
    for y in 0..=px.max_index() + 1 {
        let lhs = weighted_kernel_sum(&px, x0, y as u64);
        ensure(lhs <= c * p1.get(y) + 1e-12, || {
            format!("y = {y}: {lhs} > {}", c * p1.get(y))
        })?;
    }
    Ok(())
}

fn kernel_identities(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let x0: f64 = rng.random_range(0.0..50.0);
    let ones = vec![1.0; 52];
    let g: Vec<f64> = (0..52).map(|_| rng.random_range(-5.0..5.0)).collect();
    let dg: Vec<f64> = g.windows(2).map(|w| w[1] - w[0]).collect();
    let f = x0.floor() as usize;
    let g_star = g[f] + dg[f] * (x0 - x0.floor());
    for x in 0..=50u64 {
        let row = kernel_apply(x0, x, &ones);
        ensure((row - (x as f64 - x0)).abs() <= 1e-12, || {
            format!("row sum {row} at x = {x}, x0 = {x0}")
        })?;
        let t = kernel_apply(x0, x, &dg);
        let target = g[x as usize] - g_star;
        ensure((t - target).abs() <= 1e-10, || {
            format!("telescoping {t} vs {target}")
        })?;
    }
    Ok(())
}

fn charlier_identities(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let lambda = [0.5, 1.0, 2.0, 5.0, 10.0][rng.random_range(0..5)];
    let n = rng.random_range(1..=15);
    let xmax = (4.0 * lambda) as u64 + 8 * n as u64;
    let r = check_delta_identity(n, lambda, xmax).map_err(|e| e.to_string())?;
    ensure(r <= 1e-6, || {
        format!("Δ residual {r} at n = {n}, λ = {lambda}")
    })?;
    let (i, j) = (rng.random_range(0..=10), rng.random_range(0..=10));
    let ip = check_orthogonality(i, j, lambda, 1e-14).map_err(|e| e.to_string())?;
    let norm = squared_norm(i, lambda);
    let target = if i == j { norm } else { 0.0 };
    ensure((ip - target).abs() <= 1e-6 * norm.max(1.0), || {
        format!("<c{i}, c{j}> = {ip} at λ = {lambda}, expected {target}")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_trial_runs_each_property_once() {
        let r = run_suite(3, 1);
        assert_eq!(r.properties.len(), PROPERTIES.len());
        assert!(r.properties.iter().all(|p| p.passed + p.failed == 1));
    }

    #[test]
    fn deterministic() {
        assert_eq!(run_suite(9, 5), run_suite(9, 5));
    }
}
