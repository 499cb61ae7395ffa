//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use poincare_core::bounds::{
    bobkov_gotze, bound_thm_ulc_inf, bound_thm_ulc_n, bound_thm_ulc_n_refined,
    crossing_constant_inf, crossing_constant_n, kernel_apply, CertificateKind,
};
use poincare_core::charlier::{check_delta_identity, check_orthogonality, squared_norm};
use poincare_core::oracle::{maximize_rayleigh, DEFAULT_RESTARTS};
use poincare_core::random::{random_bernoulli_sum, random_connected_pmf, random_non_ulc_pmf};
use poincare_core::spectral_gap::{centered_second_moment, dirichlet_form, smoothed_step};
use poincare_core::{poincare_exact, rayleigh, ExactGap, Pmf};

const BERNOULLI_SUM_SEED: u64 = 20_240_601;
const NON_ULC_SEED: u64 = 20_240_602;
const PAIR_SEED: u64 = 20_240_603;
const KERNEL_SEED: u64 = 20_240_604;
const ORACLE_SEED: u64 = 20_240_605;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn exact(p: &Pmf) -> Result<f64, String> {
    poincare_exact(p)
        .map_err(|e| e.to_string())?
        .value()
        .ok_or_else(|| format!("no finite constant for {:?}", p.probs()))
}

fn bernoulli_sums() -> Vec<(Vec<f64>, Pmf)> {
    let mut rng = ChaCha8Rng::seed_from_u64(BERNOULLI_SUM_SEED);
    (0..200)
        .map(|_| random_bernoulli_sum(&mut rng, 30))
        .collect()
}

fn poisson_exactness() -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut worst: f64 = 0.0;
    for lambda in [0.5, 1.0, 2.0, 5.0] {
        let start = Instant::now();
        let p = Pmf::poisson(lambda, 1e-12).map_err(|e| e.to_string())?;
        let v = exact(&p)?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        worst = worst.max((v - lambda).abs());
        if (v - lambda).abs() > 1e-6 {
            return Err(format!("λ = {lambda}: got {v}"));
        }
        if elapsed >= Duration::from_secs(1) {
            return Err(format!("λ = {lambda} took {elapsed:?}"));
        }
    }
    Ok(format!("max |R − λ| = {worst:.2e}, slowest {slowest:?}"))
}

fn bernoulli_binomial() -> Outcome {
    for p in [0.1, 0.5, 0.9] {
        let v = exact(&Pmf::bernoulli(p).unwrap())?;
        if (v - p).abs() > 1e-10 {
            return Err(format!("Bern({p}): {v}"));
        }
    }
    let mut cases = 0;
    for n in 1..=50u64 {
        for k in 1..10 {
            let q = k as f64 / 10.0;
            let nf = n as f64;
            let v = exact(&Pmf::binomial(n, q).unwrap())?;
            if v < nf * q * (1.0 - q) - 1e-8 || v > nf * q + 1e-8 {
                return Err(format!(
                    "B({n}, {q}): {v} outside [{}, {}]",
                    nf * q * (1.0 - q),
                    nf * q
                ));
            }
            cases += 1;
        }
    }
    Ok(format!("3 Bernoulli, {cases} binomial cases"))
}

fn crossing_certificates() -> Outcome {
    for lambda in [0.5, 1.0, 2.0, 5.0] {
        let p = Pmf::poisson(lambda, 1e-12).unwrap();
        let c = crossing_constant_inf(&p).ok_or(format!("no crossing for Poisson({lambda})"))?;
        if (c.implied_bound() - lambda).abs() > 1e-9 {
            return Err(format!("Poisson({lambda}): C = {}", c.implied_bound()));
        }
    }
    for (n, q) in [(1u64, 0.5), (5, 0.2), (10, 0.3), (30, 0.65), (50, 0.9)] {
        let b = Pmf::binomial(n, q).unwrap();
        let cert = crossing_constant_n(&b, n)
            .map_err(|e| e.to_string())?
            .ok_or(format!("no crossing for B({n}, {q})"))?;
        let CertificateKind::CrossingDegreeN { d, .. } = *cert.kind() else {
            return Err("wrong certificate kind".into());
        };
        if (d - q).abs() > 1e-9 {
            return Err(format!("B({n}, {q}): D = {d}"));
        }
    }
    Ok("Poisson C = λ, binomial D = p".into())
}

fn theorem_chain() -> Outcome {
    let le = |a: f64, b: f64| a <= b + 1e-8;
    for (i, (ps, p)) in bernoulli_sums().iter().enumerate() {
        let n = ps.len() as u64;
        let m = p.moments();
        let v = exact(p)?;
        let crossing = crossing_constant_n(p, n)
            .map_err(|e| e.to_string())?
            .ok_or(format!("instance {i}: no degree-n crossing"))?
            .implied_bound();
        let refined = bound_thm_ulc_n_refined(&m, n).map_err(|e| e.to_string())?;
        let thm_n = bound_thm_ulc_n(&m, n).map_err(|e| e.to_string())?;
        let thm_inf = bound_thm_ulc_inf(&m).map_err(|e| e.to_string())?;
        let chain = [v, crossing, refined, thm_n, thm_inf];
        if !chain.windows(2).all(|w| le(w[0], w[1])) {
            return Err(format!("instance {i}: chain {chain:?}"));
        }
    }
    Ok("200 Bernoulli sums, 0 violations".into())
}

fn bobkov_gotze_sandwich() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(NON_ULC_SEED);
    let non_ulc: Vec<Pmf> = (0..100).map(|_| random_non_ulc_pmf(&mut rng, 10)).collect();
    let pmfs = bernoulli_sums().into_iter().map(|(_, p)| p).chain(non_ulc);
    let mut violations = Vec::new();
    let mut checked = 0;
    for (i, p) in pmfs.enumerate() {
        let v = exact(&p)?;
        let bg = bobkov_gotze(&p);
        let upper = bg.upper.ok_or(format!("instance {i}: no upper bound"))?;
        if bg.constant > v + 1e-8 || v > upper + 1e-8 {
            violations.push(format!(
                "instance {i}: {} ≤ {v} ≤ {upper} fails",
                bg.constant
            ));
        }
        checked += 1;
    }
    let p = Pmf::poisson(5.0, 1e-12).unwrap();
    let v = exact(&p)?;
    let upper = bobkov_gotze(&p).upper.unwrap();
    let loose = upper > 5f64.exp() - 1.0 && (v - 5.0).abs() <= 1e-6;
    if !loose {
        violations.push(format!("Poisson(5): upper {upper}, exact {v}"));
    }
    if violations.is_empty() {
        Ok(format!(
            "{checked} instances; Poisson(5) upper {upper:.1} vs exact {v:.6}"
        ))
    } else {
        Err(violations.join("; "))
    }
}

fn convolution_subadditivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(PAIR_SEED);
    for i in 0..100 {
        let a = random_connected_pmf(&mut rng, 10);
        let b = random_connected_pmf(&mut rng, 10);
        let (ra, rb, rc) = (exact(&a)?, exact(&b)?, exact(&a.convolve(&b))?);
        if rc > ra + rb + 1e-8 {
            return Err(format!("pair {i}: {rc} > {ra} + {rb}"));
        }
    }
    for (l1, l2) in [(1.0, 2.0), (0.5, 4.5)] {
        let a = Pmf::poisson(l1, 1e-12).unwrap();
        let b = Pmf::poisson(l2, 1e-12).unwrap();
        let (ra, rb, rc) = (exact(&a)?, exact(&b)?, exact(&a.convolve(&b))?);
        if (rc - ra - rb).abs() > 1e-6 {
            return Err(format!(
                "Poisson({l1}) * Poisson({l2}): {rc} vs {}",
                ra + rb
            ));
        }
    }
    Ok("100 random pairs; Poisson pairs additive".into())
}

fn counterexample() -> Outcome {
    let z = Pmf::mixture(
        0.5,
        &Pmf::uniform(0, 1).unwrap(),
        &Pmf::uniform(3, 4).unwrap(),
    )
    .unwrap();
    let ExactGap::Infinite {
        witness,
        gap_location,
    } = poincare_exact(&z).map_err(|e| e.to_string())?
    else {
        return Err("expected an infinite constant".into());
    };
    let num = centered_second_moment(&z, &witness).map_err(|e| e.to_string())?;
    let den = dirichlet_form(&z, &witness).map_err(|e| e.to_string())?;
    if !(num > 0.0 && den == 0.0) {
        return Err(format!("witness numerator {num}, Dirichlet form {den}"));
    }
    for big in [1e2, 1e6, 1e10, 1e14] {
        let mut eps = 1.0;
        let mut beaten = false;
        for _ in 0..80 {
            let q =
                rayleigh(&z, &smoothed_step(&z, gap_location, eps)).map_err(|e| e.to_string())?;
            if q > big {
                beaten = true;
                break;
            }
            eps /= 2.0;
        }
        if !beaten {
            return Err(format!("no smoothed step exceeds {big}"));
        }
    }
    Ok(format!(
        "Infinite at gap {gap_location}; smoothed steps exceed 1e14"
    ))
}

fn kernel_identities() -> Outcome {
    let ones = vec![1.0; 52];
    for k in 0..=500 {
        let x0 = k as f64 * 0.1;
        for x in 0..=50u64 {
            let s = kernel_apply(x0, x, &ones);
            if (s - (x as f64 - x0)).abs() > 1e-12 {
                return Err(format!("row sum {s} at x = {x}, x0 = {x0}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(KERNEL_SEED);
    for _ in 0..200 {
        let g: Vec<f64> = (0..52).map(|_| rng.random_range(-10.0..10.0)).collect();
        let dg: Vec<f64> = g.windows(2).map(|w| w[1] - w[0]).collect();
        let x0: f64 = rng.random_range(0.0..50.0);
        let f = x0.floor() as usize;
        let g_star = g[f] + (x0 - x0.floor()) * dg[f];
        for x in 0..=50u64 {
            let t = kernel_apply(x0, x, &dg);
            if (t - (g[x as usize] - g_star)).abs() > 1e-10 {
                return Err(format!("telescoping at x = {x}, x0 = {x0}: {t}"));
            }
        }
    }
    Ok("row sums on 501 offsets; 200 random telescoping checks".into())
}

fn charlier_identities() -> Outcome {
    let mut worst_delta: f64 = 0.0;
    for lambda in [0.5, 1.0, 2.0, 5.0, 10.0] {
        for n in 1..=15 {
            let xmax = (4.0 * lambda) as u64 + 8 * n as u64;
            let r = check_delta_identity(n, lambda, xmax).map_err(|e| e.to_string())?;
            worst_delta = worst_delta.max(r);
            if r > 1e-6 {
                return Err(format!("Δ residual {r} at n = {n}, λ = {lambda}"));
            }
        }
    }
    let mut worst_orth: f64 = 0.0;
    for lambda in [0.5, 1.0, 2.0, 5.0, 10.0] {
        for n in 0..=10 {
            for m in 0..=10 {
                let ip = check_orthogonality(n, m, lambda, 1e-14).map_err(|e| e.to_string())?;
                let norm = squared_norm(n, lambda);
                let target = if n == m { norm } else { 0.0 };
                let err = (ip - target).abs() / norm.max(1.0);
                worst_orth = worst_orth.max(err);
                if err > 1e-6 {
                    return Err(format!("<c{n}, c{m}> = {ip} at λ = {lambda}"));
                }
            }
        }
    }
    Ok(format!(
        "Δ residual {worst_delta:.1e}, orthogonality {worst_orth:.1e}"
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let mut worst: f64 = 0.0;
    for i in 0..200u64 {
        let p = random_connected_pmf(&mut rng, 12);
        let v = exact(&p)?;
        let direct =
            maximize_rayleigh(&p, DEFAULT_RESTARTS, ORACLE_SEED + i).map_err(|e| e.to_string())?;
        let rel = (v - direct.value).abs() / v;
        worst = worst.max(rel);
        if rel > 1e-5 {
            return Err(format!(
                "instance {i}: eigen {v} vs direct {}",
                direct.value
            ));
        }
    }
    Ok(format!("200 pmfs, worst relative gap {worst:.1e}"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [Criterion; 10] = [
        ("poisson exactness", poisson_exactness),
        ("bernoulli and binomial", bernoulli_binomial),
        ("crossing certificates", crossing_certificates),
        ("moment bound chain", theorem_chain),
        ("bobkov-gotze sandwich", bobkov_gotze_sandwich),
        ("convolution subadditivity", convolution_subadditivity),
        ("disconnected support", counterexample),
        ("kernel identities", kernel_identities),
        ("charlier identities", charlier_identities),
        ("oracle equivalence", oracle_equivalence),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    let total = start.elapsed();
    println!(
        "acceptance: {} passed, {failures} failed in {total:?}",
        criteria.len() - failures
    );
    if total >= Duration::from_secs(60) {
        println!("FAIL suite runtime {total:?} exceeds 60 s");
        failures += 1;
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
