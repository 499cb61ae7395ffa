//! Canonical worked examples, each recomputed from scratch.

use poincare_core::bounds::{
    bobkov_gotze, bound_thm_ulc_inf, crossing_constant_n, CertificateKind,
};
use poincare_core::charlier::{
    check_delta_identity, check_orthogonality, squared_norm, CharlierPoly,
};
use poincare_core::spectral_gap::{centered_second_moment, dirichlet_form, smoothed_step};
use poincare_core::{poincare_exact, rayleigh, ExactGap, Pmf};

use crate::error::CliError;
use crate::run::Claim;

pub const CASES: [&str; 6] = [
    "poisson",
    "binomial",
    "bernoulli-sum",
    "convolution",
    "counterexample",
    "charlier",
];

fn claim(
    label: impl Into<String>,
    claimed: impl Into<String>,
    computed: Option<f64>,
    holds: bool,
) -> Claim {
    Claim {
        label: label.into(),
        claimed: claimed.into(),
        computed,
        holds,
    }
}

fn exact(p: &Pmf) -> Result<f64, CliError> {
    poincare_exact(p)
        .map_err(CliError::Internal)?
        .value()
        .ok_or(CliError::Internal(poincare_core::Error::DegenerateSupport))
}

pub fn claims(case: &str, tail_eps: f64) -> Result<Vec<Claim>, CliError> {
    match case {
        "poisson" => poisson(tail_eps),
        "binomial" => binomial(),
        "bernoulli-sum" => bernoulli_sum(),
        "convolution" => convolution(tail_eps),
        "counterexample" => counterexample(),
        "charlier" => charlier(tail_eps),
        other => Err(CliError::UnknownCase(other.to_string())),
    }
}

fn poisson(tail_eps: f64) -> Result<Vec<Claim>, CliError> {
    let mut out = Vec::new();
    for lambda in [0.5, 1.0, 2.0, 5.0] {
        let p = Pmf::poisson(lambda, tail_eps)?;
        let v = exact(&p)?;
        out.push(claim(
            format!("Poisson({lambda}) constant"),
            format!("= {lambda}"),
            Some(v),
            (v - lambda).abs() <= 1e-6,
        ));
        let floor = lambda.exp() - 1.0;
        let upper = bobkov_gotze(&p).upper;
        out.push(claim(
            format!("Poisson({lambda}) C/P(0)"),
            format!(">= e^λ - 1 = {floor:.6}"),
            upper,
            upper.is_some_and(|u| u >= floor - 1e-9),
        ));
    }
    Ok(out)
}

fn binomial() -> Result<Vec<Claim>, CliError> {
    let mut out = Vec::new();
    for (n, q) in [(10u64, 0.3), (20, 0.5), (50, 0.9)] {
        let nf = n as f64;
        let p = Pmf::binomial(n, q)?;
        let v = exact(&p)?;
        let (lo, hi) = (nf * q * (1.0 - q), nf * q);
        out.push(claim(
            format!("B({n}, {q}) constant"),
            format!("in [np(1-p), np] = [{lo}, {hi}]"),
            Some(v),
            v >= lo - 1e-8 && v <= hi + 1e-8,
        ));
        let d = crossing_constant_n(&p, n)
            .map_err(CliError::Internal)?
            .and_then(|c| match *c.kind() {
                CertificateKind::CrossingDegreeN { d, .. } => Some(d),
                _ => None,
            });
        out.push(claim(
            format!("B({n}, {q}) degree-n crossing D"),
            format!("= p = {q}"),
            d,
            d.is_some_and(|d| (d - q).abs() <= 1e-9),
        ));
    }
    Ok(out)
}

fn bernoulli_sum() -> Result<Vec<Claim>, CliError> {
    let ps = [0.1; 10];
    let p = Pmf::bernoulli_sum(&ps)?;
    let v = exact(&p)?;
    let m = p.moments();
    let sum: f64 = ps.iter().sum();
    let thm = bound_thm_ulc_inf(&m).map_err(CliError::Internal)?;
    let thm_claim = 1.5 + 0.35f64.sqrt();
    Ok(vec![
        claim(
            "exact constant",
            "between the bounds below",
            Some(v),
            v >= m.variance - 1e-8 && v <= sum + 1e-8,
        ),
        claim(
            "lower bound Var X",
            "= 0.9",
            Some(m.variance),
            (m.variance - 0.9).abs() <= 1e-12,
        ),
        claim(
            "sum of Bernoulli constants",
            "= 1.0",
            Some(sum),
            (sum - 1.0).abs() <= 1e-12 && v <= sum + 1e-8,
        ),
        claim(
            "moment bound",
            format!("= 1 + 1/2 + sqrt(1/4 + 0.1) ≈ {thm_claim:.4}"),
            Some(thm),
            (thm - thm_claim).abs() <= 1e-9 && v <= thm + 1e-8,
        ),
    ])
}

fn convolution(tail_eps: f64) -> Result<Vec<Claim>, CliError> {
    let a = Pmf::poisson(1.0, tail_eps)?;
    let b = Pmf::poisson(2.0, tail_eps)?;
    let sum = exact(&a)? + exact(&b)?;
    let v = exact(&a.convolve(&b))?;
    let x = Pmf::bernoulli(0.3)?;
    let y = Pmf::binomial(6, 0.5)?;
    let bound = exact(&x)? + exact(&y)?;
    let w = exact(&x.convolve(&y))?;
    Ok(vec![
        claim(
            "Poisson(1) * Poisson(2)",
            format!("= R(a) + R(b) = {sum:.6}"),
            Some(v),
            (v - sum).abs() <= 1e-6,
        ),
        claim(
            "Bern(0.3) * B(6, 0.5)",
            format!("<= R(a) + R(b) = {bound:.6}"),
            Some(w),
            w <= bound + 1e-8,
        ),
    ])
}

fn counterexample() -> Result<Vec<Claim>, CliError> {
    let z = Pmf::mixture(0.5, &Pmf::uniform(0, 1)?, &Pmf::uniform(3, 4)?)?;
    let ExactGap::Infinite {
        witness,
        gap_location,
    } = poincare_exact(&z).map_err(CliError::Internal)?
    else {
        return Ok(vec![claim("constant", "infinite", None, false)]);
    };
    let num = centered_second_moment(&z, &witness).map_err(CliError::Internal)?;
    let den = dirichlet_form(&z, &witness).map_err(CliError::Internal)?;
    let shape = witness
        .iter()
        .map(|g| format!("{g}"))
        .collect::<Vec<_>>()
        .join(",");
    let q = rayleigh(&z, &smoothed_step(&z, gap_location, 1e-4)).map_err(CliError::Internal)?;
    Ok(vec![
        claim("constant", "infinite", None, true),
        claim(
            format!("step witness g = [{shape}]"),
            "Var g > 0",
            Some(num),
            num > 0.0,
        ),
        claim("step witness Dirichlet form", "= 0", Some(den), den == 0.0),
        claim(
            "smoothed step, slope 1e-4",
            "quotient > 1e6",
            Some(q),
            q > 1e6,
        ),
    ])
}

fn charlier(tail_eps: f64) -> Result<Vec<Claim>, CliError> {
    let mut out = Vec::new();
    for lambda in [0.5, 1.0, 2.0, 5.0] {
        let p = Pmf::poisson(lambda, tail_eps)?;
        let g = CharlierPoly::new(1, lambda)?.values(p.max_index() + 2);
        let q = rayleigh(&p, &g).map_err(CliError::Internal)?;
        out.push(claim(
            format!("quotient of c1 under Poisson({lambda})"),
            format!("= {lambda}"),
            Some(q),
            (q - lambda).abs() <= 1e-6,
        ));
    }
    let r = (1..=15)
        .map(|n| check_delta_identity(n, 5.0, 20 + 8 * n as u64))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(0.0, f64::max);
    out.push(claim(
        "Δc_n = n c_(n-1), n <= 15, λ = 5",
        "residual <= 1e-6",
        Some(r),
        r <= 1e-6,
    ));
    let mut worst: f64 = 0.0;
    for n in 0..=10 {
        for m in 0..=10 {
            let ip = check_orthogonality(n, m, 5.0, 1e-14)?;
            let norm = squared_norm(n, 5.0);
            let target = if n == m { norm } else { 0.0 };
            worst = worst.max((ip - target).abs() / norm.max(1.0));
        }
    }
    out.push(claim(
        "<c_n, c_m> = n! λ^n δ, n, m <= 10, λ = 5",
        "relative error <= 1e-6",
        Some(worst),
        worst <= 1e-6,
    ));
    Ok(out)
}
