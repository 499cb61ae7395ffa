//! Probability mass functions on `{0, 1, ..., N}`.
//!
//! A [`Pmf`] is always normalized and has a positive last entry; leading
//! zeros are kept so shifted distributions can be represented.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Ingestion tolerance on the total mass.
pub const SUM_TOLERANCE: f64 = 1e-6;

const MAX_BINOMIAL_TRIALS: u64 = 100_000;
const MAX_POISSON_SUPPORT: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    probs: Vec<f64>,
}

/// First two moments of a pmf.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
    pub second_moment: f64,
}

impl Moments {
    /// Builds moments from mean and variance, keeping
    /// `second_moment = variance + mean²`.
    pub fn from_mean_variance(mean: f64, variance: f64) -> Self {
        Self {
            mean,
            variance,
            second_moment: variance + mean * mean,
        }
    }
}

impl Pmf {
    /// Validates and normalizes a weight vector; trailing zeros are trimmed.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        for (index, &value) in entries.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::NegativeMass { index, value });
            }
        }
        let sum: f64 = entries.iter().sum();
        if sum == 0.0 {
            return Err(Error::EmptySupport);
        }
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self::from_weights(entries))
    }

    /// Normalizes arbitrary nonnegative weights with positive total.
    pub(crate) fn from_weights(mut weights: Vec<f64>) -> Self {
        while weights.len() > 1 && weights.last() == Some(&0.0) {
            weights.pop();
        }
        let sum: f64 = weights.iter().sum();
        debug_assert!(sum > 0.0);
        for w in &mut weights {
            *w /= sum;
        }
        Pmf { probs: weights }
    }

    pub fn point_mass(k: usize) -> Self {
        let mut probs = vec![0.0; k + 1];
        probs[k] = 1.0;
        Pmf { probs }
    }

    /// Uniform on `{lo, ..., hi}`.
    pub fn uniform(lo: usize, hi: usize) -> Result<Self> {
        if lo > hi {
            return Err(Error::BadParameter(format!(
                "uniform range {lo}..={hi} is empty"
            )));
        }
        let mut w = vec![0.0; hi + 1];
        w[lo..=hi].fill(1.0);
        Ok(Self::from_weights(w))
    }

    /// Poisson(λ) truncated at the smallest `N` whose certified tail mass
    /// `Π(N+1) / (1 − λ/(N+2))` is at most `tail_eps`, then renormalized.
    pub fn poisson(lambda: f64, tail_eps: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::BadParameter(format!(
                "poisson lambda must be positive, got {lambda}"
            )));
        }
        if !(tail_eps > 0.0 && tail_eps < 1.0) {
            return Err(Error::BadParameter(format!(
                "poisson tail_eps must lie in (0, 1), got {tail_eps}"
            )));
        }
        let ln_lambda = lambda.ln();
        let mut log_p = -lambda;
        let mut weights = vec![log_p.exp()];
        loop {
            let n = weights.len() - 1;
            let next_log = log_p + ln_lambda - ((n + 1) as f64).ln();
            let ratio = lambda / (n as f64 + 2.0);
            if ratio < 1.0 && next_log.exp() / (1.0 - ratio) <= tail_eps {
                break;
            }
            if weights.len() >= MAX_POISSON_SUPPORT {
                return Err(Error::BadParameter(format!(
                    "poisson lambda {lambda} needs more than {MAX_POISSON_SUPPORT} support points"
                )));
            }
            log_p = next_log;
            weights.push(log_p.exp());
        }
        // Leading underflow for very large λ leaves zeros in front; the
        // trailing entry is positive because the tail test failed before it.
        Ok(Self::from_weights(weights))
    }

    /// Binomial B(n, p), built by multiplicative recurrence outward from the mode
    /// so consecutive ratios are exact to a few ulps.
    pub fn binomial(n: u64, p: f64) -> Result<Self> {
        if n == 0 || n > MAX_BINOMIAL_TRIALS {
            return Err(Error::BadParameter(format!(
                "binomial n must lie in 1..={MAX_BINOMIAL_TRIALS}, got {n}"
            )));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::BadParameter(format!(
                "binomial p must lie in (0, 1), got {p}"
            )));
        }
        let q = 1.0 - p;
        let nf = n as f64;
        let len = n as usize + 1;
        let mode = (((nf + 1.0) * p).floor() as usize).min(n as usize);
        let mut w = vec![0.0; len];
        w[mode] = 1.0;
        for x in mode + 1..len {
            let xf = x as f64;
            w[x] = w[x - 1] * (nf - xf + 1.0) / xf * (p / q);
        }
        for x in (1..=mode).rev() {
            let xf = x as f64;
            w[x - 1] = w[x] * xf / (nf - xf + 1.0) * (q / p);
        }
        Ok(Self::from_weights(w))
    }

    pub fn bernoulli(p: f64) -> Result<Self> {
        Self::binomial(1, p)
    }

    /// Law of a sum of independent Bernoulli(p_i) variables.
    pub fn bernoulli_sum(ps: &[f64]) -> Result<Self> {
        if ps.is_empty() {
            return Err(Error::BadParameter(
                "bernoulli_sum needs at least one p".into(),
            ));
        }
        let mut w = vec![1.0];
        for &p in ps {
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::BadParameter(format!(
                    "bernoulli p must lie in (0, 1), got {p}"
                )));
            }
            let mut next = vec![0.0; w.len() + 1];
            for (x, &m) in w.iter().enumerate() {
                next[x] += m * (1.0 - p);
                next[x + 1] += m * p;
            }
            w = next;
        }
        Ok(Self::from_weights(w))
    }

    /// Law of the sum of independent variables with laws `self` and `other`.
    pub fn convolve(&self, other: &Pmf) -> Pmf {
        let mut w = vec![0.0; self.probs.len() + other.probs.len() - 1];
        for (x, &a) in self.probs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (y, &b) in other.probs.iter().enumerate() {
                w[x + y] += a * b;
            }
        }
        Self::from_weights(w)
    }

    /// `alpha · a + (1 − alpha) · b`.
    pub fn mixture(alpha: f64, a: &Pmf, b: &Pmf) -> Result<Pmf> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::BadParameter(format!(
                "mixture alpha must lie in (0, 1], got {alpha}"
            )));
        }
        let len = a.probs.len().max(b.probs.len());
        let w = (0..len)
            .map(|x| alpha * a.get(x) + (1.0 - alpha) * b.get(x))
            .collect();
        Ok(Self::from_weights(w))
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Largest support index `N`.
    pub fn max_index(&self) -> usize {
        self.probs.len() - 1
    }

    /// `P(x)`, zero outside `0..=N`.
    pub fn get(&self, x: usize) -> f64 {
        self.probs.get(x).copied().unwrap_or(0.0)
    }

    /// Smallest index with positive mass.
    pub fn min_index(&self) -> usize {
        self.probs.iter().position(|&p| p > 0.0).unwrap_or(0)
    }

    pub fn is_point_mass(&self) -> bool {
        self.min_index() == self.max_index()
    }

    /// First zero strictly inside the support, if any.
    pub fn first_interior_gap(&self) -> Option<usize> {
        let lo = self.min_index();
        (lo + 1..self.max_index()).find(|&x| self.probs[x] == 0.0)
    }

    pub fn support_is_interval(&self) -> bool {
        self.first_interior_gap().is_none()
    }

    /// Cumulative sums `F(x) = P(0) + ... + P(x)`.
    pub fn cdf(&self) -> Vec<f64> {
        self.probs
            .iter()
            .scan(0.0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    /// Upper tails `S(x) = P(x+1) + ... + P(N)`, summed from the right so they
    /// stay accurate where `1 − F(x)` would cancel.
    pub fn upper_tails(&self) -> Vec<f64> {
        let mut tails = vec![0.0; self.probs.len()];
        let mut acc = 0.0;
        for x in (0..self.probs.len()).rev() {
            tails[x] = acc;
            acc += self.probs[x];
        }
        tails
    }

    pub fn moments(&self) -> Moments {
        let mean: f64 = self
            .probs
            .iter()
            .enumerate()
            .map(|(x, &p)| x as f64 * p)
            .sum();
        let variance: f64 = self
            .probs
            .iter()
            .enumerate()
            .map(|(x, &p)| {
                let d = x as f64 - mean;
                d * d * p
            })
            .sum();
        Moments::from_mean_variance(mean, variance)
    }

    /// `ρ(x) = x P(x) / P(x − 1)`, with `ρ(0) = 0`.
    pub fn score_ratio_inf(&self, x: usize) -> Result<f64> {
        if x == 0 {
            return Ok(0.0);
        }
        if x > self.max_index() {
            return Err(Error::BadParameter(format!(
                "score ratio index {x} beyond support end {}",
                self.max_index()
            )));
        }
        let prev = self.probs[x - 1];
        if prev == 0.0 {
            return Err(Error::DividedByZeroMass { x });
        }
        Ok(x as f64 * self.probs[x] / prev)
    }

    /// `ρ⁽ⁿ⁾(x) = x P(x) / ((n − x + 1) P(x − 1))`, with `ρ⁽ⁿ⁾(0) = 0`.
    pub fn score_ratio_n(&self, n: u64, x: usize) -> Result<f64> {
        self.check_degree(n)?;
        if x == 0 {
            return Ok(0.0);
        }
        if x > self.max_index() {
            return Err(Error::BadParameter(format!(
                "score ratio index {x} beyond support end {}",
                self.max_index()
            )));
        }
        let prev = self.probs[x - 1];
        if prev == 0.0 {
            return Err(Error::DividedByZeroMass { x });
        }
        Ok(x as f64 * self.probs[x] / ((n as f64 - x as f64 + 1.0) * prev))
    }

    pub(crate) fn check_degree(&self, n: u64) -> Result<()> {
        if (self.max_index() as u64) > n {
            return Err(Error::DegreeTooSmall {
                max_index: self.max_index(),
                degree: n,
            });
        }
        Ok(())
    }

    /// Parses the `x p` text format. Indices must be strictly increasing;
    /// missing indices carry zero mass; `#` starts a comment line.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut weights: Vec<f64> = Vec::new();
        let mut last: Option<usize> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let mut fields = line.split_whitespace();
            let (Some(xs), Some(ps), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(parse_err(format!("expected `x p`, got `{line}`")));
            };
            let x: usize = xs
                .parse()
                .map_err(|_| parse_err(format!("bad support index `{xs}`")))?;
            let p: f64 = ps
                .parse()
                .map_err(|_| parse_err(format!("bad probability `{ps}`")))?;
            if last.is_some_and(|prev| x <= prev) {
                return Err(parse_err(format!("index {x} is not strictly increasing")));
            }
            last = Some(x);
            weights.resize(x + 1, 0.0);
            weights[x] = p;
        }
        Self::new(weights)
    }

    /// Writes the `x p` text format, skipping zero entries.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (x, &p) in self.probs.iter().enumerate() {
            if p > 0.0 {
                let _ = writeln!(out, "{x} {p:e}");
            }
        }
        out
    }
}
