//! Monic Poisson–Charlier polynomials.
//!
//! Built by `c₀ = 1`, `c₁ = x − λ`,
//! `c_{k+1}(x) = (x − k − λ) c_k(x) − k λ c_{k−1}(x)`. Under this
//! construction `Δc_n = n c_{n−1}` and `⟨c_n, c_m⟩_{Π_λ} = n! λⁿ δ_{nm}`;
//! both identities are checked numerically rather than assumed.

use crate::error::{Error, Result};
use crate::pmf::Pmf;

pub const MAX_DEGREE: usize = 30;
pub const MAX_LAMBDA: f64 = 30.0;

#[derive(Debug, Clone, PartialEq)]
pub struct CharlierPoly {
    degree: usize,
    lambda: f64,
    /// Ascending powers; `coeffs[degree] == 1`.
    coeffs: Vec<f64>,
}

impl CharlierPoly {
    pub fn new(degree: usize, lambda: f64) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::BadParameter(format!(
                "charlier degree {degree} exceeds {MAX_DEGREE}"
            )));
        }
        if !(lambda > 0.0 && lambda <= MAX_LAMBDA) {
            return Err(Error::BadParameter(format!(
                "charlier lambda must lie in (0, {MAX_LAMBDA}], got {lambda}"
            )));
        }
        let mut prev = vec![1.0];
        if degree == 0 {
            return Ok(Self {
                degree,
                lambda,
                coeffs: prev,
            });
        }
        let mut cur = vec![-lambda, 1.0];
        for k in 1..degree {
            let kf = k as f64;
            let mut next = vec![0.0; cur.len() + 1];
            for (i, &c) in cur.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= (kf + lambda) * c;
            }
            for (i, &c) in prev.iter().enumerate() {
                next[i] -= kf * lambda * c;
            }
            prev = std::mem::replace(&mut cur, next);
        }
        Ok(Self {
            degree,
            lambda,
            coeffs: cur,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Values on `0..len`.
    pub fn values(&self, len: usize) -> Vec<f64> {
        (0..len).map(|x| self.eval(x as f64)).collect()
    }
}

/// `max_{x ≤ xmax} |c_n(x+1) − c_n(x) − n c_{n−1}(x)| / (1 + |c_n(x)|)`.
pub fn check_delta_identity(n: usize, lambda: f64, xmax: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::BadParameter("delta identity needs n ≥ 1".into()));
    }
    let cn = CharlierPoly::new(n, lambda)?;
    let cm = CharlierPoly::new(n - 1, lambda)?;
    let nf = n as f64;
    Ok((0..=xmax)
        .map(|x| {
            let xf = x as f64;
            let at = cn.eval(xf);
            (cn.eval(xf + 1.0) - at - nf * cm.eval(xf)).abs() / (1.0 + at.abs())
        })
        .fold(0.0, f64::max))
}

/// `Σ_x Π_λ(x) c_n(x) c_m(x)`, summed until the neglected integrand is
/// below `tail_eps · max(1, n! λⁿ)`.
///
/// Truncating at a fixed probability mass is not enough here: the
/// polynomial factor grows like `x^{n+m}` and amplifies the dropped mass.
pub fn check_orthogonality(n: usize, m: usize, lambda: f64, tail_eps: f64) -> Result<f64> {
    if !(tail_eps > 0.0 && tail_eps < 1.0) {
        return Err(Error::BadParameter(format!(
            "tail_eps must lie in (0, 1), got {tail_eps}"
        )));
    }
    let cn = CharlierPoly::new(n, lambda)?;
    let cm = CharlierPoly::new(m, lambda)?;
    let mass_end = Pmf::poisson(lambda, tail_eps)?.max_index();
    // Beyond every root and past the mode of the weighted terms, which then decay geometrically.
    let decay_start = (2.0 * (lambda + (n + m) as f64) + 1.0).ceil() as usize;
    let cutoff = tail_eps * squared_norm(n, lambda).max(1.0);
    let ln_lambda = lambda.ln();
    let mut log_w = -lambda;
    let mut sum = 0.0;
    for x in 0.. {
        if x > 0 {
            log_w += ln_lambda - (x as f64).ln();
        }
        let xf = x as f64;
        let term = log_w.exp() * cn.eval(xf) * cm.eval(xf);
        sum += term;
        if x >= mass_end && x >= decay_start && term.abs() <= cutoff {
            break;
        }
    }
    Ok(sum)
}

/// `n! λⁿ`.
pub fn squared_norm(n: usize, lambda: f64) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64 * lambda)
}
