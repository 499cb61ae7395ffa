//! Exact discrete Poincaré constant of a finitely supported pmf.
//!
//! For `g` on `{0, ..., N+1}` the constant is the supremum of
//! `Var g(X) / Σ P(x) (Δg)(x)²`. Writing `d(u) = √P(u) · (Δg)(u)`, the
//! numerator is `dᵀ D^{-1/2} K D^{-1/2} d` with the threshold-indicator
//! covariance `K(u, v) = F(min(u, v)) · (1 − F(max(u, v)))`, and the
//! denominator is `|d|²`, so the constant is the top eigenvalue of
//! `D^{-1/2} K D^{-1/2}`. The free value `g(N+1)` is set to `g(N)`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::symmetric_eigen_max;
use crate::pmf::Pmf;

/// Relative tolerance on the witness quotient against the eigenvalue.
pub const WITNESS_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapKind {
    Finite,
    Infinite,
    Degenerate,
}

impl GapKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GapKind::Finite => "Finite",
            GapKind::Infinite => "Infinite",
            GapKind::Degenerate => "Degenerate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExactGap {
    /// `witness` is mean-zero and attains `value`.
    Finite { value: f64, witness: Vec<f64> },
    /// `witness` is constant on each side of the zero at `gap_location`.
    Infinite {
        witness: Vec<f64>,
        gap_location: usize,
    },
    /// Single-point support: no admissible function exists.
    Degenerate,
}

impl ExactGap {
    pub fn kind(&self) -> GapKind {
        match self {
            ExactGap::Finite { .. } => GapKind::Finite,
            ExactGap::Infinite { .. } => GapKind::Infinite,
            ExactGap::Degenerate => GapKind::Degenerate,
        }
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            ExactGap::Finite { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&[f64]> {
        match self {
            ExactGap::Finite { witness, .. } | ExactGap::Infinite { witness, .. } => Some(witness),
            ExactGap::Degenerate => None,
        }
    }

    pub fn gap_location(&self) -> Option<usize> {
        match self {
            ExactGap::Infinite { gap_location, .. } => Some(*gap_location),
            _ => None,
        }
    }
}

/// Covariance of the threshold indicators `1{X > u}`, `u = 0..N−1`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix {
    entries: DMatrix<f64>,
}

impl KernelMatrix {
    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.entries[(u, v)]
    }
}

fn check_len(p: &Pmf, g: &[f64]) -> Result<()> {
    let expected = p.max_index() + 2;
    if g.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            found: g.len(),
        });
    }
    Ok(())
}

/// `Σ_{x=0}^{N} P(x) (g(x+1) − g(x))²` for `g` on `{0, ..., N+1}`.
pub fn dirichlet_form(p: &Pmf, g: &[f64]) -> Result<f64> {
    check_len(p, g)?;
    Ok(p.probs()
        .iter()
        .zip(g.windows(2))
        .map(|(&w, pair)| {
            let d = pair[1] - pair[0];
            w * d * d
        })
        .sum())
}

/// `Σ P(x) (g(x) − ḡ)²` with `ḡ = Σ P(x) g(x)`.
pub fn centered_second_moment(p: &Pmf, g: &[f64]) -> Result<f64> {
    check_len(p, g)?;
    let mean: f64 = p.probs().iter().zip(g).map(|(&w, &v)| w * v).sum();
    Ok(p.probs()
        .iter()
        .zip(g)
        .map(|(&w, &v)| {
            let d = v - mean;
            w * d * d
        })
        .sum())
}

/// Poincaré quotient of `g`; a lower bound on the constant.
pub fn rayleigh(p: &Pmf, g: &[f64]) -> Result<f64> {
    let den = dirichlet_form(p, g)?;
    if den == 0.0 {
        return Err(Error::ZeroDirichlet);
    }
    Ok(centered_second_moment(p, g)? / den)
}

pub fn kernel_matrix(p: &Pmf) -> Result<KernelMatrix> {
    let n = p.max_index();
    if p.is_point_mass() {
        return Err(Error::DegenerateSupport);
    }
    let cdf = p.cdf();
    let tails = p.upper_tails();
    let entries = DMatrix::from_fn(n, n, |u, v| cdf[u.min(v)] * tails[u.max(v)]);
    Ok(KernelMatrix { entries })
}

/// Step witness across the first interior gap: zero up to the gap, one after.
pub fn gap_step_witness(p: &Pmf, gap: usize) -> Vec<f64> {
    (0..p.max_index() + 2)
        .map(|x| if x > gap { 1.0 } else { 0.0 })
        .collect()
}

/// Gap step plus a slope `eps · x`; its quotient grows like `1/eps²`.
pub fn smoothed_step(p: &Pmf, gap: usize, eps: f64) -> Vec<f64> {
    gap_step_witness(p, gap)
        .into_iter()
        .enumerate()
        .map(|(x, s)| s + eps * x as f64)
        .collect()
}

pub fn poincare_exact(p: &Pmf) -> Result<ExactGap> {
    if p.is_point_mass() {
        return Ok(ExactGap::Degenerate);
    }
    if let Some(gap) = p.first_interior_gap() {
        return Ok(ExactGap::Infinite {
            witness: gap_step_witness(p, gap),
            gap_location: gap,
        });
    }

    let n = p.max_index();
    let kernel = kernel_matrix(p)?;
    // Indices before the support carry no mass and a zero kernel row.
    let active: Vec<usize> = (0..n).filter(|&u| p.get(u) > 0.0).collect();
    let scale: Vec<f64> = active.iter().map(|&u| p.get(u).sqrt()).collect();
    let m = DMatrix::from_fn(active.len(), active.len(), |i, j| {
        kernel.get(active[i], active[j]) / (scale[i] * scale[j])
    });
    let (value, d) = symmetric_eigen_max(&m)?;

    let mut steps = vec![0.0; n + 1];
    for (i, &u) in active.iter().enumerate() {
        steps[u] = d[i] / scale[i];
    }
    let mut witness = Vec::with_capacity(n + 2);
    let mut acc = 0.0;
    witness.push(acc);
    for s in &steps {
        acc += s;
        witness.push(acc);
    }
    let mean: f64 = p.probs().iter().zip(&witness).map(|(&w, &v)| w * v).sum();
    for v in &mut witness {
        *v -= mean;
    }

    let quotient = rayleigh(p, &witness)?;
    if (quotient - value).abs() > WITNESS_TOLERANCE * value {
        return Err(Error::WitnessMismatch { value, quotient });
    }
    Ok(ExactGap::Finite { value, witness })
}
