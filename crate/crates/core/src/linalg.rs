//! Top eigenpair of a dense symmetric matrix.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Iteration cap handed to the symmetric QR solver.
pub const MAX_EIGEN_ITERATIONS: usize = 1_000_000;
/// Relative symmetry tolerance on input.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
/// Residual contract: `‖Mv − λv‖ ≤ RESIDUAL_TOLERANCE · ‖M‖ · ‖v‖`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Largest eigenvalue and a unit eigenvector, sign-normalized so the entry of
/// largest magnitude is positive.
pub fn symmetric_eigen_max(m: &DMatrix<f64>) -> Result<(f64, DVector<f64>)> {
    let n = m.nrows();
    if n == 0 || m.ncols() != n {
        return Err(Error::BadParameter(format!(
            "expected a nonempty square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let norm = m.norm();
    let mut asym = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            asym = asym.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    if asym > SYMMETRY_TOLERANCE * norm.max(f64::MIN_POSITIVE) {
        return Err(Error::NotSymmetric(asym));
    }

    let eig = m
        .clone()
        .try_symmetric_eigen(f64::EPSILON, MAX_EIGEN_ITERATIONS)
        .ok_or(Error::NoConvergence(MAX_EIGEN_ITERATIONS))?;
    let (top, value) =
        eig.eigenvalues
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, v)| {
                if v > best.1 {
                    (i, v)
                } else {
                    best
                }
            });
    let mut vector = eig.eigenvectors.column(top).into_owned();
    let vnorm = vector.norm();
    vector /= vnorm;

    let lead = vector
        .iter()
        .fold(0.0f64, |acc, &v| if v.abs() > acc.abs() { v } else { acc });
    if lead < 0.0 {
        vector.neg_mut();
    }

    let residual = (m * &vector - &vector * value).norm();
    let tolerance = RESIDUAL_TOLERANCE * norm;
    if residual > tolerance {
        return Err(Error::ResidualTooLarge {
            residual,
            tolerance,
        });
    }
    Ok((value, vector))
}
