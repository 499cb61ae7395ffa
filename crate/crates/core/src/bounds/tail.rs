//! Klaasen kernel and tail-condition certificates.

use super::{Certificate, CertificateKind};
use crate::error::{Error, Result};
use crate::pmf::Pmf;

/// Relative slack on the tail inequalities (all summands share a sign).
const TAIL_SLACK: f64 = 1e-10;
/// Entrywise slack on `px − alpha · p1 ≥ 0`.
const DECOMPOSITION_SLACK: f64 = 1e-12;

/// `χ(x, y) = 1{⌊x0⌋ ≤ y < x} − 1{x ≤ y < ⌊x0⌋} − (x0 − ⌊x0⌋) 1{y = ⌊x0⌋}`.
pub fn klaasen_kernel(x: u64, y: u64, x0: f64) -> f64 {
    let floor = x0.floor();
    let (xf, yf) = (x as f64, y as f64);
    let mut v = 0.0;
    if floor <= yf && yf < xf {
        v += 1.0;
    }
    if xf <= yf && yf < floor {
        v -= 1.0;
    }
    if yf == floor {
        v -= x0 - floor;
    }
    v
}

/// `Σ_y χ(x, y) h(y)` by the three-case closed form.
///
/// # Panics
/// If `h` is shorter than `max(x, ⌊x0⌋) + 1`.
pub fn kernel_apply(x0: f64, x: u64, h: &[f64]) -> f64 {
    let f = x0.floor() as u64;
    let theta = x0 - x0.floor();
    let need = x.max(f) as usize + 1;
    assert!(h.len() >= need, "kernel_apply needs h on 0..={}", need - 1);
    let at_floor = -theta * h[f as usize];
    let xf = x as f64;
    if xf > x0 {
        h[f as usize..x as usize].iter().sum::<f64>() + at_floor
    } else if x == f {
        at_floor
    } else {
        -h[x as usize..f as usize].iter().sum::<f64>() + at_floor
    }
}

/// `Σ_x χ(x, y) P(x) (x − x0)` by direct summation.
pub fn weighted_kernel_sum(p: &Pmf, x0: f64, y: u64) -> f64 {
    (0..=p.max_index())
        .map(|x| klaasen_kernel(x as u64, y, x0) * p.get(x) * (x as f64 - x0))
        .sum()
}

/// Left-hand sides of the two tail conditions at every `y` that can bind:
/// `(y, upper, lower)` with `upper = Σ_{x>y} (x − x0) P(x)` (used for
/// `y ≥ ⌊x0⌋`) and `lower = Σ_{x≤y} (x0 − x) P(x)` (used for `y < x0`).
fn tail_sides(px: &Pmf, x0: f64) -> Vec<(usize, Option<f64>, Option<f64>)> {
    let floor = x0.floor();
    let ymax = px.max_index().max(x0.ceil().max(0.0) as usize);
    let mut upper = vec![0.0; ymax + 1];
    let mut acc = 0.0;
    for y in (0..=ymax).rev() {
        upper[y] = acc;
        acc += (y as f64 - x0) * px.get(y);
    }
    let mut lower = 0.0;
    (0..=ymax)
        .map(|y| {
            lower += (x0 - y as f64) * px.get(y);
            let yf = y as f64;
            (
                y,
                (yf >= floor).then_some(upper[y]),
                (yf < x0).then_some(lower),
            )
        })
        .collect()
}

/// Verifies the tail conditions
/// `Σ_{x>y} (x − x0) P_X(x) ≤ c P₁(y)` for `y ≥ ⌊x0⌋` and
/// `−Σ_{x≤y} (x − x0) P_X(x) ≤ c P₁(y)` for `y < x0`.
///
/// The first condition is also demanded at `y = ⌊x0⌋ < x0`: without it the
/// bound `R ≤ c/α` fails for non-integer `x0` (see the test below).
pub fn verify_tail_certificate(px: &Pmf, p1: &Pmf, alpha: f64, x0: f64, c: f64) -> Result<bool> {
    check_decomposition(px, p1, alpha)?;
    if c.is_nan() || c <= 0.0 {
        return Err(Error::BadParameter(format!(
            "tail constant c must be positive, got {c}"
        )));
    }
    Ok(tail_sides(px, x0).into_iter().all(|(y, up, low)| {
        let rhs = c * p1.get(y) * (1.0 + TAIL_SLACK);
        up.is_none_or(|v| v <= rhs) && low.is_none_or(|v| v <= rhs)
    }))
}

/// Verified certificate for `R ≤ c/α`, or `None` if the conditions fail.
pub fn tail_certificate(
    px: &Pmf,
    p1: &Pmf,
    alpha: f64,
    x0: f64,
    c: f64,
) -> Result<Option<Certificate>> {
    Ok(verify_tail_certificate(px, p1, alpha, x0, c)?
        .then(|| Certificate::new(CertificateKind::TailCondition { x0, c, alpha })))
}

/// Smallest `c` passing the tail conditions at `x0`; `None` if some binding
/// side is positive where `P₁` vanishes.
pub fn minimal_tail_constant(px: &Pmf, p1: &Pmf, x0: f64) -> Option<f64> {
    let mut c: f64 = 0.0;
    for (y, up, low) in tail_sides(px, x0) {
        let side = up.unwrap_or(0.0).max(low.unwrap_or(0.0));
        if side <= 0.0 {
            continue;
        }
        let w = p1.get(y);
        if w == 0.0 {
            return None;
        }
        c = c.max(side / w);
    }
    Some(c.max(f64::MIN_POSITIVE))
}

fn check_decomposition(px: &Pmf, p1: &Pmf, alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::BadParameter(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    let len = px.max_index().max(p1.max_index()) + 1;
    for index in 0..len {
        let value = px.get(index) - alpha * p1.get(index);
        if value < -DECOMPOSITION_SLACK {
            return Err(Error::BadDecomposition { index, value });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_gap::poincare_exact;
    use approx::assert_abs_diff_eq;

    #[test]
    fn kernel_point_values() {
        assert_eq!(klaasen_kernel(3, 3, 3.0), 0.0);
        assert_eq!(klaasen_kernel(3, 1, 1.5), 0.5);
        assert_eq!(klaasen_kernel(0, 1, 2.0), -1.0);
        assert_eq!(klaasen_kernel(4, 7, 2.0), 0.0);
    }

    #[test]
    fn kernel_row_sums_to_offset() {
        for x in 0..=20u64 {
            for k in 0..=40 {
                let x0 = k as f64 * 0.37;
                let s: f64 = (0..=60).map(|y| klaasen_kernel(x, y, x0)).sum();
                assert_abs_diff_eq!(s, x as f64 - x0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn kernel_apply_matches_naive_sum() {
        let h: Vec<f64> = (0..30)
            .map(|i| ((i * 7919) % 23) as f64 / 11.0 - 1.0)
            .collect();
        for x in 0..25u64 {
            for x0 in [0.0, 0.4, 3.0, 3.9, 12.25, 20.0] {
                let naive: f64 = (0..30)
                    .map(|y| klaasen_kernel(x, y, x0) * h[y as usize])
                    .sum();
                assert_abs_diff_eq!(kernel_apply(x0, x, &h), naive, epsilon = 1e-12);
            }
        }
        assert_eq!(kernel_apply(2.5, 4, &[0.0; 5]), 0.0);
    }

    #[test]
    fn kernel_apply_telescopes_differences() {
        let g: Vec<f64> = (0..16).map(|i| (i as f64 * 0.7).sin() * 3.0).collect();
        let dg: Vec<f64> = g.windows(2).map(|w| w[1] - w[0]).collect();
        for x0 in [0.0f64, 1.3, 6.0, 7.75] {
            let f = x0.floor() as usize;
            let g_star = g[f] + dg[f] * (x0 - x0.floor());
            for x in 0..15u64 {
                assert_abs_diff_eq!(
                    kernel_apply(x0, x, &dg),
                    g[x as usize] - g_star,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn poisson_tail_certificate() {
        for lambda in [0.5, 2.0, 3.7] {
            let p = Pmf::poisson(lambda, 1e-12).unwrap();
            assert!(verify_tail_certificate(&p, &p, 1.0, lambda, lambda).unwrap());
            assert!(!verify_tail_certificate(&p, &p, 1.0, lambda, 0.9 * lambda).unwrap());
            let cert = tail_certificate(&p, &p, 1.0, lambda, lambda)
                .unwrap()
                .unwrap();
            assert_eq!(cert.implied_bound(), lambda);
        }
    }

    #[test]
    fn huge_constant_always_passes() {
        let p = Pmf::new(vec![0.3, 0.05, 0.4, 0.25]).unwrap();
        let min_mass = p.probs().iter().copied().fold(f64::INFINITY, f64::min);
        let c = p.max_index() as f64 / min_mass;
        for x0 in [0.0, 1.0, 1.5, 3.0] {
            assert!(verify_tail_certificate(&p, &p, 1.0, x0, c).unwrap());
        }
    }

    #[test]
    fn floor_condition_is_required_for_soundness() {
        // With the upper tail condition imposed only for y ≥ x0, c = x0 would
        // pass here although the constant is close to 1.
        let p = Pmf::new(vec![0.00142988, 0.99857012]).unwrap();
        let x0 = 0.000131;
        let exact = poincare_exact(&p).unwrap().value().unwrap();
        assert!(exact > 0.99);
        assert!(!verify_tail_certificate(&p, &p, 1.0, x0, x0).unwrap());
        let c = minimal_tail_constant(&p, &p, x0).unwrap();
        assert!(exact <= c);
    }

    #[test]
    fn mixture_component_certificate() {
        let p1 = Pmf::poisson(2.0, 1e-12).unwrap();
        let p2 = Pmf::uniform(0, 6).unwrap();
        let alpha = 0.8;
        let px = Pmf::mixture(alpha, &p1, &p2).unwrap();
        let c = minimal_tail_constant(&px, &p1, 2.0).unwrap();
        assert!(verify_tail_certificate(&px, &p1, alpha, 2.0, c).unwrap());
        let exact = poincare_exact(&px).unwrap().value().unwrap();
        assert!(exact <= c / alpha + 1e-8);
        assert!(matches!(
            verify_tail_certificate(&px, &p1, 1.0, 2.0, c),
            Err(Error::BadDecomposition { .. })
        ));
    }
}
