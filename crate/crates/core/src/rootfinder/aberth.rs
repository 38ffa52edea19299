//! Aberth-Ehrlich simultaneous iteration in `f64`.

use num_complex::Complex;

type C64 = Complex<f64>;

/// `p(z) / p'(z)` for a monic `coeffs` (low-to-high). For `|z| > 1` the
/// reversed polynomial is evaluated at `1/z` to stay clear of overflow.
pub(crate) fn newton_ratio(coeffs: &[f64], z: C64) -> C64 {
    let d = coeffs.len() - 1;
    if z.norm() <= 1.0 {
        let mut value = C64::new(0.0, 0.0);
        let mut deriv = C64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            deriv = deriv * z + value;
            value = value * z + c;
        }
        value / deriv
    } else {
        // p(z) = z^d P(w), p'(z) = z^(d-1) (d P(w) - w P'(w)), w = 1/z
        let w = z.inv();
        let mut value = C64::new(0.0, 0.0);
        let mut deriv = C64::new(0.0, 0.0);
        for &c in coeffs.iter() {
            deriv = deriv * w + value;
            value = value * w + c;
        }
        z * value / (value * d as f64 - w * deriv)
    }
}

pub(crate) struct AberthOutcome {
    pub roots: Vec<C64>,
    pub converged: bool,
}

/// Runs the iteration from a circle of the Cauchy radius rotated by
/// `phase`. `coeffs` must be monic.
pub(crate) fn aberth(coeffs: &[f64], max_iterations: usize, phase: f64) -> AberthOutcome {
    let d = coeffs.len() - 1;
    let radius = 1.0
        + coeffs[..d]
            .iter()
            .fold(0.0f64, |acc, c| acc.max(c.abs()));
    let mut roots: Vec<C64> = (0..d)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / d as f64 + phase;
            C64::from_polar(radius, angle)
        })
        .collect();
    let mut done = vec![false; d];
    let mut converged = false;
    for _ in 0..max_iterations {
        let mut all_done = true;
        for k in 0..d {
            if done[k] {
                continue;
            }
            let zk = roots[k];
            let ratio = newton_ratio(coeffs, zk);
            if !ratio.is_finite() {
                // stationary point of p; nudge off it
                roots[k] = zk + C64::new(1e-8, 1e-8) * zk.norm().max(1.0);
                all_done = false;
                continue;
            }
            let repulsion: C64 = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &zj)| (zk - zj).inv())
                .sum();
            let step = ratio / (C64::new(1.0, 0.0) - ratio * repulsion);
            let step = if step.is_finite() { step } else { ratio };
            roots[k] = zk - step;
            if step.norm() <= 4.0 * f64::EPSILON * roots[k].norm().max(f64::MIN_POSITIVE) {
                done[k] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            converged = true;
            break;
        }
    }
    AberthOutcome { roots, converged }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cube_roots_of_unity_shift() {
        // x^3 - 1
        let out = aberth(&[-1.0, 0.0, 0.0, 1.0], 500, 0.4);
        assert!(out.converged);
        for z in &out.roots {
            assert!((z.powu(3) - 1.0).norm() < 1e-12, "{z}");
        }
    }

    #[test]
    fn reversed_ratio_matches_direct() {
        let coeffs = [2.0, -3.0, 0.5, 1.0];
        let z = C64::new(3.0, -2.0);
        let direct = {
            let p = coeffs.iter().rev().fold(C64::new(0.0, 0.0), |a, &c| a * z + c);
            let dp = C64::new(-3.0, 0.0) + z * 1.0 + z * z * 3.0;
            p / dp
        };
        assert!((newton_ratio(&coeffs, z) - direct).norm() < 1e-12);
    }
}
