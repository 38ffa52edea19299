//! Cost estimators for the pruned scan and for splat insertion.

/// Expected ratio of patterns visited by the plain scan to those visited by
/// the pruned scan, for `n` uniform sorted entries. Returns
/// `(iterative, closed_form)`: the jump-count recursion with
/// `E(sigma_k) = k^2 / 2n`, and `2^l / l` with `l = floor(sqrt(2n))`.
pub fn predict_beta(n: usize) -> (f64, f64) {
    assert!(n >= 2, "predict_beta needs n >= 2");
    let l = (2 * n).isqrt();
    let closed = 2f64.powi(l as i32) / l as f64;

    let mut remaining = 2f64.powi(n as i32 - 1);
    let mut jumps = 0.0;
    let mut covered = 0.0;
    for i in (0..=l).rev() {
        let sigma = (i * i) as f64 / (2 * n) as f64;
        let width = 2f64.powi(i as i32);
        let m = (remaining * (1.0 - sigma) / width).floor().max(0.0);
        remaining -= m * width;
        jumps += m;
        covered += m * width;
    }
    (covered / jumps, closed)
}

/// `(c ln(c / (c - 1)), c / (c - 1))`: lower and upper bounds on the mean
/// probes per insertion into a table `c` times larger than its content.
pub fn splat_cost_bounds(c: f64) -> (f64, f64) {
    assert!(c > 1.0, "oversize factor must exceed 1");
    let ratio = c / (c - 1.0);
    (c * ratio.ln(), ratio)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        assert_eq!(predict_beta(32).1, 32.0);
        assert_eq!(predict_beta(2).1, 2.0);
        assert!((predict_beta(50).1 - 102.4).abs() < 1e-12);
    }

    #[test]
    fn closed_form_tracks_recursion() {
        for n in 8..=64 {
            let (it, closed) = predict_beta(n);
            assert!(closed / it <= 2.0 && it / closed <= 2.0, "n = {n}: {it} vs {closed}");
        }
    }

    #[test]
    fn cost_bounds() {
        let (lo, hi) = splat_cost_bounds(2.0);
        assert!((lo - 1.386294).abs() < 1e-6);
        assert_eq!(hi, 2.0);
        let (lo, hi) = splat_cost_bounds(1.5);
        assert!((lo - 1.647918).abs() < 1e-6);
        assert!((hi - 3.0).abs() < 1e-12);
        let (lo, hi) = splat_cost_bounds(1e9);
        assert!((lo - 1.0).abs() < 1e-6 && (hi - 1.0).abs() < 1e-6);
    }
}
