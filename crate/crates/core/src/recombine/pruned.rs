//! Algorithm B: the half-space scan with provably empty ranges skipped.
//!
//! When `s` has at least `j` trailing zeros, the patterns `s + 1 ..
//! s + 2^j - 1` add subsets of the `j` smallest entries to `s`, so their
//! values lie in `[x, x + sigma_j]` with `x = value(s)`. If that interval
//! stays clear of the accept region, the whole range is skipped.

use super::naive::MAX_NAIVE_WIDTH;
use super::{accept, check_width, value, CandidateSet, Recombination, RecombineError};
use super::{RecombineStats, RhoVector, SCAN_SLACK};

/// Same candidates as [`super::recombine_a`] on a sorted `rho`.
pub fn recombine_b(rho: &RhoVector, eps: f64) -> Result<Recombination, RecombineError> {
    recombine_b_traced(rho, eps, |_, _| {})
}

/// [`recombine_b`] reporting every jump `(from, to)` to `on_jump`.
pub fn recombine_b_traced(
    rho: &RhoVector,
    eps: f64,
    mut on_jump: impl FnMut(u64, u64),
) -> Result<Recombination, RecombineError> {
    let n = rho.len();
    check_width(n, MAX_NAIVE_WIDTH)?;
    if !rho.is_sorted() {
        return Err(RecombineError::Unsorted);
    }
    let mut candidates = CandidateSet::new(n);
    let mut stats = RecombineStats::default();
    let limit = rho.scan_limit();
    let values = rho.values();
    let sigma = rho.sigma();
    let lower = eps + SCAN_SLACK;
    let upper = 1.0 - eps - SCAN_SLACK;

    let mut s = 0u64;
    while s < limit {
        stats.visited += 1;
        let x = value(s, values);
        if accept(x, eps) {
            candidates.patterns.insert(s);
        }
        let c = if s == 0 {
            n - 1
        } else {
            (s.trailing_zeros() as usize).min(n - 1)
        };
        let mut j = 0;
        if x >= lower {
            for (i, &sig) in sigma.iter().enumerate().take(c + 1).skip(1) {
                if x + sig <= upper {
                    j = i;
                } else {
                    break;
                }
            }
        }
        let next = s + (1u64 << j);
        on_jump(s, next);
        s = next;
    }
    Ok(Recombination { candidates, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recombine::recombine_a;
    use rand::{Rng, SeedableRng};

    fn sorted_random(n: usize, seed: u64) -> RhoVector {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let v: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        RhoVector::new(v).unwrap().sorted().0
    }

    #[test]
    fn jumps_over_seven_patterns() {
        // value(s) = 0.2 at s = 0b11000; the three smallest entries sum to 0.7
        let rho = RhoVector::new(vec![0.1, 0.2, 0.4, 0.55, 0.65, 0.9]).unwrap();
        let target = 0b11000u64;
        assert!((value(target, rho.values()) - 0.2).abs() < 1e-9);
        let mut seen = None;
        recombine_b_traced(&rho, 1e-6, |from, to| {
            if from == target {
                seen = Some(to);
            }
        })
        .unwrap();
        assert_eq!(seen, Some(target + 8));
    }

    #[test]
    fn agrees_with_naive_on_small_example() {
        let rho = RhoVector::new(vec![0.3, 0.7, 0.5]).unwrap().sorted().0;
        let a = recombine_a(&rho, 1e-6).unwrap();
        let b = recombine_b(&rho, 1e-6).unwrap();
        assert_eq!(a.candidates, b.candidates);
    }

    #[test]
    fn skipped_patterns_are_never_accepted() {
        for seed in 0..20 {
            let rho = sorted_random(12, seed);
            let eps = 1e-2;
            let mut bad = Vec::new();
            recombine_b_traced(&rho, eps, |from, to| {
                for s in from + 1..to {
                    if accept(value(s, rho.values()), eps) {
                        bad.push(s);
                    }
                }
            })
            .unwrap();
            assert!(bad.is_empty(), "seed {seed}: skipped accepted {bad:?}");
        }
    }

    #[test]
    fn visits_fewer_patterns_than_naive() {
        let rho = sorted_random(24, 3);
        let a = recombine_a(&rho, 1e-6).unwrap();
        let b = recombine_b(&rho, 1e-6).unwrap();
        assert_eq!(a.candidates, b.candidates);
        assert!(b.stats.visited < a.stats.visited);
    }

    #[test]
    fn unsorted_is_rejected() {
        let rho = RhoVector::new(vec![0.5, 0.1]).unwrap();
        assert_eq!(recombine_b(&rho, 1e-6).unwrap_err(), RecombineError::Unsorted);
    }
}
