//! Algorithm C: sorted subset-value lists of both halves matched by a
//! two-pointer sweep.

use super::{
    accept, check_width, frac, subset_values, value_split, window, CandidateSet, Pattern,
    Recombination, RecombineError, RecombineStats, RhoVector, MAX_TABLE_LEN, MAX_WIDTH,
};

/// Subset values of one half, sorted by `(value, pattern)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTable {
    width: usize,
    entries: Vec<(f64, Pattern)>,
}

impl DenseTable {
    /// Wraps entries that are already sorted by `(value, pattern)`.
    pub fn from_sorted(width: usize, entries: Vec<(f64, Pattern)>) -> Option<Self> {
        let sorted = entries
            .windows(2)
            .all(|w| cmp_entry(&w[0], &w[1]) != std::cmp::Ordering::Greater);
        sorted.then_some(DenseTable { width, entries })
    }

    pub(crate) fn from_parts_unchecked(width: usize, entries: Vec<(f64, Pattern)>) -> Self {
        DenseTable { width, entries }
    }

    /// Bit width of the stored patterns.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn entries(&self) -> &[(f64, Pattern)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub(crate) fn cmp_entry(a: &(f64, Pattern), b: &(f64, Pattern)) -> std::cmp::Ordering {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
}

/// All `2^len` subset values of `rho_half` with their patterns, sorted.
pub fn expand(rho_half: &[f64]) -> DenseTable {
    assert!(rho_half.len() <= 32, "expand is limited to 32 entries");
    let mut entries: Vec<(f64, Pattern)> = subset_values(rho_half)
        .into_iter()
        .enumerate()
        .map(|(s, v)| (v, s as Pattern))
        .collect();
    entries.sort_unstable_by(cmp_entry);
    DenseTable {
        width: rho_half.len(),
        entries,
    }
}

/// Every pair whose value sum lies within `w` of 0, 1 or 2, passed to `emit`
/// as `(alpha pattern, beta pattern)`. Returns the pointer moves made.
pub(crate) fn find_within(
    alpha: &[(f64, Pattern)],
    beta: &[(f64, Pattern)],
    w: f64,
    mut emit: impl FnMut(Pattern, Pattern, f64),
) -> u64 {
    let mut steps = 0u64;
    if alpha.is_empty() || beta.is_empty() {
        return steps;
    }
    // sums near 0
    for &(a, pa) in alpha {
        if a >= w {
            break;
        }
        for &(b, pb) in beta {
            if a + b >= w {
                break;
            }
            emit(pa, pb, a + b);
        }
    }
    // sums near 2
    for &(a, pa) in alpha.iter().rev() {
        if a <= 1.0 - w {
            break;
        }
        for &(b, pb) in beta.iter().rev() {
            if a + b <= 2.0 - w {
                break;
            }
            emit(pa, pb, a + b);
        }
    }
    // sums near 1: as alpha decreases, the first beta above 1 - w - alpha
    // only moves right
    let mut j = 0;
    for &(a, pa) in alpha.iter().rev() {
        while j < beta.len() && a + beta[j].0 <= 1.0 - w {
            j += 1;
            steps += 1;
        }
        if j == beta.len() {
            break;
        }
        let mut k = j;
        while k < beta.len() && a + beta[k].0 < 1.0 + w {
            emit(pa, beta[k].1, a + beta[k].0);
            k += 1;
        }
        steps += 1;
    }
    steps
}

/// Pairs `(i, j)` with `accept(frac(alpha_i + beta_j))`, reported as the
/// concatenated pattern `alpha | beta << alpha.width()`.
pub fn find(alpha: &DenseTable, beta: &DenseTable, eps: f64) -> CandidateSet {
    let shift = alpha.width();
    let mut out = CandidateSet::new(alpha.width() + beta.width());
    find_within(&alpha.entries, &beta.entries, eps, |pa, pb, sum| {
        if accept(frac(sum), eps) {
            out.patterns.insert(pa | pb << shift);
        }
    });
    out
}

pub(crate) fn check_split_width(n: usize) -> Result<(), RecombineError> {
    check_width(n, MAX_WIDTH)?;
    check_width(n, 2 * MAX_TABLE_LEN + 1)
}

/// Collects the accepted concatenations of `alpha` and `beta` hits.
pub(crate) fn resolve_pairs(
    rho: &RhoVector,
    eps: f64,
    pairs: impl IntoIterator<Item = (Pattern, Pattern)>,
) -> CandidateSet {
    let (ra, rb) = rho.halves();
    let shift = ra.len();
    let mut out = CandidateSet::new(rho.len());
    for (pa, pb) in pairs {
        if accept(value_split(pa, ra, pb, rb), eps) {
            out.patterns.insert(pa | pb << shift);
        }
    }
    out
}

/// Same candidates as [`super::recombine_a`].
pub fn recombine_c(rho: &RhoVector, eps: f64) -> Result<Recombination, RecombineError> {
    let n = rho.len();
    check_split_width(n)?;
    let mut stats = RecombineStats::default();
    if n == 0 {
        return Ok(Recombination {
            candidates: CandidateSet::new(0),
            stats,
        });
    }
    let (ra, rb) = rho.halves();
    let alpha = expand(ra);
    let beta = expand(rb);
    let mut hits = Vec::new();
    stats.staircase_steps = find_within(&alpha.entries, &beta.entries, window(eps), |pa, pb, _| {
        hits.push((pa, pb))
    });
    Ok(Recombination {
        candidates: resolve_pairs(rho, eps, hits),
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recombine::{recombine_a, value};
    use rand::{Rng, SeedableRng};
    use std::collections::BTreeSet;

    fn random_rho(n: usize, seed: u64) -> RhoVector {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        RhoVector::new((0..n).map(|_| rng.random::<f64>()).collect()).unwrap().sorted().0
    }

    #[test]
    fn expand_small() {
        let t = expand(&[0.6]);
        assert_eq!(t.entries(), &[(0.0, 0), (0.6, 1)]);
        let t = expand(&[0.6, 0.7]);
        let pats: Vec<_> = t.entries().iter().map(|e| e.1).collect();
        assert_eq!(pats, vec![0b00, 0b11, 0b01, 0b10]);
        let vals: Vec<_> = t.entries().iter().map(|e| e.0).collect();
        for (v, want) in vals.iter().zip([0.0, 0.3, 0.6, 0.7]) {
            assert!((v - want).abs() < 1e-12);
        }
    }

    #[test]
    fn expand_self_check() {
        let rho = random_rho(16, 9);
        let t = expand(rho.values());
        assert_eq!(t.len(), 1 << 16);
        assert!(t.entries().windows(2).all(|w| w[0].0 <= w[1].0));
        for &(v, s) in t.entries() {
            assert_eq!(v, value(s, rho.values()));
        }
    }

    #[test]
    fn find_examples() {
        let z = DenseTable::from_sorted(1, vec![(0.0, 0)]).unwrap();
        assert_eq!(find(&z, &z, 1e-6).patterns, BTreeSet::from([0]));

        let a = DenseTable::from_sorted(1, vec![(0.2, 0), (0.9, 1)]).unwrap();
        let b = DenseTable::from_sorted(1, vec![(0.1, 0), (0.8, 1)]).unwrap();
        let found = find(&a, &b, 1e-6).patterns;
        assert_eq!(found, BTreeSet::from([0 | 1 << 1, 1 | 0 << 1]));
        assert!(DenseTable::from_sorted(1, vec![(0.5, 0), (0.1, 1)]).is_none());
    }

    #[test]
    fn find_handles_clusters_of_equal_values() {
        // every alpha/beta pair sums to exactly 1
        let a = DenseTable::from_sorted(2, vec![(0.5, 0), (0.5, 1), (0.5, 2), (0.5, 3)]).unwrap();
        assert_eq!(find(&a, &a, 1e-6).len(), 16);
    }

    #[test]
    fn small_cases_match_naive() {
        for rho in [vec![0.3, 0.5, 0.7], vec![0.5, 0.5], vec![0.25], vec![]] {
            let rho = RhoVector::new(rho).unwrap();
            let a = recombine_a(&rho, 1e-6).unwrap();
            let c = recombine_c(&rho, 1e-6).unwrap();
            assert_eq!(a.candidates, c.candidates, "{rho:?}");
        }
        // 0b11 sums to 1; its half-space representative is the empty pattern
        let half = RhoVector::new(vec![0.5, 0.5]).unwrap();
        assert!(accept(value(0b11, half.values()), 1e-6));
        let c = recombine_c(&half, 1e-6).unwrap().candidates;
        assert_eq!(c.canonical().patterns, BTreeSet::from([0b11 & !0b11]));
    }

    #[test]
    fn random_matches_naive() {
        for seed in 0..5 {
            let rho = random_rho(20, seed);
            let eps = 1e-4;
            assert_eq!(
                recombine_a(&rho, eps).unwrap().candidates,
                recombine_c(&rho, eps).unwrap().candidates
            );
        }
    }
}
