//! Algorithm A: examine every pattern in the half space.

use super::{accept, check_frac_near, check_width, subset_sums, value, CandidateSet, Recombination};
use super::{RecombineError, RecombineStats, RhoVector, SCAN_SLACK};

pub const MAX_NAIVE_WIDTH: usize = 30;

/// All `s < 2^(n-1)` with `accept(value(s, rho))`. Serves as the reference
/// for the other backends.
pub fn recombine_a(rho: &RhoVector, eps: f64) -> Result<Recombination, RecombineError> {
    let n = rho.len();
    check_width(n, MAX_NAIVE_WIDTH)?;
    let mut candidates = CandidateSet::new(n);
    if n == 0 {
        return Ok(Recombination {
            candidates,
            stats: RecombineStats::default(),
        });
    }
    let values = rho.values();
    let m = n - 1;
    let lo_bits = m.div_ceil(2);
    let lo = subset_sums(&values[..lo_bits]);
    let hi = subset_sums(&values[lo_bits..m]);
    // Sum of two tables differs from the in-order sum by rounding only, so a
    // slack window finds every pattern the exact predicate could accept.
    let w = eps + SCAN_SLACK;
    for (h, &base) in hi.iter().enumerate() {
        let high = (h as u64) << lo_bits;
        for (l, &part) in lo.iter().enumerate() {
            let y = base + part;
            if check_frac_near(y, w) {
                let s = high | l as u64;
                if accept(value(s, values), eps) {
                    candidates.patterns.insert(s);
                }
            }
        }
    }
    Ok(Recombination {
        candidates,
        stats: RecombineStats {
            visited: rho.scan_limit(),
            ..RecombineStats::default()
        },
    })
}
