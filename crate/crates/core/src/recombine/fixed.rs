//! Integer representation of the search: entries scaled to `Z_M`.
//!
//! Sums are exact in this mode, so results are bit-for-bit reproducible no
//! matter how the work is split across workers.

use std::collections::BTreeSet;

use super::{check_width, CandidateSet, Pattern, RecombineError, RhoVector, MAX_TABLE_LEN};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedPointConfig {
    modulus: u64,
    window: u64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("modulus {modulus} must exceed 1/eps = {inverse}")]
pub struct ModulusTooSmall {
    pub modulus: u64,
    pub inverse: f64,
}

impl FixedPointConfig {
    pub const DEFAULT_MODULUS: u64 = 1 << 32;

    /// Accepts `y` in `Z_M` when `y < ceil(eps M)` or `M - y < ceil(eps M)`.
    pub fn new(modulus: u64, eps: f64) -> Result<Self, ModulusTooSmall> {
        if !(modulus as f64 > 1.0 / eps) || modulus > 1 << 62 {
            return Err(ModulusTooSmall {
                modulus,
                inverse: 1.0 / eps,
            });
        }
        Ok(FixedPointConfig {
            modulus,
            window: (eps * modulus as f64).ceil() as u64,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn window(&self) -> u64 {
        self.window
    }

    /// `floor(rho_i M)`.
    pub fn quantize(&self, rho: &[f64]) -> Vec<u64> {
        rho.iter()
            .map(|&r| ((r * self.modulus as f64).floor() as u64).min(self.modulus - 1))
            .collect()
    }

    pub fn value(&self, bits: Pattern, rho_hat: &[u64]) -> u64 {
        let mut acc = 0u64;
        for (i, &r) in rho_hat.iter().enumerate() {
            if bits >> i & 1 == 1 {
                acc = (acc + r) % self.modulus;
            }
        }
        acc
    }

    pub fn accept(&self, y: u64) -> bool {
        y < self.window || self.modulus - y < self.window
    }
}

fn subset_values_mod(rho_hat: &[u64], m: u64) -> Vec<u64> {
    let mut v = Vec::with_capacity(1 << rho_hat.len());
    v.push(0);
    for &r in rho_hat {
        let len = v.len();
        for s in 0..len {
            let x = (v[s] + r) % m;
            v.push(x);
        }
    }
    v
}

/// Plain scan over `s < 2^(n-1)` in `Z_M`.
pub fn recombine_fixed_naive(rho: &RhoVector, cfg: &FixedPointConfig) -> Result<CandidateSet, RecombineError> {
    check_width(rho.len(), 30)?;
    let hat = cfg.quantize(rho.values());
    let mut out = CandidateSet::new(rho.len());
    for s in 0..rho.scan_limit() {
        if cfg.accept(cfg.value(s, &hat)) {
            out.patterns.insert(s);
        }
    }
    Ok(out)
}

/// Meet-in-the-middle search in `Z_M` with the streamed half split across
/// `workers` threads. The result is independent of `workers`.
pub fn recombine_fixed(
    rho: &RhoVector,
    cfg: &FixedPointConfig,
    workers: usize,
) -> Result<CandidateSet, RecombineError> {
    let n = rho.len();
    check_width(n, 2 * MAX_TABLE_LEN + 1)?;
    let mut out = CandidateSet::new(n);
    if n == 0 {
        return Ok(out);
    }
    let (ra, rb) = rho.halves();
    let shift = ra.len();
    let m = cfg.modulus;
    let alpha = subset_values_mod(&cfg.quantize(ra), m);
    let mut beta: Vec<(u64, Pattern)> = subset_values_mod(&cfg.quantize(rb), m)
        .into_iter()
        .enumerate()
        .map(|(s, v)| (v, s as Pattern))
        .collect();
    beta.sort_unstable();

    let workers = workers.max(1);
    let chunk = alpha.len().div_ceil(workers);
    let parts: Vec<BTreeSet<Pattern>> = std::thread::scope(|scope| {
        let handles: Vec<_> = alpha
            .chunks(chunk)
            .enumerate()
            .map(|(w, slice)| {
                let beta = &beta;
                scope.spawn(move || {
                    let mut found = BTreeSet::new();
                    for (offset, &x) in slice.iter().enumerate() {
                        let sa = (w * chunk + offset) as Pattern;
                        let target = (m - x) % m;
                        for_each_near(beta, target, cfg.window, m, |sb| {
                            found.insert(sa | sb << shift);
                        });
                    }
                    found
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    for p in parts {
        out.patterns.extend(p);
    }
    Ok(out)
}

/// Patterns in sorted `beta` whose value `y` has `(y - target) mod M` or
/// `(target - y) mod M` below `w`.
fn for_each_near(beta: &[(u64, Pattern)], target: u64, w: u64, m: u64, mut emit: impl FnMut(Pattern)) {
    let mut range = |lo: u64, hi: u64| {
        // half-open [lo, hi)
        let start = beta.partition_point(|e| e.0 < lo);
        for &(v, p) in &beta[start..] {
            if v >= hi {
                break;
            }
            emit(p);
        }
    };
    let lo = target as i128 - w as i128 + 1;
    let hi = target as i128 + w as i128;
    if lo < 0 {
        range(0, hi as u64);
        range((m as i128 + lo) as u64, m);
    } else if hi > m as i128 {
        range(lo as u64, m);
        range(0, (hi - m as i128) as u64);
    } else {
        range(lo as u64, hi as u64);
    }
}
