//! Subset-sum search over the fractional-part vector `rho`.
//!
//! A pattern `s` selects entries of `rho`; its value is `frac(sum)` over the
//! selected entries and it is accepted when the value lies within `eps` of an
//! integer. Every backend reports exactly the accepted patterns with the top
//! bit clear, which is one representative from each `{s, !s}` pair. The
//! predicate used for the final decision is [`value`] followed by [`accept`]
//! in every backend, so candidate sets agree bit for bit.

mod estimate;
mod expand;
#[cfg(feature = "fixed-point")]
pub mod fixed;
mod naive;
mod pruned;
mod splat;

pub use estimate::{predict_beta, splat_cost_bounds};
pub use expand::{expand, find, recombine_c, DenseTable};
pub use naive::recombine_a;
pub use pruned::{recombine_b, recombine_b_traced};
pub use splat::{
    insert, query, query_all, recombine_d, recombine_e, splat, ProbeTable, SparseTable, TableFull,
};
pub(crate) use expand::check_split_width;
pub(crate) use splat::{home, next_slot, sweep_range, Stream, EMPTY};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// An `n`-bit subset selector; bit `i` selects `rho[i]`.
pub type Pattern = u64;

/// Widest pattern supported.
pub const MAX_WIDTH: usize = 64;

/// Widest half a value table is built for (`2^31` slots).
pub const MAX_TABLE_LEN: usize = 30;

/// Extra window width used by scans before the exact predicate decides.
pub(crate) const SCAN_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RecombineError {
    #[error("pattern width {n} exceeds the limit {max} for this backend")]
    WidthExceeded { n: usize, max: usize },
    #[error("rho must be sorted non-decreasing for this backend")]
    Unsorted,
    #[error("rho entry {0} is outside [0, 1)")]
    OutOfRange(f64),
}

/// `rho` with its cumulative sums.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoVector {
    values: Vec<f64>,
    sigma: Vec<f64>,
}

impl RhoVector {
    pub fn new(values: Vec<f64>) -> Result<Self, RecombineError> {
        if values.len() > MAX_WIDTH {
            return Err(RecombineError::WidthExceeded {
                n: values.len(),
                max: MAX_WIDTH,
            });
        }
        if let Some(&bad) = values.iter().find(|v| !(0.0..1.0).contains(*v)) {
            return Err(RecombineError::OutOfRange(bad));
        }
        let mut sigma = Vec::with_capacity(values.len() + 1);
        sigma.push(0.0);
        let mut acc = 0.0;
        for v in &values {
            acc += v;
            sigma.push(acc);
        }
        Ok(RhoVector { values, sigma })
    }

    /// Sorted copy together with `perm[i]` = original index of entry `i`.
    pub fn sorted(&self) -> (RhoVector, Vec<usize>) {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| self.values[a].total_cmp(&self.values[b]));
        let values = idx.iter().map(|&i| self.values[i]).collect();
        (RhoVector::new(values).expect("subset of a valid vector"), idx)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `sigma()[i]` is the sum of the first `i` entries; `sigma()[0] = 0`.
    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_sorted(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    /// `(rho_a, rho_b)` where `rho_a` holds the first `⌊n/2⌋` entries and
    /// `rho_b` the rest except the top entry, which the half-space scan
    /// never selects.
    pub fn halves(&self) -> (&[f64], &[f64]) {
        let n = self.len();
        let na = n / 2;
        (&self.values[..na], &self.values[na..n.saturating_sub(1).max(na)])
    }

    /// Patterns `s < scan_limit()` are scanned.
    pub fn scan_limit(&self) -> u64 {
        match self.len() {
            0 => 0,
            n => 1u64 << (n - 1),
        }
    }
}

/// `frac` of the sum of the selected entries, accumulated in increasing
/// index order.
pub fn value(bits: Pattern, rho: &[f64]) -> f64 {
    frac(raw_sum(bits, rho, 0.0))
}

#[inline]
pub(crate) fn raw_sum(mut bits: Pattern, rho: &[f64], mut acc: f64) -> f64 {
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        acc += rho[i];
        bits &= bits - 1;
    }
    acc
}

/// Value of the concatenated pattern `low | high << low_rho.len()`.
#[inline]
pub(crate) fn value_split(low: Pattern, low_rho: &[f64], high: Pattern, high_rho: &[f64]) -> f64 {
    frac(raw_sum(high, high_rho, raw_sum(low, low_rho, 0.0)))
}

#[inline]
pub(crate) fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    if f < 1.0 {
        f
    } else {
        0.0
    }
}

/// Whether `frac(y)` lies within `w` of 0 or 1.
#[inline]
pub(crate) fn check_frac_near(y: f64, w: f64) -> bool {
    let f = y - y.floor();
    f < w || f > 1.0 - w
}

/// `y < eps` or `1 - y < eps`.
#[inline]
pub fn accept(y: f64, eps: f64) -> bool {
    y < eps || 1.0 - y < eps
}

/// Raw subset sums of `rho` indexed by pattern. Built by doubling, so entry
/// `s` accumulates the selected entries in increasing index order and
/// matches [`value`] exactly after `frac`.
pub(crate) fn subset_sums(rho: &[f64]) -> Vec<f64> {
    let mut sums = Vec::with_capacity(1usize << rho.len());
    sums.push(0.0);
    for &r in rho {
        let len = sums.len();
        for s in 0..len {
            let v = sums[s] + r;
            sums.push(v);
        }
    }
    sums
}

/// `frac` of every subset sum, indexed by pattern.
pub(crate) fn subset_values(rho: &[f64]) -> Vec<f64> {
    let mut v = subset_sums(rho);
    for x in v.iter_mut() {
        *x = frac(*x);
    }
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CandidateSet {
    pub width: usize,
    pub patterns: BTreeSet<Pattern>,
}

impl CandidateSet {
    pub fn new(width: usize) -> Self {
        CandidateSet {
            width,
            patterns: BTreeSet::new(),
        }
    }

    pub fn full_mask(&self) -> Pattern {
        mask(self.width)
    }

    pub fn complement(&self, s: Pattern) -> Pattern {
        !s & self.full_mask()
    }

    /// Each pattern replaced by `min(s, !s)`.
    pub fn canonical(&self) -> CandidateSet {
        CandidateSet {
            width: self.width,
            patterns: self
                .patterns
                .iter()
                .map(|&s| s.min(self.complement(s)))
                .collect(),
        }
    }

    /// Without the empty and the full pattern.
    pub fn nontrivial(&self) -> CandidateSet {
        let full = self.full_mask();
        CandidateSet {
            width: self.width,
            patterns: self
                .patterns
                .iter()
                .copied()
                .filter(|&s| s != 0 && s != full)
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn contains(&self, s: Pattern) -> bool {
        self.patterns.contains(&s)
    }
}

pub(crate) fn mask(width: usize) -> Pattern {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// Instrumentation counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RecombineStats {
    /// Patterns whose value was examined (A, B) or patterns streamed (E).
    pub visited: u64,
    /// Table insertions performed.
    pub inserts: u64,
    /// Cells examined by those insertions.
    pub insert_probes: u64,
    /// Cells examined by queries.
    pub query_probes: u64,
    /// Pointer moves in the two-list sweep.
    pub staircase_steps: u64,
}

impl RecombineStats {
    pub fn probes_mean(&self) -> f64 {
        if self.inserts == 0 {
            0.0
        } else {
            self.insert_probes as f64 / self.inserts as f64
        }
    }

    pub fn merge(&mut self, other: &RecombineStats) {
        self.visited += other.visited;
        self.inserts += other.inserts;
        self.insert_probes += other.insert_probes;
        self.query_probes += other.query_probes;
        self.staircase_steps += other.staircase_steps;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recombination {
    pub candidates: CandidateSet,
    pub stats: RecombineStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Backend {
    A,
    B,
    C,
    D,
    #[default]
    E,
}

impl Backend {
    pub const ALL: [Backend; 5] = [Backend::A, Backend::B, Backend::C, Backend::D, Backend::E];

    /// Largest `n` the backend accepts.
    pub fn max_width(self) -> usize {
        match self {
            Backend::A | Backend::B => naive::MAX_NAIVE_WIDTH,
            Backend::C | Backend::D | Backend::E => MAX_WIDTH.min(2 * MAX_TABLE_LEN + 1),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Backend::A => "a",
            Backend::B => "b",
            Backend::C => "c",
            Backend::D => "d",
            Backend::E => "e",
        };
        f.write_str(c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown backend `{0}`, expected one of a, b, c, d, e")]
pub struct UnknownBackend(pub String);

impl FromStr for Backend {
    type Err = UnknownBackend;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Backend::A),
            "b" => Ok(Backend::B),
            "c" => Ok(Backend::C),
            "d" => Ok(Backend::D),
            "e" => Ok(Backend::E),
            _ => Err(UnknownBackend(s.to_string())),
        }
    }
}

/// Runs `backend` on a sorted `rho`.
pub fn recombine(backend: Backend, rho: &RhoVector, eps: f64) -> Result<Recombination, RecombineError> {
    match backend {
        Backend::A => recombine_a(rho, eps),
        Backend::B => recombine_b(rho, eps),
        Backend::C => recombine_c(rho, eps),
        Backend::D => recombine_d(rho, eps),
        Backend::E => recombine_e(rho, eps),
    }
}

pub(crate) fn check_width(n: usize, max: usize) -> Result<(), RecombineError> {
    if n > max {
        Err(RecombineError::WidthExceeded { n, max })
    } else {
        Ok(())
    }
}

/// Half-width of the scan window around the accept boundaries.
pub(crate) fn window(eps: f64) -> f64 {
    eps + SCAN_SLACK
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_examples() {
        assert_eq!(value(0, &[0.3, 0.9]), 0.0);
        assert!((value(0b11, &[0.3, 0.9]) - 0.2).abs() < 1e-15);
        assert_eq!(value(0b101, &[0.25, 0.5, 0.75]), 0.0);
    }

    #[test]
    fn accept_examples() {
        assert!(accept(0.0, 1e-6));
        assert!(!accept(0.5, 1e-6));
        assert!(accept(1.0 - 0.5e-6, 1e-6));
        assert!(!accept(1e-6, 1e-6));
    }

    #[test]
    fn subset_sums_match_value_bit_for_bit() {
        let rho = [0.123, 0.456, 0.789, 0.314, 0.271];
        let v = subset_values(&rho);
        for (s, &x) in v.iter().enumerate() {
            assert_eq!(x.to_bits(), value(s as u64, &rho).to_bits());
        }
        assert_eq!(
            value_split(0b11, &rho[..2], 0b101, &rho[2..]).to_bits(),
            value(0b10111, &rho).to_bits()
        );
    }

    #[test]
    fn rho_vector_checks() {
        assert!(RhoVector::new(vec![0.2, 1.0]).is_err());
        assert!(RhoVector::new(vec![-0.1]).is_err());
        assert!(RhoVector::new(vec![0.5; 65]).is_err());
        let r = RhoVector::new(vec![0.5, 0.25, 0.75]).unwrap();
        assert!(!r.is_sorted());
        let (s, perm) = r.sorted();
        assert_eq!(s.values(), &[0.25, 0.5, 0.75]);
        assert_eq!(perm, vec![1, 0, 2]);
        assert_eq!(s.sigma(), &[0.0, 0.25, 0.75, 1.5]);
        assert_eq!(s.scan_limit(), 4);
    }

    #[test]
    fn halves_drop_the_top_entry() {
        let r = RhoVector::new(vec![0.1, 0.2, 0.3, 0.4, 0.5]).unwrap();
        let (a, b) = r.halves();
        assert_eq!(a, &[0.1, 0.2]);
        assert_eq!(b, &[0.3, 0.4]);
        let r = RhoVector::new(vec![0.1]).unwrap();
        let (a, b) = r.halves();
        assert!(a.is_empty() && b.is_empty());
    }

    #[test]
    fn canonical_and_nontrivial() {
        let mut c = CandidateSet::new(3);
        c.patterns.extend([0b000, 0b111, 0b110, 0b001]);
        assert_eq!(c.canonical().patterns, BTreeSet::from([0b000, 0b001]));
        assert_eq!(c.nontrivial().patterns, BTreeSet::from([0b110, 0b001]));
    }

    #[test]
    fn backend_parsing() {
        for b in Backend::ALL {
            assert_eq!(b.to_string().parse::<Backend>().unwrap(), b);
        }
        assert_eq!("E".parse::<Backend>().unwrap(), Backend::E);
        assert!("f".parse::<Backend>().is_err());
    }
}
