//! Splat sort: an oversized ordered table filled by carry-forward insertion,
//! and the queries run against it (Algorithms D and E).
//!
//! A value `x` has home slot `floor(k x)` in a table of `k` cells. Insertion
//! walks right from the home slot, swapping whenever the occupant is larger,
//! and wraps from the last cell to the first. Entries are ordered by
//! `(value, pattern)`, a strict total order, so the final layout does not
//! depend on insertion order.
//!
//! Every stored entry `y` at position `p` satisfies: each cell on the
//! circular path from `home(y)` up to `p` is occupied by an entry smaller
//! than `y`. Queries rely on that to stop early.

use std::ops::Range;

use super::expand::{check_split_width, cmp_entry, find_within, resolve_pairs, DenseTable};
use super::{
    accept, subset_sums, subset_values, value_split, window, CandidateSet, Pattern, Recombination,
    RecombineError, RecombineStats, RhoVector,
};

/// Marks an unoccupied cell.
pub(crate) const EMPTY: Pattern = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("no empty cell found in a full probe cycle")]
pub struct TableFull;

/// Read access shared by the serial and the concurrent table.
pub trait ProbeTable {
    fn capacity(&self) -> usize;
    /// `None` for an empty cell.
    fn cell(&self, i: usize) -> Option<(f64, Pattern)>;
}

#[inline]
pub(crate) fn home(x: f64, k: usize) -> usize {
    ((x * k as f64) as usize).min(k - 1)
}

#[inline]
pub(crate) fn next_slot(i: usize, k: usize) -> usize {
    if i + 1 == k {
        0
    } else {
        i + 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseTable {
    width: usize,
    cells: Vec<(f64, Pattern)>,
    stored: usize,
    inserts: u64,
    probes: u64,
}

impl SparseTable {
    /// An empty table of `capacity` cells for patterns of `width` bits.
    pub fn with_capacity(width: usize, capacity: usize) -> Self {
        assert!(capacity > 0, "table capacity must be positive");
        SparseTable {
            width,
            cells: vec![(0.0, EMPTY); capacity],
            stored: 0,
            inserts: 0,
            probes: 0,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of occupied cells.
    pub fn stored(&self) -> usize {
        self.stored
    }

    pub fn inserts(&self) -> u64 {
        self.inserts
    }

    /// Total cells examined by all insertions so far.
    pub fn insert_probes(&self) -> u64 {
        self.probes
    }

    pub fn probes_mean(&self) -> f64 {
        if self.inserts == 0 {
            0.0
        } else {
            self.probes as f64 / self.inserts as f64
        }
    }

    /// Occupied cells in index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, f64, Pattern)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.1 != EMPTY)
            .map(|(i, c)| (i, c.0, c.1))
    }

    /// Removes the empty cells, yielding the dense sorted list.
    pub fn compact(&self) -> DenseTable {
        let k = self.cells.len();
        let mut main = Vec::with_capacity(self.stored);
        let mut wrapped = Vec::new();
        for (i, v, p) in self.entries() {
            if i < home(v, k) {
                wrapped.push((v, p));
            } else {
                main.push((v, p));
            }
        }
        main.extend(wrapped);
        if !main
            .windows(2)
            .all(|w| cmp_entry(&w[0], &w[1]) == std::cmp::Ordering::Less)
        {
            main.sort_unstable_by(cmp_entry);
        }
        DenseTable::from_parts_unchecked(self.width, main)
    }
}

impl ProbeTable for SparseTable {
    fn capacity(&self) -> usize {
        self.cells.len()
    }

    #[inline]
    fn cell(&self, i: usize) -> Option<(f64, Pattern)> {
        let c = self.cells[i];
        (c.1 != EMPTY).then_some(c)
    }
}

/// Places `(x, pattern)` by carry-forward insertion. Returns the number of
/// cells examined.
pub fn insert(table: &mut SparseTable, x: f64, pattern: Pattern) -> Result<u64, TableFull> {
    debug_assert!((0.0..1.0).contains(&x));
    debug_assert_ne!(pattern, EMPTY);
    let k = table.cells.len();
    let mut i = home(x, k);
    let mut carry = (x, pattern);
    for probes in 1..=k as u64 {
        let cell = &mut table.cells[i];
        if cell.1 == EMPTY {
            *cell = carry;
            table.stored += 1;
            table.inserts += 1;
            table.probes += probes;
            return Ok(probes);
        }
        if cmp_entry(cell, &carry) == std::cmp::Ordering::Greater {
            std::mem::swap(cell, &mut carry);
        }
        i = next_slot(i, k);
    }
    Err(TableFull)
}

/// All `2^len` subset values of `rho_half` in a table of `2 * 2^len` cells.
pub fn splat(rho_half: &[f64]) -> SparseTable {
    assert!(rho_half.len() <= 31, "splat is limited to 31 entries");
    let values = subset_values(rho_half);
    let mut table = SparseTable::with_capacity(rho_half.len(), 2 * values.len());
    for (s, &x) in values.iter().enumerate() {
        insert(&mut table, x, s as Pattern).expect("a half-full table always has room");
    }
    table
}

/// Visits every stored entry whose value lies in the closed linear window
/// `[lo, hi]`, `0 <= lo <= hi < 1`. Returns the cells examined.
fn scan_linear<T: ProbeTable + ?Sized>(
    table: &T,
    lo: f64,
    hi: f64,
    emit: &mut impl FnMut(f64, Pattern),
) -> u64 {
    let k = table.capacity();
    let start = home(lo, k);
    let span = home(hi, k) - start;
    let mut i = start;
    let mut probes = 0;
    for steps in 0..k {
        probes += 1;
        match table.cell(i) {
            None => {
                if steps >= span {
                    break;
                }
            }
            Some((v, p)) => {
                if v >= lo && v <= hi {
                    emit(v, p);
                } else if v > hi && steps >= span {
                    break;
                }
            }
        }
        i = next_slot(i, k);
    }
    probes
}

const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// Visits every stored entry within circular distance `w` of `t`
/// (`0 <= t <= 1`, `w < 0.5`). Returns the cells examined.
pub fn query_all<T: ProbeTable + ?Sized>(
    table: &T,
    t: f64,
    w: f64,
    mut emit: impl FnMut(f64, Pattern),
) -> u64 {
    let lo = t - w;
    let hi = t + w;
    let mut probes = 0;
    if lo < 0.0 {
        probes += scan_linear(table, 0.0, hi.min(BELOW_ONE), &mut emit);
        probes += scan_linear(table, (1.0 + lo).min(BELOW_ONE), BELOW_ONE, &mut emit);
    } else if hi >= 1.0 {
        probes += scan_linear(table, lo.min(BELOW_ONE), BELOW_ONE, &mut emit);
        probes += scan_linear(table, 0.0, (hi - 1.0).min(BELOW_ONE), &mut emit);
    } else {
        probes += scan_linear(table, lo, hi, &mut emit);
    }
    probes
}

/// A stored pattern whose value `y` has circular distance `< eps` from `x`.
pub fn query<T: ProbeTable + ?Sized>(x: f64, table: &T, eps: f64) -> Option<Pattern> {
    let mut found = None;
    query_all(table, x, eps, |y, p| {
        let d = (x - y).abs();
        if found.is_none() && (d < eps || 1.0 - d < eps) {
            found = Some(p);
        }
    });
    found
}

/// Same candidates as [`super::recombine_a`], via two compacted splat tables
/// and the two-pointer sweep.
pub fn recombine_d(rho: &RhoVector, eps: f64) -> Result<Recombination, RecombineError> {
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
    let ta = splat(ra);
    let tb = splat(rb);
    stats.inserts = ta.inserts() + tb.inserts();
    stats.insert_probes = ta.insert_probes() + tb.insert_probes();
    let (alpha, beta) = (ta.compact(), tb.compact());
    drop((ta, tb));
    let mut hits = Vec::new();
    stats.staircase_steps = find_within(alpha.entries(), beta.entries(), window(eps), |pa, pb, _| {
        hits.push((pa, pb))
    });
    Ok(Recombination {
        candidates: resolve_pairs(rho, eps, hits),
        stats,
    })
}

/// Approximate subset values of a half, computed from two smaller tables.
pub(crate) struct Stream {
    lo: Vec<f64>,
    hi: Vec<f64>,
    lo_bits: usize,
}

impl Stream {
    pub(crate) fn new(rho_half: &[f64]) -> Self {
        let lo_bits = rho_half.len().div_ceil(2);
        Stream {
            lo: subset_sums(&rho_half[..lo_bits]),
            hi: subset_sums(&rho_half[lo_bits..]),
            lo_bits,
        }
    }

    pub(crate) fn count(&self) -> u64 {
        (self.lo.len() * self.hi.len()) as u64
    }

    #[inline]
    fn approx(&self, s: Pattern) -> f64 {
        let mask = (1u64 << self.lo_bits) - 1;
        let y = self.lo[(s & mask) as usize] + self.hi[(s >> self.lo_bits) as usize];
        y - y.floor()
    }
}

/// Queries `table` (built from `rb`) for every streamed pattern in `range`
/// and adds accepted concatenations to `out`.
pub(crate) fn sweep_range<T: ProbeTable + ?Sized>(
    ra: &[f64],
    rb: &[f64],
    stream: &Stream,
    table: &T,
    eps: f64,
    range: Range<u64>,
    out: &mut Vec<Pattern>,
) -> RecombineStats {
    let w = window(eps);
    let shift = ra.len();
    let mut stats = RecombineStats::default();
    for sa in range {
        stats.visited += 1;
        let x = stream.approx(sa);
        stats.query_probes += query_all(table, 1.0 - x, w, |_, sb| {
            if accept(value_split(sa, ra, sb, rb), eps) {
                out.push(sa | sb << shift);
            }
        });
    }
    stats
}

/// Same candidates as [`super::recombine_a`]: one splat table for `rho_b`,
/// queried once per pattern of `rho_a`.
pub fn recombine_e(rho: &RhoVector, eps: f64) -> Result<Recombination, RecombineError> {
    let n = rho.len();
    check_split_width(n)?;
    let mut stats = RecombineStats::default();
    let mut candidates = CandidateSet::new(n);
    if n == 0 {
        return Ok(Recombination { candidates, stats });
    }
    let (ra, rb) = rho.halves();
    let table = splat(rb);
    stats.inserts = table.inserts();
    stats.insert_probes = table.insert_probes();
    let stream = Stream::new(ra);
    let mut hits = Vec::new();
    let sweep = sweep_range(ra, rb, &stream, &table, eps, 0..stream.count(), &mut hits);
    stats.merge(&sweep);
    // sorted input makes the set build append-only
    hits.sort_unstable();
    candidates.patterns.extend(hits);
    Ok(Recombination { candidates, stats })
}
