//! Multi-worker Algorithm E: a shared splat table filled concurrently, then
//! swept by workers streaming disjoint pattern ranges.
//!
//! A slot holds a pattern index (or [`EMPTY`]); the value of a pattern is a
//! pure function of it, read from an immutable array. Swapping the slot word
//! therefore moves the whole `(value, pattern)` entry in one indivisible
//! step. Insertion uses only `swap` on slots: the carried entry is exchanged
//! with the occupant, and the walk advances only when the occupant turned
//! out larger, otherwise the smaller occupant is put back on the next swap.
//! The join of the worker threads is the publication point; after it the
//! table is only read.

use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::recombine::{
    home, next_slot, subset_values, sweep_range, CandidateSet, Pattern,
    ProbeTable, Recombination, RecombineError, RecombineStats, RhoVector, Stream, TableFull, EMPTY,
};

/// Half-open range of patterns handled by one worker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkPartition {
    pub worker_id: usize,
    pub pattern_range: Range<u64>,
}

/// Splits `0..total` into `workers` contiguous ranges of near-equal size.
pub fn partition(total: u64, workers: usize) -> Vec<WorkPartition> {
    let workers = workers.max(1) as u64;
    let base = total / workers;
    let extra = total % workers;
    let mut start = 0;
    (0..workers)
        .map(|w| {
            let len = base + u64::from(w < extra);
            let range = start..start + len;
            start += len;
            WorkPartition {
                worker_id: w as usize,
                pattern_range: range,
            }
        })
        .collect()
}

/// How workers interleave while building; [`Schedule::RandomYield`] injects
/// scheduler yields between slot swaps to widen the space of interleavings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    #[default]
    Free,
    RandomYield { seed: u64 },
}

#[derive(Debug)]
pub struct SharedValueTable {
    rho: Vec<f64>,
    values: Vec<f64>,
    cells: Vec<AtomicU64>,
    worker_swaps: Vec<u64>,
}

impl SharedValueTable {
    /// An empty table of `2 * 2^len` slots for the subsets of `rho_half`.
    pub fn new(rho_half: &[f64]) -> Self {
        assert!(rho_half.len() <= 31, "table half is limited to 31 entries");
        let values = subset_values(rho_half);
        let cells = (0..2 * values.len()).map(|_| AtomicU64::new(EMPTY)).collect();
        SharedValueTable {
            rho: rho_half.to_vec(),
            values,
            cells,
            worker_swaps: Vec::new(),
        }
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn width(&self) -> usize {
        self.rho.len()
    }

    pub fn value_of(&self, pattern: Pattern) -> f64 {
        self.values[pattern as usize]
    }

    /// Occupied slot count.
    pub fn stored(&self) -> usize {
        self.cells
            .iter()
            .filter(|c| c.load(Ordering::Relaxed) != EMPTY)
            .count()
    }

    /// Occupied cells in index order.
    pub fn entries(&self) -> Vec<(usize, f64, Pattern)> {
        (0..self.cells.len())
            .filter_map(|i| self.cell(i).map(|(v, p)| (i, v, p)))
            .collect()
    }

    /// Slot swaps performed by each worker during the build.
    pub fn worker_swaps(&self) -> &[u64] {
        &self.worker_swaps
    }

    /// Order-sensitive digest of the slot contents.
    pub fn checksum(&self) -> u64 {
        self.cells.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, c| {
            (h ^ c.load(Ordering::Relaxed)).wrapping_mul(0x0000_0100_0000_01b3)
        })
    }

    #[inline]
    fn greater(&self, a: Pattern, b: Pattern) -> bool {
        let (va, vb) = (self.values[a as usize], self.values[b as usize]);
        va.total_cmp(&vb).then(a.cmp(&b)) == std::cmp::Ordering::Greater
    }

    fn insert_with(&self, pattern: Pattern, pause: &mut impl FnMut()) -> Result<u64, TableFull> {
        let k = self.cells.len();
        let mut i = home(self.values[pattern as usize], k);
        let mut carry = pattern;
        let mut swaps = 0;
        let mut advances = 0;
        loop {
            pause();
            let y = self.cells[i].swap(carry, Ordering::AcqRel);
            swaps += 1;
            if y == EMPTY {
                return Ok(swaps);
            }
            if self.greater(y, carry) {
                advances += 1;
                if advances >= k {
                    return Err(TableFull);
                }
                i = next_slot(i, k);
            }
            carry = y;
        }
    }
}

impl ProbeTable for SharedValueTable {
    fn capacity(&self) -> usize {
        self.cells.len()
    }

    #[inline]
    fn cell(&self, i: usize) -> Option<(f64, Pattern)> {
        let p = self.cells[i].load(Ordering::Relaxed);
        (p != EMPTY).then(|| (self.values[p as usize], p))
    }
}

/// Inserts `pattern` (with its precomputed value) using only indivisible
/// slot swaps. Returns the number of swaps.
pub fn parallel_insert(table: &SharedValueTable, pattern: Pattern) -> Result<u64, TableFull> {
    table.insert_with(pattern, &mut || {})
}

/// Builds the table for `rho_half` with `workers` threads inserting disjoint
/// pattern ranges.
pub fn parallel_build(rho_half: &[f64], workers: usize) -> SharedValueTable {
    parallel_build_with(rho_half, workers, Schedule::Free)
}

pub fn parallel_build_with(rho_half: &[f64], workers: usize, schedule: Schedule) -> SharedValueTable {
    let mut table = SharedValueTable::new(rho_half);
    let parts = partition(table.values.len() as u64, workers);
    let swaps: Vec<u64> = std::thread::scope(|scope| {
        let table = &table;
        let handles: Vec<_> = parts
            .into_iter()
            .map(|part| {
                scope.spawn(move || {
                    let mut total = 0;
                    match schedule {
                        Schedule::Free => {
                            let mut pause = || {};
                            for s in part.pattern_range {
                                total += table.insert_with(s, &mut pause).expect("half-full table");
                            }
                        }
                        Schedule::RandomYield { seed } => {
                            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ part.worker_id as u64);
                            let mut pause = || {
                                if rng.random_ratio(1, 4) {
                                    std::thread::yield_now();
                                }
                            };
                            for s in part.pattern_range {
                                total += table.insert_with(s, &mut pause).expect("half-full table");
                            }
                        }
                    }
                    total
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("build worker panicked"))
            .collect()
    });
    table.worker_swaps = swaps;
    table
}

/// Queries `table`, built from `rho.halves().1`, for every pattern of the
/// first half, with `workers` threads streaming disjoint ranges. Equal to the
/// serial sweep of Algorithm E.
pub fn parallel_query_sweep(
    rho: &RhoVector,
    table: &SharedValueTable,
    eps: f64,
    workers: usize,
) -> Recombination {
    let (ra, rb) = rho.halves();
    assert_eq!(rb, table.rho(), "table was built from a different half");
    let stream = Stream::new(ra);
    let parts = partition(stream.count(), workers);
    let results: Vec<(Vec<Pattern>, RecombineStats)> = std::thread::scope(|scope| {
        let stream = &stream;
        let handles: Vec<_> = parts
            .into_iter()
            .map(|part| {
                scope.spawn(move || {
                    let mut hits = Vec::new();
                    let stats = sweep_range(ra, rb, stream, table, eps, part.pattern_range, &mut hits);
                    (hits, stats)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("query worker panicked"))
            .collect()
    });
    let mut candidates = CandidateSet::new(rho.len());
    let mut stats = RecombineStats::default();
    let mut all = Vec::new();
    for (hits, s) in results {
        all.extend(hits);
        stats.merge(&s);
    }
    all.sort_unstable();
    candidates.patterns.extend(all);
    Recombination { candidates, stats }
}

/// Algorithm E with a concurrently built table and a partitioned sweep.
pub fn recombine_e_parallel(rho: &RhoVector, eps: f64, workers: usize) -> Result<Recombination, RecombineError> {
    recombine_e_parallel_with_table(rho, eps, workers).map(|r| r.0)
}

/// [`recombine_e_parallel`], also returning the table for its statistics.
pub fn recombine_e_parallel_with_table(
    rho: &RhoVector,
    eps: f64,
    workers: usize,
) -> Result<(Recombination, Option<SharedValueTable>), RecombineError> {
    crate::recombine::check_split_width(rho.len())?;
    if rho.is_empty() {
        let empty = Recombination {
            candidates: CandidateSet::new(0),
            stats: RecombineStats::default(),
        };
        return Ok((empty, None));
    }
    let table = parallel_build(rho.halves().1, workers);
    let mut out = parallel_query_sweep(rho, &table, eps, workers);
    out.stats.inserts = table.values.len() as u64;
    out.stats.insert_probes = table.worker_swaps.iter().sum();
    Ok((out, Some(table)))
}
