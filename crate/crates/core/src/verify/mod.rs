//! Exact factorization: normalization, root finding, recombination, and the
//! checks that turn accepted patterns into integer factors.
//!
//! A confirmed factor `q` splits the problem into `q` and `p / q`, and both
//! are searched again with their own roots until no candidate survives. The
//! final answer is therefore fully irreducible even when several candidates
//! overlap.

mod candidate;

pub use candidate::{build_candidate, round_and_divide, trace_test, CandidateFactor, Rejected};

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::polynomial::{square_free_decompose, IntPolynomial};
use crate::recombine::{self, Backend, Pattern, RecombineError, RecombineStats, RhoVector};
use crate::rootfinder::{build_profile, find_roots, Root, RootError, ToleranceConfig, ToleranceError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorOptions {
    pub backend: Backend,
    pub tolerance: ToleranceConfig,
    /// Worker threads for the parallel table build and query sweep.
    /// Used with backend E; other backends run single-threaded.
    pub workers: usize,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions {
            backend: Backend::E,
            tolerance: ToleranceConfig::default(),
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FactorError {
    #[error("cannot factor a constant polynomial")]
    Constant,
    #[error("input must be monic")]
    NotMonic,
    #[error("input must be square-free")]
    NotSquareFree,
    #[error(transparent)]
    Tolerance(#[from] ToleranceError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Recombine(#[from] RecombineError),
}

/// Counters and timings collected over a whole factorization.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FactorStats {
    /// Square-free parts factored.
    pub parts: usize,
    /// Recombination runs, one per polynomial searched.
    pub searches: usize,
    /// Largest `rho` length searched.
    pub max_n: usize,
    /// `rho` length of the first search of the widest part.
    pub first_n: usize,
    pub recombine: RecombineStats,
    /// Nontrivial patterns reported by recombination.
    pub candidates: u64,
    pub trace_rejected: u64,
    pub coefficient_rejected: u64,
    pub division_rejected: u64,
    pub verified: u64,
    pub root_time: Duration,
    pub recombine_time: Duration,
    pub verify_time: Duration,
    /// Table-build slot swaps per worker, summed over searches. Empty for
    /// single-threaded runs.
    pub worker_probes: Vec<u64>,
}

impl FactorStats {
    fn merge(&mut self, o: &FactorStats) {
        self.parts += o.parts;
        self.searches += o.searches;
        self.max_n = self.max_n.max(o.max_n);
        self.first_n = self.first_n.max(o.first_n);
        self.recombine.merge(&o.recombine);
        self.candidates += o.candidates;
        self.trace_rejected += o.trace_rejected;
        self.coefficient_rejected += o.coefficient_rejected;
        self.division_rejected += o.division_rejected;
        self.verified += o.verified;
        self.root_time += o.root_time;
        self.recombine_time += o.recombine_time;
        self.verify_time += o.verify_time;
        add_per_worker(&mut self.worker_probes, &o.worker_probes);
    }
}

fn add_per_worker(acc: &mut Vec<u64>, more: &[u64]) {
    if acc.len() < more.len() {
        acc.resize(more.len(), 0);
    }
    for (a, m) in acc.iter_mut().zip(more) {
        *a += m;
    }
}

/// Irreducible factors of a monic square-free polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicFactorization {
    pub factors: Vec<IntPolynomial>,
    pub stats: FactorStats,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationResult {
    /// Signed integer content; the factors have positive leading coefficients.
    pub content: BigInt,
    /// Irreducible factors with multiplicities, sorted by degree then
    /// coefficients.
    pub factors: Vec<(IntPolynomial, u32)>,
    /// `content * prod f^m` was re-multiplied and equals the input.
    pub certificate: bool,
    pub stats: FactorStats,
}

impl FactorizationResult {
    pub fn reassemble(&self) -> IntPolynomial {
        let mut acc = IntPolynomial::constant(self.content.clone());
        for (f, m) in &self.factors {
            acc = acc.multiply(&f.pow(*m));
        }
        acc
    }

    /// A single factor of multiplicity one and a unit content.
    pub fn is_irreducible(&self) -> bool {
        self.content.abs().is_one() && self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Full factorization over the integers: content, square-free parts, and
/// the irreducible factors of each part.
pub fn factor(p: &IntPolynomial, opts: &FactorOptions) -> Result<FactorizationResult, FactorError> {
    if p.is_constant() {
        return Err(FactorError::Constant);
    }
    opts.tolerance.validate()?;
    let (content, primitive) = p.content_and_primitive();
    let mut stats = FactorStats::default();
    let mut factors: Vec<(IntPolynomial, u32)> = Vec::new();
    for part in square_free_decompose(&primitive) {
        let (monic, lead) = part.factor.to_monic();
        let outcome = factor_monic_squarefree(&monic, opts)?;
        stats.merge(&outcome.stats);
        for f in outcome.factors {
            factors.push((f.from_monic_factor(&lead), part.multiplicity));
        }
    }
    factors.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs())
            .cmp(&(b.0.degree(), b.0.coeffs()))
            .then(a.1.cmp(&b.1))
    });
    let mut result = FactorizationResult {
        content,
        factors,
        certificate: false,
        stats,
    };
    result.certificate = &result.reassemble() == p;
    Ok(result)
}

/// Irreducible factors of a monic square-free `f`.
pub fn factor_monic_squarefree(
    f: &IntPolynomial,
    opts: &FactorOptions,
) -> Result<MonicFactorization, FactorError> {
    if f.is_constant() {
        return Err(FactorError::Constant);
    }
    if !f.is_monic() {
        return Err(FactorError::NotMonic);
    }
    opts.tolerance.validate()?;
    let mut stats = FactorStats {
        parts: 1,
        ..FactorStats::default()
    };
    let mut factors = Vec::new();
    if f.degree() == 1 {
        factors.push(f.clone());
        return Ok(MonicFactorization { factors, stats });
    }
    if !f.gcd(&f.derivative()).is_constant() {
        return Err(FactorError::NotSquareFree);
    }
    let start = Instant::now();
    let roots = find_roots(f, &opts.tolerance)?;
    stats.root_time = start.elapsed();
    split(f.clone(), roots, opts, &mut stats, &mut factors, true)?;
    factors.sort_by(|a, b| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
    Ok(MonicFactorization { factors, stats })
}

/// Candidates in the order they are tried: for each `{s, !s}` the member of
/// smaller degree, sorted by `(degree, pattern)`.
fn ordered_candidates(
    profile: &crate::rootfinder::RootProfile,
    patterns: impl IntoIterator<Item = Pattern>,
) -> Vec<(usize, Pattern)> {
    let full = recombine::CandidateSet::new(profile.n()).full_mask();
    let mut list: Vec<(usize, Pattern)> = patterns
        .into_iter()
        .map(|s| {
            let c = full ^ s;
            let (ds, dc) = (profile.selected_degree(s), profile.selected_degree(c));
            (ds, s).min((dc, c))
        })
        .collect();
    list.sort_unstable();
    list.dedup();
    list
}

fn split(
    p: IntPolynomial,
    roots: Vec<Root>,
    opts: &FactorOptions,
    stats: &mut FactorStats,
    out: &mut Vec<IntPolynomial>,
    first: bool,
) -> Result<(), FactorError> {
    if p.degree() <= 1 {
        out.push(p);
        return Ok(());
    }
    let profile = build_profile(&roots, &opts.tolerance)?;
    let n = profile.n();
    if first {
        stats.first_n = n;
    }
    stats.max_n = stats.max_n.max(n);
    if n <= 1 {
        out.push(p);
        return Ok(());
    }
    let rho = RhoVector::new(profile.rho.clone())?;
    let start = Instant::now();
    let (rec, per_worker) = run_backend(opts, &rho)?;
    stats.recombine_time += start.elapsed();
    add_per_worker(&mut stats.worker_probes, &per_worker);
    stats.searches += 1;
    stats.recombine.merge(&rec.stats);
    let nontrivial = rec.candidates.nontrivial();
    stats.candidates += nontrivial.len() as u64;

    let start = Instant::now();
    let eps = opts.tolerance.eps;
    let coeff_eps = opts.tolerance.coefficient_eps();
    let full = rec.candidates.full_mask();
    for (_, s) in ordered_candidates(&profile, nontrivial.patterns.iter().copied()) {
        let cand = build_candidate(s, &profile);
        if !trace_test(&cand, eps) {
            stats.trace_rejected += 1;
            continue;
        }
        match round_and_divide(&cand, &p, coeff_eps) {
            Ok((q, quotient)) => {
                stats.verified += 1;
                stats.verify_time += start.elapsed();
                let rest = profile.selected_roots(full ^ s);
                split(q, cand.roots, opts, stats, out, false)?;
                return split(quotient, rest, opts, stats, out, false);
            }
            Err(Rejected::Coefficients) => stats.coefficient_rejected += 1,
            Err(Rejected::Division) => stats.division_rejected += 1,
        }
    }
    stats.verify_time += start.elapsed();
    out.push(p);
    Ok(())
}

fn run_backend(
    opts: &FactorOptions,
    rho: &RhoVector,
) -> Result<(recombine::Recombination, Vec<u64>), RecombineError> {
    if opts.backend == Backend::E && opts.workers > 1 {
        let (rec, table) = crate::parallel::recombine_e_parallel_with_table(rho, opts.tolerance.eps, opts.workers)?;
        Ok((rec, table.map(|t| t.worker_swaps().to_vec()).unwrap_or_default()))
    } else {
        Ok((recombine::recombine(opts.backend, rho, opts.tolerance.eps)?, Vec::new()))
    }
}
