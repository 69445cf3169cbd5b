//! Exact endpoint distance on a weighted path.
//!
//! The distance is the largest `sum_k |mu(f_k)| |nu(f_k)| / d_{alpha_k}` over
//! viable vectors `z`. Viability is decided block by block, so each block
//! `[alpha, beta]` is solved once and cached; patterns only combine cached
//! blocks.
//!
//! Two strategies share that cache:
//!
//! * enumeration of every zero pattern, optionally skipping strict supersets
//!   of a viable pattern (a refinement never beats its coarsening);
//! * a chain recursion over block end points, which finds the same maximum in
//!   `O(n^3)` and is used for long paths where the pattern count explodes.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::munu::PathDiracOperator;
use crate::scalar::Real;

use super::block::{solve_block, BlockSolution};
use super::fastpath::FastPathCase;
use super::pattern::{enumerate_patterns, ZeroPattern};
use super::verify::{eigen_residual, verify_candidate, VerificationRecord};

/// Largest path order the exact solver accepts.
pub const MAX_ORDER: usize = 64;
/// Largest path order for which patterns are enumerated one by one.
pub const MAX_ENUMERATION_ORDER: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Enumerate up to [`MAX_ENUMERATION_ORDER`], block chain beyond.
    #[default]
    Auto,
    Enumerate,
    BlockChain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Skip strict supersets of patterns already found viable.
    pub prune: bool,
    /// Return every viable candidate, not only the winner.
    pub all_candidates: bool,
    pub strategy: Strategy,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { prune: true, all_candidates: false, strategy: Strategy::Auto }
    }
}

/// Which route produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Enumeration { evaluated: usize, pruned: usize },
    BlockChain,
    ClosedForm(FastPathCase),
}

/// One block of a candidate: 1-based inclusive range and its contribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockValue<T> {
    pub start: usize,
    pub end: usize,
    pub value: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ViableCandidate<T> {
    pub pattern: ZeroPattern,
    pub z: Vec<T>,
    /// Sum of the block values; equals `sum(z)` up to rounding.
    pub objective: T,
    pub blocks: Vec<BlockValue<T>>,
    /// Relative residual of `T T^t mu = mu`, `T^t T nu = nu`, globally and per block.
    pub residual: T,
    /// Set on every candidate tied with the reported optimum.
    pub is_maximizer: bool,
}

impl<T: Real> ViableCandidate<T> {
    pub fn verify(&self, d: &PathDiracOperator<T>) -> VerificationRecord<T> {
        verify_candidate(d, &self.pattern, &self.z)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceReport<T> {
    pub weights: PathDiracOperator<T>,
    pub distance: T,
    pub optimal_z: Vec<T>,
    /// `a_j - a_{j+1} = z_j`, normalized by `a_n = 0`.
    pub optimal_a: Vec<T>,
    pub pattern: ZeroPattern,
    pub blocks: Vec<BlockValue<T>>,
    /// `sum 1/d_i`, an upper bound for `distance`.
    pub geodesic: T,
    pub verification: VerificationRecord<T>,
    /// Every viable candidate in lexicographic pattern order, when requested.
    pub candidates: Option<Vec<ViableCandidate<T>>>,
    pub method: Method,
}

/// `a` with `a_n = 0` and `a_j = a_{j+1} + z_j`.
pub fn potentials_from_z<T: Real>(z: &[T]) -> Vec<T> {
    let mut a = vec![T::zero(); z.len() + 1];
    for j in (0..z.len()).rev() {
        a[j] = a[j + 1] + z[j];
    }
    a
}

pub(crate) fn ties<T: Real>(a: T, b: T) -> bool {
    (a - b).abs() <= T::TIE * a.abs().max(b.abs())
}

/// Higher objective wins; ties go to fewer zeros, then the lexicographically
/// smaller zero set.
fn compare<T: Real>(a: (T, &ZeroPattern), b: (T, &ZeroPattern)) -> Ordering {
    if ties(a.0, b.0) {
        b.1.len().cmp(&a.1.len()).then_with(|| b.1.cmp(a.1))
    } else if a.0 > b.0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Lazily filled table of block solutions indexed by `(alpha, beta)`.
struct BlockCache<'a, T> {
    d: &'a [T],
    table: Vec<Option<BlockSolution<T>>>,
}

impl<'a, T: Real> BlockCache<'a, T> {
    fn new(d: &'a [T]) -> Self {
        Self { d, table: vec![None; d.len() * d.len()] }
    }

    fn get(&mut self, a: usize, b: usize) -> &BlockSolution<T> {
        let len = self.d.len();
        let slot = &mut self.table[(a - 1) * len + (b - 1)];
        slot.get_or_insert_with(|| solve_block(&self.d[a - 1..b]))
    }

    /// Assembles the candidate for `pattern`, or `None` if a block is not viable.
    fn candidate(&mut self, pattern: &ZeroPattern) -> Option<ViableCandidate<T>> {
        let n = self.d.len() + 1;
        let decomposition = pattern.blocks(n);
        for &(a, b) in &decomposition.blocks {
            if !self.get(a, b).viable {
                return None;
            }
        }
        let mut z = vec![T::zero(); n - 1];
        let mut blocks = Vec::with_capacity(decomposition.blocks.len());
        let mut objective = T::zero();
        for &(a, b) in &decomposition.blocks {
            let s = self.get(a, b);
            z[a - 1..b].copy_from_slice(&s.z);
            objective = objective + s.value;
            blocks.push(BlockValue { start: a, end: b, value: s.value });
        }
        let mut residual = eigen_residual(self.d, &z);
        for &(a, b) in &decomposition.blocks {
            residual = residual.max(eigen_residual(&self.d[a - 1..b], &z[a - 1..b]));
        }
        Some(ViableCandidate { pattern: pattern.clone(), z, objective, blocks, residual, is_maximizer: false })
    }
}

/// Exact `d^D(1, n)` for the path with weights `d`.
pub fn solve_path<T: Real>(d: &PathDiracOperator<T>, opts: SolveOptions) -> Result<DistanceReport<T>> {
    let n = d.order();
    if n > MAX_ORDER {
        return Err(Error::TooManyVertices { n, max: MAX_ORDER });
    }
    let needs_enumeration = opts.all_candidates || !opts.prune;
    let strategy = match opts.strategy {
        Strategy::Auto if n <= MAX_ENUMERATION_ORDER => Strategy::Enumerate,
        Strategy::Auto if needs_enumeration => {
            let what = if opts.all_candidates { "candidate listing" } else { "unpruned enumeration" };
            return Err(Error::EnumerationTooLarge { what, n, max: MAX_ENUMERATION_ORDER });
        }
        Strategy::Auto => Strategy::BlockChain,
        s => s,
    };
    match strategy {
        Strategy::Enumerate if n > MAX_ENUMERATION_ORDER => {
            Err(Error::EnumerationTooLarge { what: "pattern enumeration", n, max: MAX_ENUMERATION_ORDER })
        }
        Strategy::Enumerate => solve_by_enumeration(d, opts),
        _ => {
            if opts.all_candidates {
                return Err(Error::EnumerationTooLarge {
                    what: "candidate listing",
                    n,
                    max: MAX_ENUMERATION_ORDER,
                });
            }
            solve_by_block_chain(d)
        }
    }
}

fn solve_by_enumeration<T: Real>(d: &PathDiracOperator<T>, opts: SolveOptions) -> Result<DistanceReport<T>> {
    let n = d.order();
    let mut cache = BlockCache::new(d.weights());

    // Coarser patterns first, so that pruning sees a viable subset before any
    // of its supersets.
    let mut by_size: Vec<Vec<u64>> = Vec::new();
    for p in enumerate_patterns(n) {
        if by_size.len() <= p.len() {
            by_size.resize_with(p.len() + 1, Vec::new);
        }
        by_size[p.len()].push(p.mask());
    }

    // Patterns that are viable or contain a viable pattern.
    let mut dominated: HashSet<u64> = HashSet::new();
    let mut best: Option<ViableCandidate<T>> = None;
    let mut listed: Vec<ViableCandidate<T>> = Vec::new();
    let (mut evaluated, mut pruned) = (0usize, 0usize);

    for &mask in by_size.iter().flatten() {
        let p = ZeroPattern::from_mask(mask);
        if opts.prune && p.zeros().iter().any(|&i| dominated.contains(&(mask & !(1u64 << i)))) {
            dominated.insert(mask);
            pruned += 1;
            continue;
        }
        evaluated += 1;
        let Some(c) = cache.candidate(&p) else { continue };
        if opts.prune {
            dominated.insert(mask);
        }
        let better = match &best {
            None => true,
            Some(b) => compare((c.objective, &c.pattern), (b.objective, &b.pattern)) == Ordering::Greater,
        };
        if opts.all_candidates {
            listed.push(c.clone());
        }
        if better {
            best = Some(c);
        }
    }

    // A viable vector always exists: blocks of one edge separated by single
    // zeros, with a leading two-edge block when n is odd.
    let best = best.expect("some zero pattern is always viable");
    let candidates = opts.all_candidates.then(|| {
        listed.sort_by(|a, b| a.pattern.cmp(&b.pattern));
        for c in &mut listed {
            c.is_maximizer = ties(c.objective, best.objective);
        }
        listed
    });
    Ok(report(d, best, candidates, Method::Enumeration { evaluated, pruned }))
}

fn solve_by_block_chain<T: Real>(d: &PathDiracOperator<T>) -> Result<DistanceReport<T>> {
    let n = d.order();
    let m = n - 1;
    let mut cache = BlockCache::new(d.weights());
    // best[e]: optimal chain of viable blocks covering 1..=e, as (value, pattern).
    let mut best: Vec<Option<(T, ZeroPattern)>> = vec![None; m + 1];
    for end in 1..=m {
        for start in 1..=end {
            if start == 2 {
                continue;
            }
            let prev = if start == 1 {
                Some((T::zero(), ZeroPattern::empty()))
            } else {
                best[start - 2].clone()
            };
            let Some((prev_value, prev_pattern)) = prev else { continue };
            let block = cache.get(start, end);
            if !block.viable {
                continue;
            }
            let value = prev_value + block.value;
            let mut zeros = prev_pattern.zeros().to_vec();
            if start > 1 {
                zeros.push(start - 1);
            }
            let pattern = ZeroPattern::from_sorted_unchecked(zeros);
            let replace = match &best[end] {
                None => true,
                Some((v, p)) => compare((value, &pattern), (*v, p)) == Ordering::Greater,
            };
            if replace {
                best[end] = Some((value, pattern));
            }
        }
    }
    let (_, pattern) = best[m].clone().expect("some zero pattern is always viable");
    let winner = cache.candidate(&pattern).expect("chain blocks are viable");
    Ok(report(d, winner, None, Method::BlockChain))
}

fn report<T: Real>(
    d: &PathDiracOperator<T>,
    best: ViableCandidate<T>,
    candidates: Option<Vec<ViableCandidate<T>>>,
    method: Method,
) -> DistanceReport<T> {
    let verification = best.verify(d);
    DistanceReport {
        weights: d.clone(),
        distance: best.objective,
        optimal_a: potentials_from_z(&best.z),
        optimal_z: best.z,
        pattern: best.pattern,
        blocks: best.blocks,
        geodesic: d.geodesic(),
        verification,
        candidates,
        method,
    }
}
