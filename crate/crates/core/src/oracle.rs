//! Numerical cross-checks that share nothing with the closed-form solver
//! beyond the spectral kernels.
//!
//! * [`oracle_path`] maximizes `sum(z) / rho(L(d, z))` over `z >= 0`.
//! * [`oracle_graph`] maximizes `(a_i - a_j) / ||[diag(a), D]||` for any graph.
//! * [`geodesic`] is the weighted shortest-path distance with edge lengths
//!   `1 / |d_ij|`, an upper bound for both.
//!
//! Both objectives are invariant under positive scaling and quasi-concave
//! (a linear form over a convex norm), but not smooth: the spectral radius
//! has kinks wherever its top eigenvalue is multiple, and the optimum of a
//! path sits on such a kink as soon as it splits into several blocks. The
//! search therefore polls the coordinate directions and, each sweep, a fresh
//! set of random directions, which is what lets it slide along a kink where
//! no single coordinate move improves.

use std::collections::VecDeque;

use petgraph::algo::dijkstra;
use petgraph::graph::{NodeIndex, UnGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{commutator_norm, GraphDiracOperator, SymTridiagonal};
use crate::munu::PathDiracOperator;
use crate::scalar::Real;

/// Search parameters for the multi-start ascent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub restarts: usize,
    /// Maximum poll sweeps per restart.
    pub max_iters: usize,
    /// Initial step, relative to the mean magnitude of the current point.
    pub step_init: f64,
    pub step_min: f64,
    /// Restart `r` is seeded with `seed + r`.
    pub seed: u64,
    /// Feasibility tolerance, and the relative width within which two
    /// restarts count as agreeing.
    pub tolerance: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { restarts: 32, max_iters: 20_000, step_init: 0.25, step_min: 1e-9, seed: 0, tolerance: 1e-8 }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts < 1 {
            return Err(Error::InvalidConfig("restarts must be at least 1"));
        }
        if self.max_iters < 1 {
            return Err(Error::InvalidConfig("max_iters must be at least 1"));
        }
        if !(self.step_min > 0.0 && self.step_min < self.step_init && self.step_init.is_finite()) {
            return Err(Error::InvalidConfig("need 0 < step_min < step_init"));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidConfig("tolerance must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult<T> {
    pub value: T,
    /// Maximizer, normalized onto the constraint surface (`z` for paths,
    /// `a` with `a_j = 0` for graphs).
    pub argument: Vec<T>,
    /// `|constraint - 1|` at `argument`.
    pub feasibility_residual: T,
    /// The best restart ran its step down to `step_min`, is feasible, and at
    /// least one other restart reached the same value.
    pub converged: bool,
    /// Poll sweeps used by the best restart.
    pub iterations: usize,
    /// Restarts whose value agrees with the best within `tolerance`.
    pub agreeing_restarts: usize,
}

/// A distance that may be infinite (disconnected vertices).
#[derive(Debug, Clone, PartialEq)]
pub enum Reach<V> {
    Finite(V),
    Infinite,
}

impl<V> Reach<V> {
    pub fn finite(self) -> Option<V> {
        match self {
            Reach::Finite(v) => Some(v),
            Reach::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Reach::Infinite)
    }
}

struct Restart<T> {
    point: Vec<T>,
    value: T,
    iterations: usize,
    exhausted: bool,
}

/// Opportunistic pattern search on a scale-invariant objective.
///
/// Each sweep polls `+-e_i` for every coordinate, then `dim` fresh random
/// unit directions. `normalize` maps a point onto the constraint surface,
/// `project` onto the domain; `objective` must already be scale-invariant.
fn pattern_search<T: Real>(
    start: Vec<T>,
    cfg: &OracleConfig,
    rng: &mut ChaCha8Rng,
    objective: impl Fn(&[T]) -> T,
    normalize: impl Fn(&mut [T]),
    project: impl Fn(&mut [T]),
) -> Restart<T> {
    let dim = start.len();
    let mut x = start;
    normalize(&mut x);
    let mut fx = objective(&x);
    let mut step = cfg.step_init;
    let mut iterations = 0;
    let margin = T::lit(16.0) * T::epsilon();
    let mut trial = vec![T::zero(); dim];
    let mut random = vec![T::zero(); dim * dim];

    while step >= cfg.step_min && iterations < cfg.max_iters {
        iterations += 1;
        for v in random.chunks_mut(dim) {
            let g: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
            let norm = g.iter().map(|c| c * c).sum::<f64>().sqrt();
            v.iter_mut().zip(&g).for_each(|(c, &gc)| *c = T::lit(gc / norm));
        }

        let mut improved = false;
        for poll in 0..3 * dim {
            let h = T::lit(step) * x.iter().map(|v| v.abs()).sum::<T>() / T::from_usize(dim).unwrap();
            trial.copy_from_slice(&x);
            if poll < 2 * dim {
                let sign = if poll % 2 == 0 { h } else { -h };
                trial[poll / 2] = trial[poll / 2] + sign;
            } else {
                let dir = &random[(poll - 2 * dim) * dim..][..dim];
                trial.iter_mut().zip(dir).for_each(|(t, &e)| *t = *t + h * e);
            }
            project(&mut trial);
            if trial == x {
                continue;
            }
            let ft = objective(&trial);
            // gains at the rounding level would keep the step from shrinking
            if ft - fx > margin * fx.abs() {
                x.copy_from_slice(&trial);
                normalize(&mut x);
                fx = objective(&x);
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Restart { point: x, value: fx, iterations, exhausted: step >= cfg.step_min }
}

/// Deterministic reduction: the first restart with the largest value wins.
fn reduce<T: Real>(restarts: Vec<Restart<T>>, tolerance: T) -> (Restart<T>, usize) {
    let mut best = 0;
    for (k, r) in restarts.iter().enumerate() {
        if r.value > restarts[best].value {
            best = k;
        }
    }
    let top = restarts[best].value;
    let agreeing = restarts
        .iter()
        .filter(|r| (r.value - top).abs() <= tolerance * top.abs().max(T::min_positive_value()))
        .count();
    let winner = restarts.into_iter().nth(best).expect("at least one restart");
    (winner, agreeing)
}

fn path_radius<T: Real>(d: &[T], z: &[T]) -> T {
    SymTridiagonal::new(d.iter().zip(z).map(|(&a, &b)| a * b).collect()).spectral_radius()
}

/// Maximal runs of strictly positive entries, as half-open ranges.
fn positive_runs<T: Real>(z: &[T]) -> Vec<std::ops::Range<usize>> {
    let mut runs = Vec::new();
    let mut start = None;
    for (k, &v) in z.iter().enumerate() {
        match (v > T::zero(), start) {
            (true, None) => start = Some(k),
            (false, Some(a)) => {
                runs.push(a..k);
                start = None;
            }
            _ => {}
        }
    }
    if let Some(a) = start {
        runs.push(a..z.len());
    }
    runs
}

/// Numerical `max { sum(z) : z >= 0, rho(L(d, z)) = 1 }`.
///
/// A zero `z_i` splits `L(d, z)` into independent tridiagonal components and
/// `rho` is the largest of their radii, so rescaling every component to
/// radius one never lowers `sum(z) / rho`. The search therefore works with
/// `sum_k S_k / rho_k` over the components of the current point; this agrees
/// with `sum(z) / rho` on the normalized points it returns, and unlike that
/// ratio it has no kink where two components both attain the radius.
pub fn oracle_path<T: Real>(d: &PathDiracOperator<T>, cfg: &OracleConfig) -> Result<OracleResult<T>> {
    cfg.validate()?;
    let w = d.weights();
    let objective = |z: &[T]| {
        let runs = positive_runs(z);
        if runs.is_empty() {
            return T::neg_infinity();
        }
        runs.into_iter()
            .map(|r| z[r.clone()].iter().copied().sum::<T>() / path_radius(&w[r.clone()], &z[r]))
            .sum()
    };
    let normalize = |z: &mut [T]| {
        for r in positive_runs(z) {
            let rho = path_radius(&w[r.clone()], &z[r.clone()]);
            z[r].iter_mut().for_each(|v| *v = *v / rho);
        }
    };
    let project = |z: &mut [T]| z.iter_mut().for_each(|v| *v = v.max(T::zero()));

    let restarts: Vec<Restart<T>> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(r as u64));
            // uniform point of the simplex
            let e: Vec<f64> = (0..w.len()).map(|_| rng.sample(Exp1)).collect();
            let total: f64 = e.iter().sum();
            let start = e.into_iter().map(|v| T::lit(v / total)).collect();
            pattern_search(start, cfg, &mut rng, objective, normalize, project)
        })
        .collect();

    let tol = T::lit(cfg.tolerance);
    let (best, agreeing) = reduce(restarts, tol);
    let feasibility = (path_radius(w, &best.point) - T::one()).abs();
    let value: T = best.point.iter().copied().sum();
    Ok(OracleResult {
        value,
        converged: !best.exhausted && feasibility <= tol && agreeing >= 2.min(cfg.restarts),
        feasibility_residual: feasibility,
        argument: best.point,
        iterations: best.iterations,
        agreeing_restarts: agreeing,
    })
}

fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v + 1, n });
    }
    Ok(())
}

/// Vertices reachable from `start` (zero-based), in BFS order.
fn component<T: Real>(dirac: &GraphDiracOperator<T>, start: usize) -> Vec<usize> {
    let mut seen = vec![false; dirac.order()];
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(u) = queue.pop_front() {
        for v in dirac.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                order.push(v);
                queue.push_back(v);
            }
        }
    }
    order
}

/// Numerical `d^D(i, j)` for zero-based vertices `i != j`.
///
/// Only the connected component of `i` carries free potentials; `a` is zero
/// elsewhere, which leaves the commutator norm unchanged.
pub fn oracle_graph<T: Real>(
    dirac: &GraphDiracOperator<T>,
    i: usize,
    j: usize,
    cfg: &OracleConfig,
) -> Result<Reach<OracleResult<T>>> {
    cfg.validate()?;
    let n = dirac.order();
    check_vertex(i, n)?;
    check_vertex(j, n)?;
    if i == j {
        return Err(Error::SameVertex { vertex: i + 1 });
    }
    let comp = component(dirac, i);
    if !comp.contains(&j) {
        return Ok(Reach::Infinite);
    }
    // free coordinates: the component minus the gauge vertex j
    let free: Vec<usize> = comp.iter().copied().filter(|&v| v != j).collect();
    let embed = |x: &[T]| {
        let mut a = vec![T::zero(); n];
        for (k, &v) in free.iter().enumerate() {
            a[v] = x[k];
        }
        a
    };
    let norm_of = |x: &[T]| commutator_norm(dirac, &embed(x)).expect("length matches order");
    let pos_i = free.iter().position(|&v| v == i).expect("i is free");
    let objective = |x: &[T]| {
        let c = norm_of(x);
        if c > T::zero() {
            x[pos_i] / c
        } else {
            T::neg_infinity()
        }
    };
    let normalize = |x: &mut [T]| {
        let c = norm_of(x);
        if c > T::zero() {
            x.iter_mut().for_each(|v| *v = *v / c);
        }
    };

    let restarts: Vec<Restart<T>> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(r as u64));
            let start = (0..free.len()).map(|_| T::lit(rng.sample(StandardNormal))).collect();
            pattern_search(start, cfg, &mut rng, objective, normalize, |_| {})
        })
        .collect();

    let tol = T::lit(cfg.tolerance);
    let (best, agreeing) = reduce(restarts, tol);
    let feasibility = (norm_of(&best.point) - T::one()).abs();
    let argument = embed(&best.point);
    Ok(Reach::Finite(OracleResult {
        value: argument[i] - argument[j],
        converged: !best.exhausted && feasibility <= tol && agreeing >= 2.min(cfg.restarts),
        feasibility_residual: feasibility,
        argument,
        iterations: best.iterations,
        agreeing_restarts: agreeing,
    }))
}

/// Oracle for the endpoints of a path, through the general-graph formulation.
pub fn oracle_path_as_graph<T: Real>(d: &PathDiracOperator<T>, cfg: &OracleConfig) -> Result<OracleResult<T>> {
    let dirac = GraphDiracOperator::path(d.weights());
    match oracle_graph(&dirac, 0, d.order() - 1, cfg)? {
        Reach::Finite(r) => Ok(r),
        Reach::Infinite => unreachable!("a path is connected"),
    }
}

/// Shortest-path distance between zero-based vertices with edge lengths
/// `1 / |d_ij|`.
pub fn geodesic<T: Real>(dirac: &GraphDiracOperator<T>, i: usize, j: usize) -> Result<Reach<T>> {
    let n = dirac.order();
    check_vertex(i, n)?;
    check_vertex(j, n)?;
    let mut g: UnGraph<(), T> = UnGraph::with_capacity(n, 0);
    let nodes: Vec<NodeIndex> = (0..n).map(|_| g.add_node(())).collect();
    for u in 0..n {
        for v in dirac.neighbors(u).filter(|&v| v > u) {
            g.add_edge(nodes[u], nodes[v], dirac.get(u, v).abs().recip());
        }
    }
    let dist = dijkstra(&g, nodes[i], Some(nodes[j]), |e| *e.weight());
    Ok(match dist.get(&nodes[j]) {
        Some(&v) => Reach::Finite(v),
        None => Reach::Infinite,
    })
}
