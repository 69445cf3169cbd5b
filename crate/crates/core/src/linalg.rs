//! Small dense kernels: zero-diagonal symmetric tridiagonal spectra by Sturm
//! bisection, the staircase matrix `T(z)` and its Perron singular pair, and the
//! commutator norm `||[A, D]||` for a general graph Dirac operator.
//!
//! Everything spectral funnels through one routine,
//! [`SymTridiagonal::spectral_radius`]. The staircase norm uses the permutation
//! similarity between `L(z)` and the block matrix `[[0, T], [T^t, 0]]`, and the
//! commutator norm reduces the skew-symmetric commutator to skew-tridiagonal
//! form first.

use crate::error::{Error, Result};
use crate::scalar::{max_abs, norm2, Real};

/// Symmetric tridiagonal matrix with zero diagonal, stored by its superdiagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal<T> {
    offdiag: Vec<T>,
}

impl<T: Real> SymTridiagonal<T> {
    pub fn new(offdiag: Vec<T>) -> Self {
        Self { offdiag }
    }

    /// `L(d, z)`: superdiagonal `d_j z_j`.
    pub fn from_weights(d: &[T], z: &[T]) -> Result<Self> {
        if d.len() != z.len() {
            return Err(Error::LengthMismatch { expected: d.len(), got: z.len() });
        }
        Ok(Self::new(d.iter().zip(z).map(|(&a, &b)| a * b).collect()))
    }

    pub fn order(&self) -> usize {
        self.offdiag.len() + 1
    }

    pub fn offdiag(&self) -> &[T] {
        &self.offdiag
    }

    /// Number of eigenvalues strictly below `x` (Sturm count of the `LDL^t`
    /// pivots of `L - xI`).
    pub fn count_below(&self, x: T) -> usize {
        let pivmin = self.pivmin();
        let guard = |q: T| if q.abs() < pivmin { -pivmin } else { q };
        let mut q = guard(-x);
        let mut count = usize::from(q < T::zero());
        for &b in &self.offdiag {
            q = guard(-x - b * b / q);
            if q < T::zero() {
                count += 1;
            }
        }
        count
    }

    fn pivmin(&self) -> T {
        let bmax = max_abs(&self.offdiag);
        T::min_positive_value() * T::one().max(bmax * bmax)
    }

    fn gershgorin(&self) -> T {
        let n = self.offdiag.len();
        (0..=n)
            .map(|i| {
                let left = if i > 0 { self.offdiag[i - 1].abs() } else { T::zero() };
                let right = if i < n { self.offdiag[i].abs() } else { T::zero() };
                left + right
            })
            .fold(T::zero(), T::max)
    }

    /// Spectral radius `rho(L)`. The spectrum is symmetric about zero, so this is
    /// the largest eigenvalue, located to adjacent floating-point numbers.
    ///
    /// Newton's method on each irreducible segment, started above the
    /// spectrum, descends monotonically onto the largest root; a short
    /// bisection around that estimate then pins the final bracket.
    pub fn spectral_radius(&self) -> T {
        let bound = self.gershgorin();
        if bound == T::zero() {
            return T::zero();
        }
        let n = self.order();
        let top = bound * (T::one() + T::lit(4.0) * T::epsilon()) + self.pivmin();
        let estimate = self
            .offdiag
            .split(|b| *b == T::zero())
            .filter(|seg| !seg.is_empty())
            .map(|seg| newton_largest_root(seg, top))
            .fold(T::zero(), T::max);
        let slack = T::lit(16.0) * T::epsilon() * estimate + self.pivmin();
        let (lo, hi) = (estimate - slack, estimate + slack);
        if lo > T::zero() && self.count_below(hi) == n && self.count_below(lo) < n {
            return self.bisect_top(lo, hi);
        }
        self.bisect_top(T::zero(), top)
    }

    fn bisect_top(&self, mut lo: T, mut hi: T) -> T {
        let n = self.order();
        loop {
            let mid = (lo + hi) / T::lit(2.0);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) == n {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo + hi) / T::lit(2.0)
    }

    /// All eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<T> {
        let n = self.order();
        let bound = self.gershgorin() * (T::one() + T::lit(4.0) * T::epsilon()) + self.pivmin();
        (0..n)
            .map(|k| {
                let mut lo = -bound;
                let mut hi = bound;
                loop {
                    let mid = (lo + hi) / T::lit(2.0);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if self.count_below(mid) > k {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                (lo + hi) / T::lit(2.0)
            })
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let n = self.order();
        let mut m = vec![vec![T::zero(); n]; n];
        for (i, &b) in self.offdiag.iter().enumerate() {
            m[i][i + 1] = b;
            m[i + 1][i] = b;
        }
        m
    }
}

/// Largest eigenvalue of the zero-diagonal tridiagonal matrix with nonzero
/// superdiagonal `b`, by Newton from `start` (above the spectrum). Works with
/// the pivots `q_k = p_k / p_{k-1}` of the characteristic polynomial, so
/// `p'/p = sum q_k'/q_k` never overflows.
fn newton_largest_root<T: Real>(b: &[T], start: T) -> T {
    let mut x = start;
    for _ in 0..100 {
        let mut q = -x;
        let mut dq = -T::one();
        let mut log_deriv = dq / q;
        for &bk in b {
            let ratio = bk * bk / q;
            dq = -T::one() + ratio * dq / q;
            q = -x - ratio;
            log_deriv = log_deriv + dq / q;
        }
        let next = x - log_deriv.recip();
        if !(next < x) || !next.is_finite() {
            break;
        }
        x = next;
    }
    x
}

/// Spectral radius of a zero-diagonal symmetric tridiagonal matrix.
pub fn spectral_radius_tridiag<T: Real>(m: &SymTridiagonal<T>) -> T {
    m.spectral_radius()
}

/// The staircase matrix `T(z)`: entry `i` (1-based) sits at row `ceil((i+1)/2)`
/// and column `ceil(i/2)`; it has `floor((n+1)/2)` rows and `floor(n/2)` columns
/// for `n - 1` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct BidiagonalStaircase<T> {
    entries: Vec<T>,
}

/// Zero-based (row, column) of zero-based staircase entry `e`.
#[inline]
pub fn staircase_position(e: usize) -> (usize, usize) {
    ((e + 1) / 2, e / 2)
}

impl<T: Real> BidiagonalStaircase<T> {
    pub fn new(entries: Vec<T>) -> Self {
        Self { entries }
    }

    /// `T(d, z)`: entries `d_j z_j`.
    pub fn from_weights(d: &[T], z: &[T]) -> Result<Self> {
        if d.len() != z.len() {
            return Err(Error::LengthMismatch { expected: d.len(), got: z.len() });
        }
        Ok(Self::new(d.iter().zip(z).map(|(&a, &b)| a * b).collect()))
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn rows(&self) -> usize {
        (self.entries.len() + 2) / 2
    }

    pub fn cols(&self) -> usize {
        (self.entries.len() + 1) / 2
    }

    /// `T y`.
    pub fn apply(&self, y: &[T]) -> Vec<T> {
        debug_assert_eq!(y.len(), self.cols());
        let mut x = vec![T::zero(); self.rows()];
        for (e, &t) in self.entries.iter().enumerate() {
            let (r, c) = staircase_position(e);
            x[r] = x[r] + t * y[c];
        }
        x
    }

    /// `T^t x`.
    pub fn apply_transpose(&self, x: &[T]) -> Vec<T> {
        debug_assert_eq!(x.len(), self.rows());
        let mut y = vec![T::zero(); self.cols()];
        for (e, &t) in self.entries.iter().enumerate() {
            let (r, c) = staircase_position(e);
            y[c] = y[c] + t * x[r];
        }
        y
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut m = vec![vec![T::zero(); self.cols()]; self.rows()];
        for (e, &t) in self.entries.iter().enumerate() {
            let (r, c) = staircase_position(e);
            m[r][c] = t;
        }
        m
    }

    /// `L` is permutation-similar to `[[0, T], [T^t, 0]]` with the same entries.
    pub fn associated_tridiagonal(&self) -> SymTridiagonal<T> {
        SymTridiagonal::new(self.entries.clone())
    }

    /// Largest singular value.
    pub fn norm(&self) -> T {
        self.associated_tridiagonal().spectral_radius()
    }
}

/// Positive unit singular vectors of an irreducible staircase matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PerronPair<T> {
    pub x: Vec<T>,
    pub y: Vec<T>,
    pub sigma: T,
    pub iterations: usize,
}

const POWER_MAX_ITERS: usize = 100_000;

/// Perron singular pair of `t` by power iteration on the block embedding
/// `[[0, T], [T^t, 0]]`, normalizing the two halves separately so that the
/// bipartite +-sigma oscillation does not arise.
pub fn perron_pair<T: Real>(t: &BidiagonalStaircase<T>) -> Result<PerronPair<T>> {
    if t.entries.is_empty() {
        return Err(Error::EmptyWeights);
    }
    if let Some(e) = t.entries.iter().position(|&v| !(v > T::zero())) {
        return Err(Error::Reducible { index: e + 1 });
    }
    let cols = t.cols();
    let mut y = vec![T::one() / T::from_usize(cols).unwrap().sqrt(); cols];
    let mut x = vec![T::zero(); t.rows()];
    let mut iterations = 0;
    while iterations < POWER_MAX_ITERS {
        iterations += 1;
        let mut xn = t.apply(&y);
        let sx = norm2(&xn);
        xn.iter_mut().for_each(|v| *v = *v / sx);
        let mut yn = t.apply_transpose(&xn);
        let sy = norm2(&yn);
        yn.iter_mut().for_each(|v| *v = *v / sy);
        let dx = xn.iter().zip(&x).map(|(a, b)| (*a - *b).abs()).fold(T::zero(), T::max);
        let dy = yn.iter().zip(&y).map(|(a, b)| (*a - *b).abs()).fold(T::zero(), T::max);
        x = xn;
        y = yn;
        if dx.max(dy) <= T::POWER_TOL {
            break;
        }
    }
    let ty = t.apply(&y);
    let sigma = x.iter().zip(&ty).map(|(&a, &b)| a * b).sum();
    Ok(PerronPair { x, y, sigma, iterations })
}

/// Real symmetric Dirac operator supported on the edges of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphDiracOperator<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: Real> GraphDiracOperator<T> {
    /// Validates a dense matrix: square, finite, zero diagonal, symmetric up to
    /// `sym_tol * max(1, |entry|)`. The stored matrix is exactly symmetric.
    pub fn from_rows(rows: &[Vec<T>], sym_tol: T) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyWeights);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare { row: i + 1, got: row.len(), expected: n });
            }
            for (j, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i + 1, col: j + 1 });
                }
            }
            if row[i] != T::zero() {
                return Err(Error::NonZeroDiagonal { index: i + 1 });
            }
        }
        let mut entries = vec![T::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (rows[i][j], rows[j][i]);
                if (a - b).abs() > sym_tol * T::one().max(a.abs()) {
                    return Err(Error::NotSymmetric { row: i + 1, col: j + 1 });
                }
                entries[i * n + j] = (a + b) / T::lit(2.0);
            }
        }
        Ok(Self { n, entries })
    }

    /// Dirac operator of a path with superdiagonal `d`.
    pub fn path(d: &[T]) -> Self {
        let n = d.len() + 1;
        let mut entries = vec![T::zero(); n * n];
        for (i, &w) in d.iter().enumerate() {
            entries[i * n + i + 1] = w;
            entries[(i + 1) * n + i] = w;
        }
        Self { n, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Zero-based entry access.
    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.n + j]
    }

    /// Zero-based neighbors of `i` (nonzero entries).
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.get(i, j) != T::zero())
    }

    pub fn scaled(&self, c: T) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|&v| v * c).collect() }
    }
}

/// `||AD - DA||` for `A = diag(a)`.
pub fn commutator_norm<T: Real>(dirac: &GraphDiracOperator<T>, a: &[T]) -> Result<T> {
    let n = dirac.order();
    if a.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: a.len() });
    }
    // Skew-symmetric commutator, entry (i, j) = (a_i - a_j) d_ij.
    let mut k = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            k[i][j] = (a[i] - a[j]) * dirac.get(i, j);
        }
    }
    let sub = skew_tridiagonalize(&mut k);
    Ok(SymTridiagonal::new(sub.into_iter().map(|v| v.abs()).collect()).spectral_radius())
}

/// Householder reduction of a skew-symmetric matrix to skew-tridiagonal form;
/// returns the subdiagonal. Orthogonal similarity preserves singular values,
/// and a skew-tridiagonal matrix with subdiagonal `e` has the singular values
/// of the symmetric tridiagonal matrix with off-diagonal `|e|`.
fn skew_tridiagonalize<T: Real>(k: &mut [Vec<T>]) -> Vec<T> {
    let n = k.len();
    for col in 0..n.saturating_sub(2) {
        let x: Vec<T> = (col + 1..n).map(|r| k[r][col]).collect();
        let xnorm = norm2(&x);
        if xnorm == T::zero() {
            continue;
        }
        let alpha = if x[0] > T::zero() { -xnorm } else { xnorm };
        let mut v = x;
        v[0] = v[0] - alpha;
        let vnorm = norm2(&v);
        if vnorm == T::zero() {
            continue;
        }
        v.iter_mut().for_each(|e| *e = *e / vnorm);
        // K <- H K H with H = I - 2 v v^t acting on indices col+1..n.
        for c in 0..n {
            let s: T = (0..v.len()).map(|i| v[i] * k[col + 1 + i][c]).sum();
            for i in 0..v.len() {
                k[col + 1 + i][c] = k[col + 1 + i][c] - T::lit(2.0) * v[i] * s;
            }
        }
        for r in 0..n {
            let s: T = (0..v.len()).map(|i| k[r][col + 1 + i] * v[i]).sum();
            for i in 0..v.len() {
                k[r][col + 1 + i] = k[r][col + 1 + i] - T::lit(2.0) * s * v[i];
            }
        }
    }
    (0..n.saturating_sub(1)).map(|i| k[i + 1][i]).collect()
}
