//! Path weights and the alternating ratio vectors `mu`, `nu`.
//!
//! `mu_1 = nu_1 = 1`, `mu_{k+1} = mu_k d_{2k-1} / d_{2k}` and
//! `nu_{k+1} = nu_k d_{2k} / d_{2k+1}`. At a norm-attaining point the Perron
//! singular pair of `T(z)` is `(mu / |mu|, nu / |nu|)`, and
//! `mu^t T(z) nu = d_1 * sum(z)` for every `z`.

use crate::error::{Error, Result};
use crate::linalg::BidiagonalStaircase;
use crate::scalar::{dot, Real};

/// Strictly positive edge weights `d_1, ..., d_{n-1}` of a path on `n` vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct PathDiracOperator<T> {
    d: Vec<T>,
}

impl<T: Real> PathDiracOperator<T> {
    /// Validates positivity and finiteness, and rejects weights whose
    /// alternating ratio products leave the representable range.
    pub fn new(d: Vec<T>) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::EmptyWeights);
        }
        for (i, &w) in d.iter().enumerate() {
            if !w.is_finite() {
                return Err(Error::NonFiniteWeight { index: i + 1 });
            }
            if !(w > T::zero()) {
                return Err(Error::NonPositiveWeight { index: i + 1, value: w.to_f64_lossy() });
            }
        }
        let spread = log_ratio_spread(&d);
        if spread > T::MAX_LOG_RATIO {
            return Err(Error::RatioOverflow {
                log_ratio: spread.to_f64_lossy(),
                limit: T::MAX_LOG_RATIO.to_f64_lossy(),
            });
        }
        Ok(Self { d })
    }

    pub fn weights(&self) -> &[T] {
        &self.d
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.d.len() + 1
    }

    /// Weights of the sub-path `d_a..=d_b` (1-based, inclusive).
    pub fn slice(&self, a: usize, b: usize) -> Result<Self> {
        if a < 1 || a > b || b > self.d.len() {
            return Err(Error::IndexOutOfRange { a, b, len: self.d.len() });
        }
        Ok(Self { d: self.d[a - 1..b].to_vec() })
    }

    pub fn scaled(&self, c: T) -> Result<Self> {
        Self::new(self.d.iter().map(|&w| w * c).collect())
    }

    pub fn reversed(&self) -> Self {
        Self { d: self.d.iter().rev().copied().collect() }
    }

    /// Weighted geodesic length between the endpoints, `sum 1/d_i`.
    pub fn geodesic(&self) -> T {
        self.d.iter().map(|&w| T::one() / w).sum()
    }

    pub fn is_uniform(&self) -> bool {
        self.d.iter().all(|&w| w == self.d[0])
    }
}

/// Spread `max - min` of `ln mu_k` and `ln nu_k`: every sub-block's ratios stay
/// within `exp(spread)`.
fn log_ratio_spread<T: Real>(d: &[T]) -> T {
    let mut spread = T::zero();
    for start in 0..2 {
        let (mut acc, mut lo, mut hi) = (T::zero(), T::zero(), T::zero());
        let mut j = start;
        while j + 1 < d.len() {
            acc = acc + d[j].ln() - d[j + 1].ln();
            lo = lo.min(acc);
            hi = hi.max(acc);
            j += 2;
        }
        spread = spread.max(hi - lo);
    }
    spread
}

/// The vectors `mu` (length `floor((n+1)/2)`) and `nu` (length `floor(n/2)`).
#[derive(Debug, Clone, PartialEq)]
pub struct MuNu<T> {
    pub mu: Vec<T>,
    pub nu: Vec<T>,
}

/// Running products of alternating weight ratios.
pub fn build_munu<T: Real>(d: &PathDiracOperator<T>) -> MuNu<T> {
    munu_of(d.weights())
}

pub(crate) fn munu_of<T: Real>(d: &[T]) -> MuNu<T> {
    let n = d.len() + 1;
    let mut mu = Vec::with_capacity((n + 1) / 2);
    let mut nu = Vec::with_capacity(n / 2);
    mu.push(T::one());
    nu.push(T::one());
    for k in 1..(n + 1) / 2 {
        let prev = mu[k - 1];
        mu.push(prev * (d[2 * k - 2] / d[2 * k - 1]));
    }
    for k in 1..n / 2 {
        let prev = nu[k - 1];
        nu.push(prev * (d[2 * k - 1] / d[2 * k]));
    }
    MuNu { mu, nu }
}

impl<T: Real> MuNu<T> {
    /// `(|mu^(k)|^2)_k` and `(|nu^(k)|^2)_k`, cumulative sums of squares.
    pub fn prefix_sq_norms(&self) -> (Vec<T>, Vec<T>) {
        (cumulative_squares(&self.mu), cumulative_squares(&self.nu))
    }
}

fn cumulative_squares<T: Real>(v: &[T]) -> Vec<T> {
    v.iter()
        .scan(T::zero(), |acc, &x| {
            *acc = *acc + x * x;
            Some(*acc)
        })
        .collect()
}

/// `mu[a, b]` and `nu[a, b]`: the entries of `mu`, `nu` in the rows and
/// columns of `T(z)` touched by `d_a z_a, ..., d_b z_b` (1-based, inclusive).
pub fn truncated_munu<T: Real>(d: &PathDiracOperator<T>, a: usize, b: usize) -> Result<(Vec<T>, Vec<T>)> {
    let len = d.weights().len();
    if a < 1 || a > b || b > len {
        return Err(Error::IndexOutOfRange { a, b, len });
    }
    let MuNu { mu, nu } = build_munu(d);
    // 1-based ceil((i+1)/2) = (i+2)/2, ceil(i/2) = (i+1)/2
    let mu_slice = mu[(a + 2) / 2 - 1..(b + 2) / 2].to_vec();
    let nu_slice = nu[(a + 1) / 2 - 1..(b + 1) / 2].to_vec();
    Ok((mu_slice, nu_slice))
}

/// `|mu^t T(z) nu - d_1 sum(z)|`.
pub fn bilinear_identity_residual<T: Real>(d: &PathDiracOperator<T>, z: &[T]) -> Result<T> {
    let t = BidiagonalStaircase::from_weights(d.weights(), z)?;
    let MuNu { mu, nu } = build_munu(d);
    let lhs = dot(&mu, &t.apply(&nu));
    let rhs = d.weights()[0] * z.iter().copied().sum::<T>();
    Ok((lhs - rhs).abs())
}
