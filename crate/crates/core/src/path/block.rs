//! Closed-form solution of one irreducible block.
//!
//! For block weights `f` with ratio vectors `mu = mu(f)`, `nu = nu(f)`, the
//! unique `z` with `T(z) y = x` and `T(z)^t x = y`, where `x = mu/|mu|` and
//! `y = nu/|nu|`, is
//!
//! ```text
//! z_1      = |nu| / (f_1 |mu|)
//! z_{2i}   = V * (|nu^(i)|^2 / |nu|^2   - |mu^(i)|^2 / |mu|^2)
//! z_{2i+1} = V * (|mu^(i+1)|^2 / |mu|^2 - |nu^(i)|^2 / |nu|^2)
//! ```
//!
//! with `V = |mu| |nu| / f_1` the block's contribution to the distance. The
//! prefix fractions lie in `[0, 1]`, so no squared norm is ever formed.

use crate::munu::munu_of;
use crate::scalar::{max_abs, scaled_ssq, Real};

/// Closed-form block solution; `viable` when every entry is strictly positive
/// relative to the largest one.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSolution<T> {
    pub z: Vec<T>,
    pub value: T,
    pub viable: bool,
}

impl<T: Real> BlockSolution<T> {
    pub fn is_viable(&self) -> bool {
        self.viable
    }
}

/// Prefix fractions `|v^(k)|^2 / |v|^2` for `k = 1..=len`, and `|v|`.
fn prefix_fractions<T: Real>(v: &[T]) -> (Vec<T>, T) {
    let (scale, ssq) = scaled_ssq(v);
    let fractions = v
        .iter()
        .scan(T::zero(), |acc, &x| {
            let s = x / scale;
            *acc = *acc + s * s;
            Some(*acc / ssq)
        })
        .collect();
    (fractions, scale * ssq.sqrt())
}

/// Solves one block with weights `f` (nonempty, strictly positive).
pub fn solve_block<T: Real>(f: &[T]) -> BlockSolution<T> {
    assert!(!f.is_empty(), "block weights must be nonempty");
    let m = munu_of(f);
    let (pmu, norm_mu) = prefix_fractions(&m.mu);
    let (pnu, norm_nu) = prefix_fractions(&m.nu);
    let value = norm_mu * norm_nu / f[0];

    let len = f.len();
    let mut z = Vec::with_capacity(len);
    z.push(norm_nu / norm_mu / f[0]);
    for j in 2..=len {
        let i = j / 2;
        let entry = if j % 2 == 0 {
            value * (pnu[i - 1] - pmu[i - 1])
        } else {
            value * (pmu[i] - pnu[i - 1])
        };
        z.push(entry);
    }

    let floor = T::POSITIVITY * max_abs(&z);
    let viable = value.is_finite() && z.iter().all(|&v| v.is_finite() && v >= floor && v > T::zero());
    BlockSolution { z, value, viable }
}
