//! Independent checks on a candidate maximizer.
//!
//! A viable `z` must satisfy, for the full path and for each block `T_k(z)`:
//!
//! * `T T^t mu = mu` and `T^t T nu = nu`;
//! * `||T_k(z)|| = 1`;
//! * the norm-attaining pair `(x_k, y_k)`, computed here by power iteration
//!   and not taken from the formula, equals `(mu(f_k)/|mu(f_k)|, nu(f_k)/|nu(f_k)|)`
//!   and is orthogonal to every transfer direction `R_j - R_{j+1}` inside the
//!   block, i.e. `x^t R_j y` is constant along the block (Birkhoff-James).

use crate::linalg::{perron_pair, staircase_position, BidiagonalStaircase};
use crate::munu::{build_munu, munu_of, PathDiracOperator};
use crate::scalar::{max_abs, norm2, Real};

use super::pattern::ZeroPattern;

/// Outcome of [`verify_candidate`]. Residuals are relative (scale-free).
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationRecord<T> {
    /// `z` has the right length, vanishes exactly on the pattern and is
    /// strictly positive elsewhere.
    pub structural: bool,
    /// Max of the global and per-block `T T^t mu = mu`, `T^t T nu = nu` residuals.
    pub eigen_residual: T,
    /// `max_k | ||T_k(z)|| - 1 |`.
    pub block_norm_deviation: T,
    /// Distance between the computed Perron pair and `(mu, nu)` normalized.
    pub singular_pair_deviation: T,
    /// Largest relative spread of `x^t R_j y` along a block.
    pub birkhoff_james: T,
    pub passed: bool,
}

impl<T: Real> VerificationRecord<T> {
    fn failed_structure() -> Self {
        Self {
            structural: false,
            eigen_residual: T::infinity(),
            block_norm_deviation: T::infinity(),
            singular_pair_deviation: T::infinity(),
            birkhoff_james: T::infinity(),
            passed: false,
        }
    }

    pub fn worst(&self) -> T {
        self.eigen_residual
            .max(self.block_norm_deviation)
            .max(self.singular_pair_deviation)
            .max(self.birkhoff_james)
    }
}

fn sup_diff<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| (x - y).abs()).fold(T::zero(), T::max)
}

fn normalized<T: Real>(v: &[T]) -> Vec<T> {
    let n = norm2(v);
    v.iter().map(|&x| x / n).collect()
}

/// Relative residuals of `T T^t mu = mu` and `T^t T nu = nu`.
pub(crate) fn eigen_residual<T: Real>(d: &[T], z: &[T]) -> T {
    let t = BidiagonalStaircase::from_weights(d, z).expect("matching lengths");
    let m = munu_of(d);
    let tt_mu = t.apply(&t.apply_transpose(&m.mu));
    let t_nu = t.apply(&m.nu);
    let tt_nu = t.apply_transpose(&t_nu);
    (sup_diff(&tt_mu, &m.mu) / max_abs(&m.mu)).max(sup_diff(&tt_nu, &m.nu) / max_abs(&m.nu))
}

/// Recomputes every certificate for `z` under `pattern`. Never fails: a
/// malformed candidate yields a record with `passed == false`.
pub fn verify_candidate<T: Real>(d: &PathDiracOperator<T>, pattern: &ZeroPattern, z: &[T]) -> VerificationRecord<T> {
    let w = d.weights();
    let n = d.order();
    if z.len() != w.len() || pattern.zeros().iter().any(|&i| i + 2 > n) {
        return VerificationRecord::failed_structure();
    }
    let structural = z.iter().enumerate().all(|(k, &v)| {
        if pattern.contains(k + 1) {
            v == T::zero()
        } else {
            v.is_finite() && v > T::zero()
        }
    });
    if !structural {
        return VerificationRecord::failed_structure();
    }

    let mut eigen = {
        let m = build_munu(d);
        let t = BidiagonalStaircase::from_weights(w, z).expect("matching lengths");
        let tt_mu = t.apply(&t.apply_transpose(&m.mu));
        let tt_nu = t.apply_transpose(&t.apply(&m.nu));
        (sup_diff(&tt_mu, &m.mu) / max_abs(&m.mu)).max(sup_diff(&tt_nu, &m.nu) / max_abs(&m.nu))
    };
    let mut norm_dev = T::zero();
    let mut pair_dev = T::zero();
    let mut bj = T::zero();

    for &(a, b) in &pattern.blocks(n).blocks {
        let f = &w[a - 1..b];
        let u = &z[a - 1..b];
        eigen = eigen.max(eigen_residual(f, u));
        let t = BidiagonalStaircase::from_weights(f, u).expect("matching lengths");
        norm_dev = norm_dev.max((t.norm() - T::one()).abs());

        let pair = match perron_pair(&t) {
            Ok(p) => p,
            Err(_) => return VerificationRecord::failed_structure(),
        };
        norm_dev = norm_dev.max((pair.sigma - T::one()).abs());
        let m = munu_of(f);
        pair_dev = pair_dev
            .max(sup_diff(&pair.x, &normalized(&m.mu)))
            .max(sup_diff(&pair.y, &normalized(&m.nu)));

        // x^t R_j y with R_j = f_j E_{row(j), col(j)}
        let terms: Vec<T> = f
            .iter()
            .enumerate()
            .map(|(e, &fj)| {
                let (r, c) = staircase_position(e);
                pair.x[r] * fj * pair.y[c]
            })
            .collect();
        for pair_terms in terms.windows(2) {
            let scale = pair_terms[0].abs().max(pair_terms[1].abs());
            bj = bj.max((pair_terms[0] - pair_terms[1]).abs() / scale);
        }
    }

    let tol = T::CERTIFICATE;
    let passed = [eigen, norm_dev, pair_dev, bj].iter().all(|&r| r.is_finite() && r <= tol);
    VerificationRecord {
        structural,
        eigen_residual: eigen,
        block_norm_deviation: norm_dev,
        singular_pair_deviation: pair_dev,
        birkhoff_james: bj,
        passed,
    }
}
