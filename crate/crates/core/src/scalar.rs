//! Floating-point abstraction shared by every kernel.
//!
//! The solvers are written against [`Real`] so that the same code runs in
//! `f32` or `f64`. All tolerances are carried by the type: the defaults for
//! `f64` are the ones the test suite pins, the `f32` values are scaled to its
//! much coarser epsilon.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// f32 or f64, plus the tolerances the solvers use for that precision.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Relative threshold below which a block entry is not strictly positive.
    const POSITIVITY: Self;
    /// Relative width inside which two objective values count as equal.
    const TIE: Self;
    /// Acceptance threshold for residuals and certificates.
    const CERTIFICATE: Self;
    /// Largest admissible |ln| of a mu/nu entry before the input is rejected.
    const MAX_LOG_RATIO: Self;
    /// Convergence threshold for successive power-iteration iterates.
    const POWER_TOL: Self;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const POSITIVITY: Self = 1e-12;
    const TIE: Self = 1e-12;
    const CERTIFICATE: Self = 1e-9;
    const MAX_LOG_RATIO: Self = 600.0;
    const POWER_TOL: Self = 1e-14;
}

impl Real for f32 {
    const POSITIVITY: Self = 1e-5;
    const TIE: Self = 1e-5;
    const CERTIFICATE: Self = 1e-3;
    const MAX_LOG_RATIO: Self = 75.0;
    const POWER_TOL: Self = 1e-6;
}

/// Euclidean norm without intermediate overflow: returns `(scale, ssq)` with
/// `norm = scale * sqrt(ssq)`.
pub(crate) fn scaled_ssq<T: Real>(v: &[T]) -> (T, T) {
    let scale = v.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    if scale == T::zero() {
        return (T::zero(), T::zero());
    }
    let ssq = v.iter().map(|&x| (x / scale) * (x / scale)).sum();
    (scale, ssq)
}

pub(crate) fn norm2<T: Real>(v: &[T]) -> T {
    let (scale, ssq) = scaled_ssq(v);
    scale * ssq.sqrt()
}

pub(crate) fn max_abs<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |m, x| m.max(x.abs()))
}

pub(crate) fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}
