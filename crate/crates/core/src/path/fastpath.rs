//! Closed-form answers that need no pattern search: paths with at most five
//! vertices (a case split on explicit weight inequalities) and uniformly
//! weighted paths of any length.
//!
//! These formulas are written out independently of [`super::block`], so they
//! double as a check on the general solver.

use crate::munu::PathDiracOperator;
use crate::scalar::Real;

use super::pattern::ZeroPattern;
use super::solver::{potentials_from_z, BlockValue, DistanceReport, Method};
use super::verify::verify_candidate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FastPathCase {
    /// `n = 2`: `1/d_1`.
    TwoVertices,
    /// `n = 3`: `sqrt(1 + (d_1/d_2)^2) / d_1`.
    ThreeVertices,
    /// `n = 4`, `d_2^2 > d_1 d_3`: `1/d_1 + 1/d_3`.
    FourSplit,
    /// `n = 4`, `d_2^2 <= d_1 d_3`: `|mu| |nu| / d_1`.
    FourWhole,
    /// `n = 5`, `|nu| > |mu|`: zero at coordinate 2.
    FiveSplitLeft,
    /// `n = 5`, `|mu| > sqrt(1 + d_1^2/d_2^2) |nu|`: zero at coordinate 3.
    FiveSplitRight,
    /// `n = 5`, otherwise: `|mu| |nu| / d_1`.
    FiveWhole,
    /// Unit-shape weights, `n = 2k`: `k / d`.
    UniformEven,
    /// Unit-shape weights, `n = 2k - 1`: `sqrt(k (k - 1)) / d`.
    UniformOdd,
}

impl FastPathCase {
    pub fn name(self) -> &'static str {
        match self {
            Self::TwoVertices => "n2",
            Self::ThreeVertices => "n3",
            Self::FourSplit => "n4-split",
            Self::FourWhole => "n4-whole",
            Self::FiveSplitLeft => "n5-split-left",
            Self::FiveSplitRight => "n5-split-right",
            Self::FiveWhole => "n5-whole",
            Self::UniformEven => "uniform-even",
            Self::UniformOdd => "uniform-odd",
        }
    }
}

/// Closed-form `d^D(1, n)` with its maximizer, or `None` when no formula
/// applies (or the formula leaves the floating-point range).
pub fn solve_path_fastpath<T: Real>(d: &PathDiracOperator<T>) -> Option<DistanceReport<T>> {
    let w = d.weights();
    let n = d.order();
    let (case, z) = match n {
        2 => (FastPathCase::TwoVertices, vec![w[0].recip()]),
        3 => {
            let r = w[0].hypot(w[1]);
            (FastPathCase::ThreeVertices, vec![w[1] / (w[0] * r), w[0] / (w[1] * r)])
        }
        _ if d.is_uniform() => uniform(n, w[0]),
        4 => four(w[0], w[1], w[2]),
        5 => five(w[0], w[1], w[2], w[3]),
        _ => return None,
    };
    if z.iter().any(|v| !v.is_finite()) {
        return None;
    }
    Some(closed_form_report(d, case, z))
}

fn uniform<T: Real>(n: usize, w: T) -> (FastPathCase, Vec<T>) {
    if n % 2 == 0 {
        let z = (1..n).map(|j| if j % 2 == 1 { w.recip() } else { T::zero() }).collect();
        return (FastPathCase::UniformEven, z);
    }
    let k = T::from_usize((n + 1) / 2).unwrap();
    let (down, up) = (((k - T::one()) / k).sqrt(), (k / (k - T::one())).sqrt());
    let mut z = Vec::with_capacity(n - 1);
    for j in 1..=(n - 1) / 2 {
        let jt = T::from_usize(j).unwrap();
        z.push((jt * down - (jt - T::one()) * up) / w);
        z.push(jt * (up - down) / w);
    }
    (FastPathCase::UniformOdd, z)
}

fn four<T: Real>(d1: T, d2: T, d3: T) -> (FastPathCase, Vec<T>) {
    if d2 * d2 > d1 * d3 {
        return (FastPathCase::FourSplit, vec![d1.recip(), T::zero(), d3.recip()]);
    }
    let mu2 = T::one() + (d1 / d2).powi(2);
    let nu2 = T::one() + (d2 / d3).powi(2);
    let scale = d1 * (mu2 * nu2).sqrt();
    let z = vec![nu2 / scale, (mu2 - nu2) / scale, (mu2 * nu2 - mu2) / scale];
    (FastPathCase::FourWhole, z)
}

fn five<T: Real>(d1: T, d2: T, d3: T, d4: T) -> (FastPathCase, Vec<T>) {
    let head = T::one() + (d1 / d2).powi(2);
    let mu2 = head + (d1 * d3 / (d2 * d4)).powi(2);
    let nu2 = T::one() + (d2 / d3).powi(2);
    if nu2 > mu2 {
        let r = d3.hypot(d4);
        return (FastPathCase::FiveSplitLeft, vec![d1.recip(), T::zero(), d4 / (d3 * r), d3 / (d4 * r)]);
    }
    if mu2 > head * nu2 {
        let r = d1.hypot(d2);
        return (FastPathCase::FiveSplitRight, vec![d2 / (d1 * r), d1 / (d2 * r), T::zero(), d4.recip()]);
    }
    let scale = d1 * (mu2 * nu2).sqrt();
    let z = vec![nu2 / scale, (mu2 - nu2) / scale, (head * nu2 - mu2) / scale, (nu2 * mu2 - head * nu2) / scale];
    (FastPathCase::FiveWhole, z)
}

fn closed_form_report<T: Real>(d: &PathDiracOperator<T>, case: FastPathCase, mut z: Vec<T>) -> DistanceReport<T> {
    // Entries at the viability boundary are zeros of the maximizer.
    let floor = T::POSITIVITY * z.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
    let mut zeros = Vec::new();
    for (k, v) in z.iter_mut().enumerate() {
        if *v < floor {
            *v = T::zero();
            zeros.push(k + 1);
        }
    }
    let n = d.order();
    let pattern = ZeroPattern::new(n, zeros).expect("closed forms never zero an endpoint or two neighbors");
    let blocks: Vec<BlockValue<T>> = pattern
        .blocks(n)
        .blocks
        .iter()
        .map(|&(a, b)| BlockValue { start: a, end: b, value: z[a - 1..b].iter().copied().sum() })
        .collect();
    let verification = verify_candidate(d, &pattern, &z);
    DistanceReport {
        weights: d.clone(),
        distance: z.iter().copied().sum(),
        optimal_a: potentials_from_z(&z),
        optimal_z: z,
        pattern,
        blocks,
        geodesic: d.geodesic(),
        verification,
        candidates: None,
        method: Method::ClosedForm(case),
    }
}
