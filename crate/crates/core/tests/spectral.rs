// Spectral kernels against dense nalgebra decompositions.

use nalgebra::{DMatrix, DVector};
use ncdist_core::{commutator_norm, BidiagonalStaircase, Graph, SymTridiagonal};
use proptest::prelude::*;

fn weight() -> impl Strategy<Value = f64> {
    (-3.0f64..3.0).prop_map(f64::exp)
}

fn dense_sym_eigs(m: &DMatrix<f64>) -> Vec<f64> {
    let mut e: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

fn dense_norm(m: &DMatrix<f64>) -> f64 {
    m.singular_values().iter().copied().fold(0.0, f64::max)
}

fn tridiag_dense(b: &[f64]) -> DMatrix<f64> {
    let n = b.len() + 1;
    DMatrix::from_fn(n, n, |i, j| if i + 1 == j { b[i] } else if j + 1 == i { b[j] } else { 0.0 })
}

fn random_graph(n: usize, entries: &[f64], mask: &[bool]) -> Graph {
    let mut rows = vec![vec![0.0; n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask[k] {
                rows[i][j] = entries[k];
                rows[j][i] = entries[k];
            }
            k += 1;
        }
    }
    Graph::from_rows(&rows, 0.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn tridiagonal_spectrum_matches_dense(b in prop::collection::vec(weight(), 1..14)) {
        let m = SymTridiagonal::new(b.clone());
        let ours = m.eigenvalues();
        let dense = dense_sym_eigs(&tridiag_dense(&b));
        let scale = dense.last().unwrap().abs();
        for (x, y) in ours.iter().zip(&dense) {
            prop_assert!((x - y).abs() <= 1e-12 * scale, "{ours:?} vs {dense:?}");
        }
        prop_assert!((m.spectral_radius() - scale).abs() <= 1e-13 * scale);
    }

    #[test]
    fn spectrum_is_symmetric(b in prop::collection::vec(weight(), 1..14)) {
        let e = SymTridiagonal::new(b).eigenvalues();
        let scale = e.last().unwrap().abs();
        for k in 0..e.len() {
            prop_assert!((e[k] + e[e.len() - 1 - k]).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn radius_with_zero_couplings(b in prop::collection::vec(prop_oneof![Just(0.0), weight()], 1..14)) {
        let rho = SymTridiagonal::new(b.clone()).spectral_radius();
        let dense = dense_sym_eigs(&tridiag_dense(&b));
        let expected = dense.last().unwrap().abs().max(dense[0].abs());
        prop_assert!((rho - expected).abs() <= 1e-13 * expected.max(1.0));
    }

    #[test]
    fn staircase_norm_is_tridiagonal_radius(entries in prop::collection::vec(weight(), 1..14)) {
        let t = BidiagonalStaircase::new(entries.clone());
        let dense = DMatrix::from_fn(t.rows(), t.cols(), |i, j| t.to_dense()[i][j]);
        let sigma = dense_norm(&dense);
        prop_assert!((t.norm() - sigma).abs() <= 1e-12 * sigma);
        prop_assert!((SymTridiagonal::new(entries).spectral_radius() - sigma).abs() <= 1e-12 * sigma);
    }

    #[test]
    fn staircase_products_match_dense(
        entries in prop::collection::vec(weight(), 1..12),
        seed in prop::collection::vec(-1.0f64..1.0, 12),
    ) {
        let t = BidiagonalStaircase::new(entries);
        let dense = DMatrix::from_fn(t.rows(), t.cols(), |i, j| t.to_dense()[i][j]);
        let y = DVector::from_iterator(t.cols(), seed.iter().copied().take(t.cols()));
        let x = DVector::from_iterator(t.rows(), seed.iter().rev().copied().take(t.rows()));
        let ty = dense.clone() * &y;
        let ttx = dense.transpose() * &x;
        for (a, b) in t.apply(y.as_slice()).iter().zip(ty.iter()) {
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()) * 20.0);
        }
        for (a, b) in t.apply_transpose(x.as_slice()).iter().zip(ttx.iter()) {
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()) * 20.0);
        }
    }

    #[test]
    fn commutator_norm_matches_dense(
        n in 2usize..9,
        entries in prop::collection::vec(prop_oneof![weight(), weight().prop_map(|w| -w)], 36),
        mask in prop::collection::vec(any::<bool>(), 36),
        a in prop::collection::vec(-2.0f64..2.0, 9),
    ) {
        let g = random_graph(n, &entries, &mask);
        let a = &a[..n];
        let ours = commutator_norm(&g, a).unwrap();
        let k = DMatrix::from_fn(n, n, |i, j| (a[i] - a[j]) * g.get(i, j));
        let expected = dense_norm(&k);
        prop_assert!((ours - expected).abs() <= 1e-11 * expected.max(1.0), "{ours} vs {expected}");
    }

    #[test]
    fn commutator_norm_invariances(
        n in 2usize..9,
        entries in prop::collection::vec(weight(), 36),
        mask in prop::collection::vec(any::<bool>(), 36),
        a in prop::collection::vec(-2.0f64..2.0, 9),
        shift in -5.0f64..5.0,
        c in -4.0f64..4.0,
    ) {
        let g = random_graph(n, &entries, &mask);
        let a = &a[..n];
        let base = commutator_norm(&g, a).unwrap();
        let tol = 1e-11 * base.max(1.0);
        let neg: Vec<f64> = a.iter().map(|v| -v).collect();
        let shifted: Vec<f64> = a.iter().map(|v| v + shift).collect();
        let scaled: Vec<f64> = a.iter().map(|v| c * v).collect();
        prop_assert!((commutator_norm(&g, &neg).unwrap() - base).abs() <= tol);
        prop_assert!((commutator_norm(&g, &shifted).unwrap() - base).abs() <= tol * 4.0);
        prop_assert!((commutator_norm(&g, &scaled).unwrap() - c.abs() * base).abs() <= tol * 4.0);
    }
}
