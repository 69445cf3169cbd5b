//! Zero patterns of a path's `z`-vector and the blocks they induce.

use std::fmt;

use crate::error::{Error, Result};

/// Sorted set of 1-based indices in `2..=n-2` with no two adjacent: the
/// coordinates of `z` that vanish.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZeroPattern {
    zeros: Vec<usize>,
}

impl ZeroPattern {
    pub fn empty() -> Self {
        Self { zeros: Vec::new() }
    }

    /// Validates a zero set for a path on `n` vertices.
    pub fn new(n: usize, mut zeros: Vec<usize>) -> Result<Self> {
        zeros.sort_unstable();
        for (k, &i) in zeros.iter().enumerate() {
            if i < 2 || i + 2 > n {
                return Err(Error::IndexOutOfRange { a: i, b: i, len: n.saturating_sub(1) });
            }
            if k > 0 && zeros[k - 1] + 1 >= i {
                return Err(Error::IndexOutOfRange { a: zeros[k - 1], b: i, len: n - 1 });
            }
        }
        Ok(Self { zeros })
    }

    pub(crate) fn from_sorted_unchecked(zeros: Vec<usize>) -> Self {
        Self { zeros }
    }

    pub(crate) fn from_mask(mask: u64) -> Self {
        Self { zeros: (0..64).filter(|i| mask >> i & 1 == 1).collect() }
    }

    pub(crate) fn mask(&self) -> u64 {
        self.zeros.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn zeros(&self) -> &[usize] {
        &self.zeros
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.zeros.binary_search(&i).is_ok()
    }

    /// `true` when `self` is a strict subset of `other`.
    pub fn is_strict_subset_of(&self, other: &ZeroPattern) -> bool {
        let (a, b) = (self.mask(), other.mask());
        a != b && a & !b == 0
    }

    /// Maximal runs of nonzero coordinates in `1..=n-1`.
    pub fn blocks(&self, n: usize) -> BlockDecomposition {
        let mut blocks = Vec::with_capacity(self.zeros.len() + 1);
        let mut start = 1;
        for &z in &self.zeros {
            blocks.push((start, z - 1));
            start = z + 1;
        }
        blocks.push((start, n - 1));
        BlockDecomposition { blocks }
    }
}

impl fmt::Display for ZeroPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.zeros.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

/// Inclusive 1-based runs `(alpha_k, beta_k)`, with `beta_k + 2 = alpha_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<(usize, usize)>,
}

impl BlockDecomposition {
    /// Per-block weights `f_k = (d_alpha, ..., d_beta)`.
    pub fn weights<'a, T>(&'a self, d: &'a [T]) -> impl Iterator<Item = &'a [T]> + 'a {
        self.blocks.iter().map(move |&(a, b)| &d[a - 1..b])
    }
}

/// Every admissible zero pattern for a path on `n` vertices, in lexicographic
/// order of the sorted zero sets. The count obeys `P(n) = P(n-1) + P(n-2)`
/// with `P(2) = P(3) = 1`.
pub fn enumerate_patterns(n: usize) -> PatternIter {
    PatternIter { n, current: Vec::new(), started: false }
}

#[derive(Debug, Clone)]
pub struct PatternIter {
    n: usize,
    current: Vec<usize>,
    started: bool,
}

impl Iterator for PatternIter {
    type Item = ZeroPattern;

    fn next(&mut self) -> Option<ZeroPattern> {
        if !self.started {
            self.started = true;
            return Some(ZeroPattern::empty());
        }
        let last = self.n.saturating_sub(2);
        let next = self.current.last().map_or(2, |&l| l + 2);
        if next <= last {
            self.current.push(next);
            return Some(ZeroPattern::from_sorted_unchecked(self.current.clone()));
        }
        while let Some(x) = self.current.pop() {
            if x < last {
                self.current.push(x + 1);
                return Some(ZeroPattern::from_sorted_unchecked(self.current.clone()));
            }
        }
        self.n = 0;
        None
    }
}

/// `P(n)`, the number of patterns [`enumerate_patterns`] yields.
pub fn pattern_count(n: usize) -> u128 {
    let (mut a, mut b) = (1u128, 1u128);
    for _ in 4..=n {
        (a, b) = (b, a + b);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(n: usize) -> Vec<Vec<usize>> {
        enumerate_patterns(n).map(|p| p.zeros().to_vec()).collect()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(sets(2), vec![Vec::<usize>::new()]);
        assert_eq!(sets(3), vec![Vec::<usize>::new()]);
        assert_eq!(sets(4), vec![vec![], vec![2]]);
        assert_eq!(sets(6), vec![vec![], vec![2], vec![2, 4], vec![3], vec![4]]);
    }

    #[test]
    fn counts_follow_fibonacci() {
        let mut prev = (1u128, 1u128);
        for n in 2..=24usize {
            let c = enumerate_patterns(n).count() as u128;
            assert_eq!(c, pattern_count(n), "n = {n}");
            if n >= 4 {
                assert_eq!(c, prev.0 + prev.1);
            }
            prev = (prev.1, c);
        }
    }

    #[test]
    fn enumeration_is_sorted_and_admissible() {
        let all: Vec<_> = enumerate_patterns(11).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for p in &all {
            assert!(ZeroPattern::new(11, p.zeros().to_vec()).is_ok());
        }
    }

    #[test]
    fn blocks_of_ten_vertex_example() {
        let p = ZeroPattern::new(10, vec![3, 6]).unwrap();
        assert_eq!(p.blocks(10).blocks, vec![(1, 2), (4, 5), (7, 9)]);
        assert_eq!(ZeroPattern::empty().blocks(4).blocks, vec![(1, 3)]);
    }

    #[test]
    fn rejects_inadmissible_sets() {
        assert!(ZeroPattern::new(6, vec![1]).is_err());
        assert!(ZeroPattern::new(6, vec![5]).is_err());
        assert!(ZeroPattern::new(8, vec![3, 4]).is_err());
        assert!(ZeroPattern::new(8, vec![2, 4, 6]).is_ok());
    }

    #[test]
    fn subset_relation() {
        let a = ZeroPattern::new(8, vec![2]).unwrap();
        let b = ZeroPattern::new(8, vec![2, 5]).unwrap();
        assert!(a.is_strict_subset_of(&b));
        assert!(!b.is_strict_subset_of(&a));
        assert!(!a.is_strict_subset_of(&a));
        assert_eq!(ZeroPattern::from_mask(b.mask()), b);
    }
}
