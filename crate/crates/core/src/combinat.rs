//! Binomial coefficients and lexicographic subset streams.

use std::ops::ControlFlow;

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

/// `sum_{j=lo}^{hi} C(n, j)`, saturating.
pub fn binomial_sum(n: u64, lo: u64, hi: u64) -> u64 {
    (lo..=hi).fold(0u64, |acc, j| acc.saturating_add(binomial(n, j)))
}

/// All subsets of `universe` with at most `max_len` elements, as ascending
/// sequences of universe members, in lexicographic order. The empty set comes
/// first. `universe` must be sorted ascending.
///
/// ```
/// use pooldesign_core::combinat::SubsetsUpTo;
/// let all: Vec<_> = SubsetsUpTo::new(vec![0, 1, 2], 2).collect();
/// assert_eq!(all, vec![
///     vec![], vec![0], vec![0, 1], vec![0, 2], vec![1], vec![1, 2], vec![2],
/// ]);
/// ```
#[derive(Debug, Clone)]
pub struct SubsetsUpTo {
    universe: Vec<usize>,
    max_len: usize,
    // positions into `universe`
    cursor: Vec<usize>,
    started: bool,
    done: bool,
}

impl SubsetsUpTo {
    pub fn new(universe: Vec<usize>, max_len: usize) -> Self {
        Self {
            universe,
            max_len,
            cursor: Vec::new(),
            started: false,
            done: false,
        }
    }

    /// Subsets of `{0, ..., n-1}`.
    pub fn of_range(n: usize, max_len: usize) -> Self {
        Self::new((0..n).collect(), max_len)
    }

    fn advance(&mut self) -> bool {
        let n = self.universe.len();
        // Extend by the next element if allowed.
        if self.cursor.len() < self.max_len {
            let next = self.cursor.last().map_or(0, |&p| p + 1);
            if next < n {
                self.cursor.push(next);
                return true;
            }
        }
        // Otherwise bump the last element, popping exhausted positions.
        while let Some(last) = self.cursor.pop() {
            if last + 1 < n {
                self.cursor.push(last + 1);
                return true;
            }
        }
        false
    }
}

impl Iterator for SubsetsUpTo {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(self.cursor.iter().map(|&i| self.universe[i]).collect())
    }
}

/// Calls `f` on every `k`-element subset of `universe` (as a slice of
/// universe members, in universe order), lexicographically by position,
/// stopping early on `Break`. The slice buffer is reused between calls.
pub fn try_for_each_combination<B>(
    universe: &[usize],
    k: usize,
    mut f: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let n = universe.len();
    if k > n {
        return ControlFlow::Continue(());
    }
    let mut pos: Vec<usize> = (0..k).collect();
    let mut buf: Vec<usize> = pos.iter().map(|&i| universe[i]).collect();
    loop {
        f(&buf)?;
        // rightmost position that can still move
        let Some(i) = (0..k).rev().find(|&i| pos[i] < n - k + i) else {
            return ControlFlow::Continue(());
        };
        pos[i] += 1;
        buf[i] = universe[pos[i]];
        for j in i + 1..k {
            pos[j] = pos[j - 1] + 1;
            buf[j] = universe[pos[j]];
        }
    }
}
