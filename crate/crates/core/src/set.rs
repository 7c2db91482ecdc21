//! Small candidate sets as 128-bit masks over profile candidate indices.

use std::fmt;

pub const MAX_CANDIDATES: usize = 128;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateSet(u128);

impl CandidateSet {
    pub const EMPTY: CandidateSet = CandidateSet(0);

    pub fn from_bits(bits: u128) -> Self {
        CandidateSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_CANDIDATES);
        if n == MAX_CANDIDATES {
            CandidateSet(u128::MAX)
        } else {
            CandidateSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        CandidateSet(1u128 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_CANDIDATES && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u128 << i);
    }

    pub fn with(self, i: usize) -> Self {
        CandidateSet(self.0 | 1u128 << i)
    }

    pub fn without(self, i: usize) -> Self {
        CandidateSet(self.0 & !(1u128 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersection(self, other: Self) -> Self {
        CandidateSet(self.0 & other.0)
    }

    pub fn union(self, other: Self) -> Self {
        CandidateSet(self.0 | other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        CandidateSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing index order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }
}

impl FromIterator<usize> for CandidateSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = CandidateSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for CandidateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Every subset of `items` with exactly `k` members, in lexicographic index order.
pub fn k_subsets(items: &[usize], k: usize) -> Vec<CandidateSet> {
    fn rec(items: &[usize], k: usize, start: usize, cur: CandidateSet, out: &mut Vec<CandidateSet>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..=items.len() - k {
            rec(items, k - 1, i + 1, cur.with(items[i]), out);
        }
    }
    let mut out = Vec::new();
    if k <= items.len() {
        rec(items, k, 0, CandidateSet::EMPTY, &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}
