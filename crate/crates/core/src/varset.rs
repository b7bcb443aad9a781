//! Fixed-width subsets of the variable indices `1..=64`.
//!
//! Bit `i - 1` of the mask stands for variable `x_i`. All public methods
//! speak 1-based indices; the raw mask is exposed for the hot loops in the
//! solvers.

use std::cmp::Ordering;
use std::fmt;

/// Largest ambient variable count representable by a [`VarSet`].
pub const MAX_VARS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VarSet(u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    #[inline]
    pub const fn from_mask(mask: u64) -> Self {
        VarSet(mask)
    }

    #[inline]
    pub const fn mask(self) -> u64 {
        self.0
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        if n == MAX_VARS {
            VarSet(u64::MAX)
        } else {
            VarSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!((1..=MAX_VARS).contains(&i));
        VarSet(1u64 << (i - 1))
    }

    /// Builds a set from 1-based indices. Indices outside `1..=64` are
    /// rejected by returning `None`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Option<Self> {
        let mut mask = 0u64;
        for i in indices {
            if !(1..=MAX_VARS).contains(&i) {
                return None;
            }
            mask |= 1u64 << (i - 1);
        }
        Some(VarSet(mask))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_VARS).contains(&i) && self.0 & (1u64 << (i - 1)) != 0
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        VarSet(self.0 | (1u64 << (i - 1)))
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        VarSet(self.0 & !(1u64 << (i - 1)))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn union(self, other: VarSet) -> Self {
        VarSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: VarSet) -> Self {
        VarSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: VarSet) -> Self {
        VarSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_disjoint(self, other: VarSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest index in the set.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    /// Largest index in the set.
    pub fn last(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(64 - self.0.leading_zeros() as usize)
        }
    }

    /// Ascending 1-based indices.
    pub fn iter(self) -> Indices {
        Indices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, starting with `self` and ending with the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            of: self.0,
            next: Some(self.0),
        }
    }

    /// All subsets of `self` with exactly `k` elements, in increasing mask order.
    pub fn subsets_of_size(self, k: usize) -> impl Iterator<Item = VarSet> {
        let mut out: Vec<VarSet> = self.subsets().filter(|s| s.len() == k).collect();
        out.sort_by_key(|s| s.0);
        out.into_iter()
    }
}

/// Lexicographic order on the ascending index lists, so `{1,2} < {1,2,3} < {1,3} < {2}`.
impl Ord for VarSet {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        let diff = self.0 ^ other.0;
        let bit = diff & diff.wrapping_neg();
        let above = !((bit << 1).wrapping_sub(1));
        let (holder, other_mask) = if self.0 & bit != 0 {
            (Ordering::Less, other.0)
        } else {
            (Ordering::Greater, self.0)
        };
        // The set lacking the differing element is a prefix of the other iff
        // it has nothing beyond that element.
        if other_mask & above & !bit == 0 && other_mask & bit == 0 {
            holder.reverse()
        } else {
            holder
        }
    }
}

impl PartialOrd for VarSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for i in self.iter() {
            write!(f, "x{i}")?;
        }
        Ok(())
    }
}

pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Indices {}

pub struct Subsets {
    of: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VarSet;

    fn next(&mut self) -> Option<VarSet> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & self.of)
        };
        Some(VarSet(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(ix: &[usize]) -> VarSet {
        VarSet::from_indices(ix.iter().copied()).unwrap()
    }

    #[test]
    fn lex_order_matches_index_lists() {
        let mut sets = [
            vs(&[2]),
            vs(&[1, 3]),
            vs(&[1, 2, 3]),
            vs(&[1, 2]),
            vs(&[]),
            vs(&[1]),
        ];
        sets.sort();
        let lists: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
        let mut expected = lists.clone();
        expected.sort();
        assert_eq!(lists, expected);
    }

    #[test]
    fn lex_order_agrees_with_vec_order_exhaustively() {
        let all: Vec<VarSet> = VarSet::full(5).subsets().collect();
        for &a in &all {
            for &b in &all {
                assert_eq!(a.cmp(&b), a.to_vec().cmp(&b.to_vec()), "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn subsets_enumerates_power_set() {
        assert_eq!(vs(&[1, 3, 5]).subsets().count(), 8);
        assert_eq!(VarSet::EMPTY.subsets().count(), 1);
        assert_eq!(VarSet::full(4).subsets_of_size(2).count(), 6);
    }

    #[test]
    fn bounds() {
        assert_eq!(VarSet::full(64).len(), 64);
        assert!(VarSet::from_indices([0]).is_none());
        assert!(VarSet::from_indices([65]).is_none());
        assert_eq!(vs(&[3, 7]).first(), Some(3));
        assert_eq!(vs(&[3, 7]).last(), Some(7));
    }
}
