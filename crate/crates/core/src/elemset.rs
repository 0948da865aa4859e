use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

/// Membership bitmask over the element indices of a finite ring.
///
/// Ordered by cardinality first and then by the bitmask read as a binary
/// number (element index `i` has weight `2^i`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet(FixedBitSet);

impl ElemSet {
    pub fn empty(universe: usize) -> Self {
        ElemSet(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ElemSet(bits)
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(universe);
        for i in indices {
            set.insert(i);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0.insert(i);
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &ElemSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut out = self.0.clone();
        out.intersect_with(&other.0);
        ElemSet(out)
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut out = self.0.clone();
        out.union_with(&other.0);
        ElemSet(out)
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &ElemSet) {
        self.0.intersect_with(&other.0);
    }

    /// Some element of `self` missing from `other`, smallest index first.
    pub fn first_outside(&self, other: &ElemSet) -> Option<usize> {
        self.0.difference(&other.0).next()
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            match self.0.symmetric_difference(&other.0).last() {
                None => Ordering::Equal,
                Some(top) if self.contains(top) => Ordering::Greater,
                Some(_) => Ordering::Less,
            }
        })
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
