//! Fixed-universe bit sets over poset element indices.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

const WORD_BITS: usize = 64;

/// A subset of `{0, .., universe - 1}` stored as little-endian 64-bit words.
///
/// All sets built for the same poset share the same word count, so equality
/// and hashing are word-wise. Ordering compares the sets as unsigned integers
/// (bit `i` has weight `2^i`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: SmallVec<[u64; 1]>,
}

fn word_count(universe: usize) -> usize {
    universe.div_ceil(WORD_BITS).max(1)
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            words: SmallVec::from_elem(0, word_count(universe)),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for (w, word) in set.words.iter_mut().enumerate() {
            let lo = w * WORD_BITS;
            let hi = (lo + WORD_BITS).min(universe);
            if hi > lo {
                let n = hi - lo;
                *word = if n == WORD_BITS {
                    u64::MAX
                } else {
                    (1u64 << n) - 1
                };
            }
        }
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut set = Self::empty(universe);
        for i in items {
            set.insert(i);
        }
        set
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / WORD_BITS)
            .is_some_and(|w| w >> (i % WORD_BITS) & 1 == 1)
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
    }

    pub fn with(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.insert(i);
        s
    }

    pub fn without(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.remove(i);
        s
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn union_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Complement relative to `{0, .., universe - 1}`.
    pub fn complement(&self, universe: usize) -> Self {
        Self::full(universe).difference(self)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Indices in increasing order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Little-endian words, bit `i` of word `w` standing for index `64 * w + i`.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(self.words.len(), other.words.len());
        ElementSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * WORD_BITS + bit);
            }
            self.word += 1;
            self.current = *self.words.get(self.word)?;
        }
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_sets_respect_universe() {
        assert_eq!(ElementSet::full(0).len(), 0);
        assert_eq!(ElementSet::full(3).words(), &[0b111]);
        assert_eq!(ElementSet::full(64).len(), 64);
        let wide = ElementSet::full(70);
        assert_eq!(wide.len(), 70);
        assert!(wide.contains(69));
        assert!(!wide.contains(70));
    }

    #[test]
    fn ordering_is_integer_order_across_words() {
        let low = ElementSet::from_indices(100, [0, 1, 2, 3]);
        let high = ElementSet::from_indices(100, [70]);
        assert!(low < high);
        assert!(ElementSet::empty(100) < low);
    }

    proptest! {
        #[test]
        fn iter_round_trips(items in proptest::collection::btree_set(0usize..130, 0..40)) {
            let set = ElementSet::from_indices(130, items.iter().copied());
            let back: Vec<usize> = set.iter().collect();
            prop_assert_eq!(back, items.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(set.len(), items.len());
        }

        #[test]
        fn complement_partitions(items in proptest::collection::btree_set(0usize..90, 0..40)) {
            let set = ElementSet::from_indices(90, items);
            let comp = set.complement(90);
            prop_assert!(set.is_disjoint(&comp));
            prop_assert_eq!(set.union(&comp), ElementSet::full(90));
            prop_assert_eq!(comp.complement(90), set);
        }
    }
}
