//! Dense index sets backed by a growable bit vector.
//!
//! [`IdSet`] is tagged with a marker type so attribute sets and object sets
//! cannot be mixed up by accident. Trailing zero words are always trimmed,
//! which keeps structural equality and hashing equal to set equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;

const WORD_BITS: usize = 64;

/// Marker for sets of attribute indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Attr;

/// Marker for sets of object indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Obj;

/// A finite set of dense indices.
pub struct IdSet<K> {
    words: Vec<u64>,
    kind: PhantomData<K>,
}

// Written by hand so that no bounds are placed on the marker type.
impl<K> Clone for IdSet<K> {
    fn clone(&self) -> Self {
        IdSet {
            words: self.words.clone(),
            kind: PhantomData,
        }
    }
}

impl<K> Default for IdSet<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K> PartialEq for IdSet<K> {
    fn eq(&self, other: &Self) -> bool {
        self.words == other.words
    }
}

impl<K> Eq for IdSet<K> {}

impl<K> Hash for IdSet<K> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.words.hash(state);
    }
}

/// Attribute index.
pub type AttrId = usize;
/// Object index.
pub type ObjectId = usize;

pub type AttrSet = IdSet<Attr>;
pub type ObjSet = IdSet<Obj>;

impl<K> IdSet<K> {
    pub fn new() -> Self {
        IdSet {
            words: Vec::new(),
            kind: PhantomData,
        }
    }

    pub fn singleton(index: usize) -> Self {
        let mut set = Self::new();
        set.insert(index);
        set
    }

    /// The set `{0, 1, .., len - 1}`.
    pub fn full(len: usize) -> Self {
        let mut words = vec![u64::MAX; len / WORD_BITS];
        let rem = len % WORD_BITS;
        if rem > 0 {
            words.push((1u64 << rem) - 1);
        }
        IdSet {
            words,
            kind: PhantomData,
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    /// Inserts `index`, returning `true` if it was not already present.
    pub fn insert(&mut self, index: usize) -> bool {
        let (w, b) = (index / WORD_BITS, index % WORD_BITS);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, index: usize) -> bool {
        let (w, b) = (index / WORD_BITS, index % WORD_BITS);
        match self.words.get_mut(w) {
            Some(word) if *word & (1 << b) != 0 => {
                *word &= !(1 << b);
                self.trim();
                true
            }
            _ => false,
        }
    }

    pub fn contains(&self, index: usize) -> bool {
        self.words
            .get(index / WORD_BITS)
            .is_some_and(|w| w & (1 << (index % WORD_BITS)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Largest member.
    pub fn last(&self) -> Option<usize> {
        let w = self.words.len().checked_sub(1)?;
        let word = self.words[w];
        Some(w * WORD_BITS + (WORD_BITS - 1 - word.leading_zeros() as usize))
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.len() <= other.words.len()
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &Self) -> bool {
        other.is_subset(self)
    }

    pub fn is_proper_subset(&self, other: &Self) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        !self.intersects(other)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &Self) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = IdSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
            kind: PhantomData,
        };
        out.trim();
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn difference_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        self.trim();
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl<K> FromIterator<usize> for IdSet<K> {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = Self::new();
        for i in iter {
            set.insert(i);
        }
        set
    }
}

impl<K> Extend<usize> for IdSet<K> {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        for i in iter {
            self.insert(i);
        }
    }
}

impl<'a, K> IntoIterator for &'a IdSet<K> {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// Lexicographic order on the ascending member sequences, so `{0,5} < {1}`
/// and a prefix sorts before its extensions.
impl<K> Ord for IdSet<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl<K> PartialOrd for IdSet<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<K> fmt::Debug for IdSet<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word_index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_index * WORD_BITS + bit);
            }
            self.word_index += 1;
            self.current = *self.words.get(self.word_index)?;
        }
    }
}

/// Orders sets by cardinality, then lexicographically on their members.
pub fn canonical_cmp<K>(a: &IdSet<K>, b: &IdSet<K>) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn insert_remove_trims() {
        let mut s = AttrSet::new();
        assert!(s.insert(130));
        assert!(!s.insert(130));
        assert!(s.insert(3));
        assert_eq!(s.to_vec(), vec![3, 130]);
        assert!(s.remove(130));
        assert_eq!(s, AttrSet::singleton(3));
        assert_eq!(s.last(), Some(3));
    }

    #[test]
    fn full_set() {
        assert_eq!(AttrSet::full(0), AttrSet::new());
        assert_eq!(AttrSet::full(64).len(), 64);
        assert_eq!(AttrSet::full(70).to_vec(), (0..70).collect::<Vec<_>>());
    }

    #[test]
    fn lexicographic_order() {
        let a: AttrSet = [0, 5].into_iter().collect();
        let b = AttrSet::singleton(1);
        let c = AttrSet::singleton(0);
        assert!(a < b);
        assert!(c < a);
        assert_eq!(canonical_cmp(&b, &a), Ordering::Less);
    }

    fn model() -> impl Strategy<Value = BTreeSet<usize>> {
        prop::collection::btree_set(0usize..150, 0..12)
    }

    proptest! {
        #[test]
        fn agrees_with_btreeset(a in model(), b in model()) {
            let sa: AttrSet = a.iter().copied().collect();
            let sb: AttrSet = b.iter().copied().collect();
            let v = |s: &AttrSet| s.iter().collect::<BTreeSet<_>>();
            prop_assert_eq!(v(&sa.union(&sb)), a.union(&b).copied().collect::<BTreeSet<_>>());
            prop_assert_eq!(v(&sa.intersection(&sb)), a.intersection(&b).copied().collect::<BTreeSet<_>>());
            prop_assert_eq!(v(&sa.difference(&sb)), a.difference(&b).copied().collect::<BTreeSet<_>>());
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
            prop_assert_eq!(sa.intersects(&sb), !a.is_disjoint(&b));
            prop_assert_eq!(sa.len(), a.len());
            prop_assert_eq!(sa.last(), a.iter().next_back().copied());
            prop_assert_eq!(sa.cmp(&sb), a.iter().cmp(b.iter()));
            // trimmed representation makes structural equality set equality
            let rebuilt: AttrSet = sa.iter().collect();
            prop_assert_eq!(rebuilt, sa.intersection(&sa.union(&sb)));
        }
    }
}
