//! Discernibility matrices, set families and the per-attribute families
//! `N(a)` and `E(a)`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::model::InformationSystem;
use crate::set::{canonical_cmp, AttrId, AttrSet, ObjectId};

/// Default attribute cap for the exhaustive reduct routes.
pub const DEFAULT_ORACLE_CAP: usize = 20;

/// Attribute sets discerning each unordered pair of objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscernibilityMatrix {
    n_objects: usize,
    n_attributes: usize,
    // upper triangle, row-major: (0,1), (0,2), .., (1,2), ..
    entries: Vec<AttrSet>,
}

impl DiscernibilityMatrix {
    pub fn new(is: &InformationSystem) -> Self {
        let n = is.n_objects();
        let mut entries = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for x in 0..n {
            for y in x + 1..n {
                entries.push(
                    (0..is.n_attributes())
                        .filter(|&a| !is.agrees(x, y, a))
                        .collect(),
                );
            }
        }
        DiscernibilityMatrix {
            n_objects: n,
            n_attributes: is.n_attributes(),
            entries,
        }
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_attributes(&self) -> usize {
        self.n_attributes
    }

    fn offset(&self, x: ObjectId, y: ObjectId) -> usize {
        let n = self.n_objects;
        x * n - x * (x + 1) / 2 + (y - x - 1)
    }

    /// `d(x, y)`; symmetric. `None` on the diagonal or out of range.
    pub fn entry(&self, x: ObjectId, y: ObjectId) -> Option<&AttrSet> {
        let (x, y) = if x < y { (x, y) } else { (y, x) };
        if x == y || y >= self.n_objects {
            return None;
        }
        self.entries.get(self.offset(x, y))
    }

    /// Every `(x, y, d(x, y))` with `x < y`, row by row.
    pub fn pairs(&self) -> impl Iterator<Item = (ObjectId, ObjectId, &AttrSet)> + '_ {
        let n = self.n_objects;
        (0..n)
            .flat_map(move |x| (x + 1..n).map(move |y| (x, y)))
            .zip(&self.entries)
            .map(|((x, y), d)| (x, y, d))
    }

    /// Distinct non-empty entries, in order of first appearance.
    pub fn family(&self) -> SetFamily {
        self.entries.iter().cloned().collect()
    }
}

/// A duplicate-free collection of non-empty attribute sets.
///
/// Members keep the order in which they were first inserted; the reduct
/// algorithms scan in that order. Equality ignores order, and
/// [`SetFamily::canonical`] gives the (cardinality, lexicographic) listing
/// used for display.
#[derive(Clone, Default)]
pub struct SetFamily {
    sets: Vec<AttrSet>,
    index: HashSet<AttrSet>,
}

impl SetFamily {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `set` unless it is empty or already present.
    pub fn insert(&mut self, set: AttrSet) -> bool {
        if set.is_empty() || self.index.contains(&set) {
            return false;
        }
        self.index.insert(set.clone());
        self.sets.push(set);
        true
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: &AttrSet) -> bool {
        self.index.contains(set)
    }

    /// Members in insertion order.
    pub fn iter(&self) -> std::slice::Iter<'_, AttrSet> {
        self.sets.iter()
    }

    pub fn first(&self) -> Option<&AttrSet> {
        self.sets.first()
    }

    /// Members sorted by cardinality, then lexicographically.
    pub fn canonical(&self) -> Vec<AttrSet> {
        let mut sets = self.sets.clone();
        sets.sort_by(canonical_cmp);
        sets
    }

    /// Union of all members.
    pub fn union(&self) -> AttrSet {
        let mut out = AttrSet::new();
        for s in &self.sets {
            out.union_with(s);
        }
        out
    }

    /// `{a | {a} is a member}`.
    pub fn singleton_members(&self) -> AttrSet {
        self.sets
            .iter()
            .filter(|s| s.len() == 1)
            .filter_map(|s| s.first())
            .collect()
    }

    /// Members satisfying `keep`, order preserved.
    pub fn filter(&self, mut keep: impl FnMut(&AttrSet) -> bool) -> SetFamily {
        self.sets.iter().filter(|s| keep(s)).cloned().collect()
    }

    /// `N(a)`: members containing `a`.
    pub fn n_of(&self, a: AttrId) -> SetFamily {
        self.filter(|s| s.contains(a))
    }

    /// `E(a)`: members that avoid `a` but lie inside `∪N(a)`.
    pub fn e_of(&self, a: AttrId) -> SetFamily {
        let reach = self.n_of(a).union();
        self.filter(|s| !s.contains(a) && s.is_subset(&reach))
    }

    /// `E(a)` computed as the members inside `∪N(a) - {a}`; must equal
    /// [`SetFamily::e_of`].
    pub fn e_of_by_lower_approximation(&self, a: AttrId) -> SetFamily {
        let mut reach = self.n_of(a).union();
        reach.remove(a);
        self.filter(|s| s.is_subset(&reach))
    }

    /// Whether `b` meets every member. True for the empty family.
    pub fn hits_all(&self, b: &AttrSet) -> bool {
        self.sets.iter().all(|s| s.intersects(b))
    }

    /// First member, in canonical order, that `b` misses.
    pub fn first_missed(&self, b: &AttrSet) -> Option<AttrSet> {
        self.sets
            .iter()
            .filter(|s| s.is_disjoint(b))
            .min_by(|x, y| canonical_cmp(x, y))
            .cloned()
    }

    /// `{K - removed | K member}`, dropping members that become empty.
    pub fn subtract(&self, removed: &AttrSet) -> SetFamily {
        self.sets.iter().map(|s| s.difference(removed)).collect()
    }

    /// Splits the family into its ⊆-minimal members and the members that
    /// properly contain another member.
    pub fn absorb(&self) -> AbsorptionResult {
        let mut d_reduct = SetFamily::new();
        let mut d_reducible = SetFamily::new();
        for s in &self.sets {
            if self.sets.iter().any(|t| t.is_proper_subset(s)) {
                d_reducible.insert(s.clone());
            } else {
                d_reduct.insert(s.clone());
            }
        }
        AbsorptionResult {
            d_reduct,
            d_reducible,
        }
    }

    /// All minimal hitting sets, obtained as the prime implicants of the
    /// monotone CNF whose clauses are the members. Clauses are multiplied out
    /// one at a time, absorbing after each step.
    pub fn discernibility_function_reducts(&self, cap: usize) -> Result<Vec<AttrSet>> {
        let support = self.union().len();
        if support > cap {
            return Err(Error::Resource(format!(
                "the discernibility function ranges over {support} attributes, above the cap of {cap}; \
                 use the ea or yao reduct algorithms instead"
            )));
        }
        let mut terms = vec![AttrSet::new()];
        for clause in self.canonical() {
            let mut next = Vec::with_capacity(terms.len() * clause.len());
            for term in &terms {
                if term.intersects(&clause) {
                    next.push(term.clone());
                } else {
                    next.extend(clause.iter().map(|a| {
                        let mut t = term.clone();
                        t.insert(a);
                        t
                    }));
                }
            }
            terms = minimal_sets(next);
        }
        terms.sort_by(canonical_cmp);
        Ok(terms)
    }
}

/// Keeps the ⊆-minimal sets, deduplicated.
fn minimal_sets(mut sets: Vec<AttrSet>) -> Vec<AttrSet> {
    sets.sort_by(canonical_cmp);
    sets.dedup();
    let mut kept: Vec<AttrSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept
}

impl FromIterator<AttrSet> for SetFamily {
    fn from_iter<I: IntoIterator<Item = AttrSet>>(iter: I) -> Self {
        let mut f = SetFamily::new();
        for s in iter {
            f.insert(s);
        }
        f
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a AttrSet;
    type IntoIter = std::slice::Iter<'a, AttrSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.sets.iter().all(|s| other.contains(s))
    }
}

impl Eq for SetFamily {}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.canonical()).finish()
    }
}

/// Result of deleting reducible members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsorptionResult {
    /// ⊆-minimal members.
    pub d_reduct: SetFamily,
    /// Members with a proper subset in the family.
    pub d_reducible: SetFamily,
}
