//! Covering approximation space over attributes.

use crate::discernibility::SetFamily;
use crate::error::{Error, Result};
use crate::set::{AttrId, AttrSet};

/// A ground set together with a family of non-empty subsets covering it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringSpace {
    ground: AttrSet,
    cover: SetFamily,
}

/// The four conditions that characterise `{x}` being a cover member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SingletonReport {
    /// `{x}` is a member of the cover.
    pub singleton_member: bool,
    /// `Md(x) = {{x}}`.
    pub description_is_singleton: bool,
    /// The covering lower approximation of `{x}` is `{x}`.
    pub lower_fixes_singleton: bool,
    /// `Md(x)` consists of exactly the lower approximation of `{x}`.
    pub description_is_lower: bool,
}

impl SingletonReport {
    pub fn all_equal(&self) -> bool {
        let v = self.singleton_member;
        self.description_is_singleton == v
            && self.lower_fixes_singleton == v
            && self.description_is_lower == v
    }

    pub fn all_true(&self) -> bool {
        self.all_equal() && self.singleton_member
    }
}

impl CoveringSpace {
    /// Rejects covers whose union differs from `ground`.
    pub fn new(ground: AttrSet, cover: SetFamily) -> Result<Self> {
        let union = cover.union();
        if union != ground {
            let extra = union.difference(&ground);
            let missing = ground.difference(&union);
            return Err(Error::Input(format!(
                "not a covering: members leave {missing:?} uncovered and reach outside the ground set at {extra:?}"
            )));
        }
        Ok(CoveringSpace { ground, cover })
    }

    /// Uses the union of `cover` as the ground set.
    pub fn from_family(cover: SetFamily) -> Self {
        CoveringSpace {
            ground: cover.union(),
            cover,
        }
    }

    /// Adds `{x}` for every element of `ground` that no member reaches.
    pub fn with_singleton_padding(ground: AttrSet, cover: SetFamily) -> Result<Self> {
        let mut cover = cover;
        for x in &ground.difference(&cover.union()) {
            cover.insert(AttrSet::singleton(x));
        }
        Self::new(ground, cover)
    }

    pub fn ground(&self) -> &AttrSet {
        &self.ground
    }

    pub fn cover(&self) -> &SetFamily {
        &self.cover
    }

    /// Elements of `universe` that lie outside the ground set.
    pub fn uncovered(&self, universe: &AttrSet) -> AttrSet {
        universe.difference(&self.ground)
    }

    fn check_covered(&self, x: AttrId) -> Result<()> {
        if self.ground.contains(x) {
            Ok(())
        } else {
            Err(Error::Input(format!("element {x} is not covered")))
        }
    }

    /// `Md(x)`: the ⊆-minimal members containing `x`.
    pub fn minimal_description(&self, x: AttrId) -> Result<SetFamily> {
        self.check_covered(x)?;
        let containing = self.cover.n_of(x);
        Ok(containing.filter(|k| !containing.iter().any(|s| s.is_proper_subset(k))))
    }

    /// Intersection of all members containing `x`.
    pub fn neighborhood(&self, x: AttrId) -> Result<AttrSet> {
        self.check_covered(x)?;
        let mut members = self.cover.iter().filter(|k| k.contains(x));
        let first = members.next().cloned().unwrap_or_default();
        Ok(members.fold(first, |acc, k| acc.intersection(k)))
    }

    /// Union of members inside `x`.
    pub fn lower(&self, x: &AttrSet) -> AttrSet {
        let mut out = AttrSet::new();
        for k in self.cover.iter().filter(|k| k.is_subset(x)) {
            out.union_with(k);
        }
        out
    }

    /// Union of members meeting `x`.
    pub fn upper(&self, x: &AttrSet) -> AttrSet {
        let mut out = AttrSet::new();
        for k in self.cover.iter().filter(|k| k.intersects(x)) {
            out.union_with(k);
        }
        out
    }

    pub fn singleton_equivalences(&self, x: AttrId) -> Result<SingletonReport> {
        let md = self.minimal_description(x)?;
        let single = AttrSet::singleton(x);
        let lower = self.lower(&single);
        Ok(SingletonReport {
            singleton_member: self.cover.contains(&single),
            description_is_singleton: md.len() == 1 && md.contains(&single),
            lower_fixes_singleton: lower == single,
            description_is_lower: md.len() == 1 && md.contains(&lower),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(ids: &[usize]) -> AttrSet {
        ids.iter().copied().collect()
    }

    fn fam(sets: &[&[usize]]) -> SetFamily {
        sets.iter().map(|x| s(x)).collect()
    }

    #[test]
    fn rejects_non_covering() {
        assert!(CoveringSpace::new(s(&[0, 1, 2]), fam(&[&[0, 1]])).is_err());
        let padded = CoveringSpace::with_singleton_padding(s(&[0, 1, 2]), fam(&[&[0, 1]])).unwrap();
        assert!(padded.cover().contains(&s(&[2])));
    }

    #[test]
    fn singleton_cover() {
        let space = CoveringSpace::from_family(fam(&[&[0], &[1]]));
        assert_eq!(space.minimal_description(1).unwrap(), fam(&[&[1]]));
        assert!(space.singleton_equivalences(0).unwrap().all_true());
    }

    #[test]
    fn single_member_cover() {
        let space = CoveringSpace::from_family(fam(&[&[0, 3, 5]]));
        assert_eq!(space.neighborhood(3).unwrap(), s(&[0, 3, 5]));
        assert!(space.neighborhood(1).is_err());
        assert!(space.minimal_description(1).is_err());
        let report = space.singleton_equivalences(3).unwrap();
        assert!(report.all_equal() && !report.singleton_member);
    }

    #[test]
    fn trivial_approximations() {
        let space = CoveringSpace::from_family(fam(&[&[0, 1], &[1, 2]]));
        assert!(space.lower(&AttrSet::new()).is_empty());
        assert!(space.upper(&AttrSet::new()).is_empty());
        assert_eq!(space.lower(space.ground()), *space.ground());
        assert_eq!(space.upper(space.ground()), *space.ground());
    }

    proptest! {
        #[test]
        fn covering_laws(
            sets in prop::collection::vec(prop::collection::btree_set(0usize..8, 1..5), 1..10),
            xs in prop::collection::btree_set(0usize..8, 0..8),
        ) {
            let cover: SetFamily = sets.into_iter().map(|x| x.into_iter().collect()).collect();
            let space = CoveringSpace::from_family(cover);
            let x: AttrSet = xs.into_iter().collect();
            prop_assert!(space.lower(&x).is_subset(&x));
            prop_assert!(x.intersection(space.ground()).is_subset(&space.upper(&x)));
            for e in space.ground() {
                prop_assert!(space.singleton_equivalences(e).unwrap().all_equal());
                let nb = space.neighborhood(e).unwrap();
                prop_assert!(nb.contains(e));
                prop_assert!(space.cover().iter().filter(|k| k.contains(e)).all(|k| nb.is_subset(k)));
            }
        }
    }
}
