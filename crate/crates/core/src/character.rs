//! Attribute characters: core, relative necessary and unnecessary.
//!
//! Two independent rules are implemented. [`classify`] looks at singleton
//! members and at the union of the absorbed family. [`classify_by_refinement`]
//! compares `E(a)` with `N(a)`. [`classify_all`] runs both and refuses to
//! answer if they ever disagree.

use std::fmt;

use crate::discernibility::SetFamily;
use crate::error::{Error, Result};
use crate::set::{AttrId, AttrSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Character {
    /// In every reduct.
    Core,
    /// In some but not all reducts.
    RelativeNecessary,
    /// In no reduct.
    Unnecessary,
}

impl Character {
    pub fn as_str(self) -> &'static str {
        match self {
            Character::Core => "core",
            Character::RelativeNecessary => "relative_necessary",
            Character::Unnecessary => "unnecessary",
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether every member of `coarse` contains some member of `fine`.
pub fn is_refinement(fine: &SetFamily, coarse: &SetFamily) -> bool {
    coarse.iter().all(|k| fine.iter().any(|m| m.is_subset(k)))
}

/// Refinement plus the converse: every member of `fine` sits inside some
/// member of `coarse`.
pub fn precise_refines(fine: &SetFamily, coarse: &SetFamily) -> bool {
    is_refinement(fine, coarse) && fine.iter().all(|m| coarse.iter().any(|k| m.is_subset(k)))
}

/// For each `K ∈ N(a)` the canonically first `M ∈ E(a)` inside it, paired
/// with `K`. `Err(K)` names the first `K` without one.
fn refinement_pairs(f: &SetFamily, a: AttrId) -> Result<Vec<(AttrSet, AttrSet)>, AttrSet> {
    let e = f.e_of(a).canonical();
    f.n_of(a)
        .iter()
        .map(|k| match e.iter().find(|m| m.is_subset(k)) {
            Some(m) => Ok((k.clone(), m.clone())),
            None => Err(k.clone()),
        })
        .collect()
}

/// A subfamily `M ⊆ E(a)` that precise-refines `N(a)`, if one exists.
pub fn precise_refinement_witness(f: &SetFamily, a: AttrId) -> Option<SetFamily> {
    refinement_pairs(f, a)
        .ok()
        .map(|pairs| pairs.into_iter().map(|(_, m)| m).collect())
}

/// Singleton membership, then membership in the union of the ⊆-minimal
/// members.
pub fn classify(f: &SetFamily, a: AttrId) -> Character {
    if f.contains(&AttrSet::singleton(a)) {
        Character::Core
    } else if f.absorb().d_reduct.union().contains(a) {
        Character::RelativeNecessary
    } else {
        Character::Unnecessary
    }
}

/// Singleton membership, then whether `E(a)` refines `N(a)`.
pub fn classify_by_refinement(f: &SetFamily, a: AttrId) -> Character {
    if f.contains(&AttrSet::singleton(a)) {
        Character::Core
    } else if is_refinement(&f.e_of(a), &f.n_of(a)) {
        Character::Unnecessary
    } else {
        Character::RelativeNecessary
    }
}

/// Why an attribute received its character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// `{a}` is a member.
    Core { singleton: AttrSet },
    /// A member of `N(a)` containing no member of `E(a)`.
    RelativeNecessary { blocking: AttrSet },
    /// `(K, M)` with `K ∈ N(a)`, `M ∈ E(a)`, `M ⊆ K`, one pair per `K`.
    Unnecessary { witnesses: Vec<(AttrSet, AttrSet)> },
}

impl Evidence {
    /// Re-validates the evidence for attribute `a` against `f`.
    pub fn recheck(&self, f: &SetFamily, a: AttrId) -> bool {
        let n = f.n_of(a);
        let e = f.e_of(a);
        match self {
            Evidence::Core { singleton } => {
                *singleton == AttrSet::singleton(a) && f.contains(singleton)
            }
            Evidence::RelativeNecessary { blocking } => {
                !f.contains(&AttrSet::singleton(a))
                    && n.contains(blocking)
                    && !e.iter().any(|m| m.is_subset(blocking))
            }
            Evidence::Unnecessary { witnesses } => {
                witnesses.len() == n.len()
                    && witnesses
                        .iter()
                        .all(|(k, m)| n.contains(k) && e.contains(m) && m.is_subset(k))
                    && n.iter().all(|k| witnesses.iter().any(|(w, _)| w == k))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttributeCharacter {
    pub attribute: AttrId,
    pub character: Character,
    pub evidence: Evidence,
    pub n: SetFamily,
    pub e: SetFamily,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterReport {
    pub attributes: Vec<AttributeCharacter>,
}

impl CharacterReport {
    fn collect(&self, c: Character) -> AttrSet {
        self.attributes
            .iter()
            .filter(|x| x.character == c)
            .map(|x| x.attribute)
            .collect()
    }

    pub fn core(&self) -> AttrSet {
        self.collect(Character::Core)
    }

    pub fn relative_necessary(&self) -> AttrSet {
        self.collect(Character::RelativeNecessary)
    }

    pub fn unnecessary(&self) -> AttrSet {
        self.collect(Character::Unnecessary)
    }

    pub fn character_of(&self, a: AttrId) -> Option<Character> {
        self.attributes
            .iter()
            .find(|x| x.attribute == a)
            .map(|x| x.character)
    }
}

/// Classifies attributes `0..n_attributes` with both rules and attaches
/// evidence.
pub fn classify_all(f: &SetFamily, n_attributes: usize) -> Result<CharacterReport> {
    let reduct_union = f.absorb().d_reduct.union();
    let mut attributes = Vec::with_capacity(n_attributes);
    for a in 0..n_attributes {
        let singleton = AttrSet::singleton(a);
        let by_absorption = if f.contains(&singleton) {
            Character::Core
        } else if reduct_union.contains(a) {
            Character::RelativeNecessary
        } else {
            Character::Unnecessary
        };
        let by_refinement = classify_by_refinement(f, a);
        if by_absorption != by_refinement {
            return Err(Error::Invariant(format!(
                "attribute {a}: absorption rule says {by_absorption}, refinement rule says {by_refinement}"
            )));
        }
        let evidence = match by_absorption {
            Character::Core => Evidence::Core { singleton },
            _ => match refinement_pairs(f, a) {
                Ok(witnesses) => Evidence::Unnecessary { witnesses },
                Err(blocking) => Evidence::RelativeNecessary { blocking },
            },
        };
        let consistent = matches!(
            (&evidence, by_absorption),
            (Evidence::Core { .. }, Character::Core)
                | (
                    Evidence::RelativeNecessary { .. },
                    Character::RelativeNecessary
                )
                | (Evidence::Unnecessary { .. }, Character::Unnecessary)
        );
        if !consistent || !evidence.recheck(f, a) {
            return Err(Error::Invariant(format!(
                "attribute {a}: evidence {evidence:?} does not support {by_absorption}"
            )));
        }
        attributes.push(AttributeCharacter {
            attribute: a,
            character: by_absorption,
            evidence,
            n: f.n_of(a),
            e: f.e_of(a),
        });
    }
    Ok(CharacterReport { attributes })
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
    fn refinement_edge_cases() {
        let empty = SetFamily::new();
        assert!(is_refinement(&empty, &empty));
        assert!(precise_refines(&empty, &empty));
        let f = fam(&[&[0, 1], &[2]]);
        assert!(precise_refines(&f, &f));
        assert!(!precise_refines(&fam(&[&[1, 2]]), &fam(&[&[0, 1]])));
        // refinement without the converse containment
        let fine = fam(&[&[0], &[5]]);
        let coarse = fam(&[&[0, 1]]);
        assert!(is_refinement(&fine, &coarse));
        assert!(!precise_refines(&fine, &coarse));
    }

    #[test]
    fn constant_attribute_is_unnecessary() {
        let f = fam(&[&[0, 1]]);
        assert_eq!(classify(&f, 2), Character::Unnecessary);
        assert_eq!(classify_by_refinement(&f, 2), Character::Unnecessary);
        assert_eq!(precise_refinement_witness(&f, 2), Some(SetFamily::new()));
    }

    #[test]
    fn empty_family_everything_unnecessary() {
        let report = classify_all(&SetFamily::new(), 3).unwrap();
        assert_eq!(report.unnecessary(), s(&[0, 1, 2]));
        assert!(report.core().is_empty());
    }

    #[test]
    fn singleton_member_is_core() {
        let f = fam(&[&[1], &[0, 1]]);
        let report = classify_all(&f, 2).unwrap();
        assert_eq!(report.core(), s(&[1]));
        assert_eq!(report.unnecessary(), s(&[0]));
    }

    fn random_family() -> impl Strategy<Value = SetFamily> {
        prop::collection::vec(prop::collection::btree_set(0usize..6, 1..4), 0..8)
            .prop_map(|sets| sets.into_iter().map(|x| x.into_iter().collect()).collect())
    }

    proptest! {
        #[test]
        fn rules_agree_and_witnesses_are_sound(f in random_family()) {
            let report = classify_all(&f, 6).unwrap();
            for entry in &report.attributes {
                let a = entry.attribute;
                prop_assert_eq!(classify(&f, a), classify_by_refinement(&f, a));
                let n = f.n_of(a);
                let e = f.e_of(a);
                let witness = precise_refinement_witness(&f, a);
                prop_assert_eq!(witness.is_some(), is_refinement(&e, &n));
                if let Some(m) = witness {
                    prop_assert!(m.iter().all(|x| e.contains(x) && !n.contains(x)));
                    prop_assert!(precise_refines(&m, &n));
                }
            }
        }

        #[test]
        fn precise_implies_plain(f1 in random_family(), f2 in random_family()) {
            if precise_refines(&f1, &f2) {
                prop_assert!(is_refinement(&f1, &f2));
            }
        }
    }
}
