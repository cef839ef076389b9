//! Exhaustive checking of quantified statements about attribute characters
//! and attribute relations.
//!
//! Each [`Claim`] pairs a left-hand side computed from the complete list of
//! reducts with a right-hand side that quantifies over attribute subsets.
//! Both sides are evaluated by enumeration on a small system and every
//! instance is recorded, agreeing or not. Nothing here feeds back into
//! classification.
//!
//! Conventions used when evaluating right-hand sides:
//! - "`C` is finer than `a`" is partition refinement `U/R_C ≤ U/R_{a}`.
//! - "`C` is finer than `E(a)`" means `C` meets every member of `E(a)`.
//! - Exclusion claims range over `(C, a)` with `a ∉ C` and `C` inside some
//!   reduct.

use std::fmt;

use crate::covering::CoveringSpace;
use crate::discernibility::{DiscernibilityMatrix, SetFamily};
use crate::error::{Error, Result};
use crate::model::{InformationSystem, Partition};
use crate::reducers::all_reducts_bruteforce;
use crate::relations::{coupled, excludes};
use crate::set::{AttrId, AttrSet};

pub const DEFAULT_AUDIT_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    /// `a` unnecessary ⟺ every `C` finer than `E(a)` is finer than `a`.
    UnnecessaryByPartitions,
    /// `a` unnecessary ⟺ every `C` meeting all of `E(a)` meets all of `N(a)`.
    UnnecessaryByHitting,
    /// `a` relative necessary ⟺ `{a}` is no member and some `C` finer than
    /// `E(a)` is not finer than `a`.
    RelativeNecessaryByPartitions,
    /// `a` relative necessary ⟺ `{a}` is no member and some `C` meets all of
    /// `E(a)` while missing some `F ∈ N(a)`.
    RelativeNecessaryByHitting,
    /// `a` relative necessary ⟺ `{a}` is no member and every member avoiding
    /// `a` escapes some `K ∈ N(a)`.
    RelativeNecessaryByContainment,
    /// For a minimal member `d` and `a ∈ d` with `|d| ≥ 2`, some reduct
    /// avoids `d - {a}`.
    MinimalMemberAvoidance,
    /// `a` finer than `b` ⟺ `a` lies in every member of `N(b)`.
    FinerByMembership,
    /// `a` finer than `b` ⟺ `a` lies in the neighbourhood of `b`.
    FinerByNeighborhood,
    /// Same partition ⟺ `N(a) = N(b)`.
    EquivalentBySameFamilies,
    /// Coupled ⟺ every `C` finer than one of `a`, `b` is finer than the
    /// other.
    CoupledByPartitions,
    /// Coupled ⟺ `C ∪ {a}` finer than `b` forces `C` finer than `a`, and
    /// symmetrically.
    CoupledByExtension,
    /// Coupled ⟺ `C` meeting all of `N(b) - N(a)` meets all of `N(a)`, and
    /// symmetrically.
    CoupledByHitting,
    /// `C` excludes `a` ⟺ every `D` meeting all of `E(a) - N(C)` makes
    /// `C ∪ D` finer than `a`.
    ExcludesByExtension,
    /// `a` strictly finer than `b` ⟹ no reduct holds both.
    FinerPairNeverShareReduct,
}

impl Claim {
    pub const ALL: [Claim; 14] = [
        Claim::UnnecessaryByPartitions,
        Claim::UnnecessaryByHitting,
        Claim::RelativeNecessaryByPartitions,
        Claim::RelativeNecessaryByHitting,
        Claim::RelativeNecessaryByContainment,
        Claim::MinimalMemberAvoidance,
        Claim::FinerByMembership,
        Claim::FinerByNeighborhood,
        Claim::EquivalentBySameFamilies,
        Claim::CoupledByPartitions,
        Claim::CoupledByExtension,
        Claim::CoupledByHitting,
        Claim::ExcludesByExtension,
        Claim::FinerPairNeverShareReduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::UnnecessaryByPartitions => "unnecessary-by-partitions",
            Claim::UnnecessaryByHitting => "unnecessary-by-hitting",
            Claim::RelativeNecessaryByPartitions => "relative-necessary-by-partitions",
            Claim::RelativeNecessaryByHitting => "relative-necessary-by-hitting",
            Claim::RelativeNecessaryByContainment => "relative-necessary-by-containment",
            Claim::MinimalMemberAvoidance => "minimal-member-avoidance",
            Claim::FinerByMembership => "finer-by-membership",
            Claim::FinerByNeighborhood => "finer-by-neighborhood",
            Claim::EquivalentBySameFamilies => "equivalent-by-same-families",
            Claim::CoupledByPartitions => "coupled-by-partitions",
            Claim::CoupledByExtension => "coupled-by-extension",
            Claim::CoupledByHitting => "coupled-by-hitting",
            Claim::ExcludesByExtension => "excludes-by-extension",
            Claim::FinerPairNeverShareReduct => "finer-pair-never-share-reduct",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What a single audit entry is about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subject {
    Attribute(AttrId),
    Pair(AttrId, AttrId),
    SetAndAttribute(AttrSet, AttrId),
    MemberAndAttribute(AttrSet, AttrId),
}

/// The concrete object that decided a quantified right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// An attribute subset `C` (or `D`).
    Subset(AttrSet),
    /// A subset together with a member of the family.
    SubsetAndMember(AttrSet, AttrSet),
    /// A member of the family.
    Member(AttrSet),
    Reduct(AttrSet),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditEntry {
    pub claim: Claim,
    pub subject: Subject,
    pub lhs: bool,
    pub rhs: bool,
    pub witness: Option<Witness>,
}

impl AuditEntry {
    pub fn agree(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub instance: String,
    pub reducts: Vec<AttrSet>,
    pub entries: Vec<AuditEntry>,
}

/// Per-claim tallies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClaimSummary {
    pub claim: Claim,
    pub checked: usize,
    pub agreed: usize,
}

impl AuditReport {
    pub fn disagreements(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries.iter().filter(|e| !e.agree())
    }

    pub fn summary(&self) -> Vec<ClaimSummary> {
        Claim::ALL
            .iter()
            .map(|&claim| {
                let of_claim = self.entries.iter().filter(|e| e.claim == claim);
                ClaimSummary {
                    claim,
                    checked: of_claim.clone().count(),
                    agreed: of_claim.filter(|e| e.agree()).count(),
                }
            })
            .collect()
    }

    pub fn all_agree(&self, claim: Claim) -> bool {
        self.entries
            .iter()
            .filter(|e| e.claim == claim)
            .all(AuditEntry::agree)
    }
}

/// Subsets of `0..m` as bit masks.
struct Subsets {
    m: usize,
}

impl Subsets {
    fn count(&self) -> u32 {
        1 << self.m
    }

    fn set(&self, mask: u32) -> AttrSet {
        (0..self.m).filter(|i| mask & 1 << i != 0).collect()
    }
}

fn mask_of(set: &AttrSet) -> u32 {
    set.iter().fold(0, |m, a| m | 1 << a)
}

fn family_masks(f: &SetFamily) -> Vec<u32> {
    f.iter().map(mask_of).collect()
}

fn hits(masks: &[u32], c: u32) -> bool {
    masks.iter().all(|m| m & c != 0)
}

/// Evaluates every claim on `is` by exhaustive enumeration over attribute
/// subsets and the complete reduct list.
///
/// Refinement between attribute subsets is read off the partitions and
/// cross-checked against the discernibility family.
pub fn audit_theorems(
    is: &InformationSystem,
    max_attrs: usize,
    instance: &str,
) -> Result<AuditReport> {
    let m = is.n_attributes();
    check_cap(m, max_attrs)?;
    let f = DiscernibilityMatrix::new(is).family();
    let subsets = Subsets { m };
    let partitions: Vec<Partition> = (0..subsets.count())
        .map(|c| is.partition(&subsets.set(c)))
        .collect::<Result<_>>()?;
    let by_family = finer_by_hitting(&f, m);
    let mut finer = vec![vec![false; m]; subsets.count() as usize];
    for (c, p) in partitions.iter().enumerate() {
        for a in 0..m {
            finer[c][a] = p.refines(&partitions[1 << a])?;
            if finer[c][a] != by_family[c][a] {
                return Err(Error::Invariant(format!(
                    "refinement of {:?} over attribute {a}: partitions say {}, discernibility sets disagree",
                    subsets.set(c as u32),
                    finer[c][a]
                )));
            }
        }
    }
    audit_with(&f, m, max_attrs, instance, finer)
}

/// Same as [`audit_theorems`] for a bare family over attributes `0..m`.
/// `C` is taken to be finer than `a` when it meets every member holding `a`,
/// which is what the partitions would say for any table producing `f`.
pub fn audit_family(
    f: &SetFamily,
    m: usize,
    max_attrs: usize,
    instance: &str,
) -> Result<AuditReport> {
    check_cap(m, max_attrs)?;
    if f.union().last().is_some_and(|a| a >= m) {
        return Err(Error::Input(format!(
            "family mentions attributes beyond the {m} declared"
        )));
    }
    audit_with(f, m, max_attrs, instance, finer_by_hitting(f, m))
}

fn check_cap(m: usize, max_attrs: usize) -> Result<()> {
    if m > max_attrs || m > 20 {
        return Err(Error::Resource(format!(
            "audit enumerates all subsets of {m} attributes, above the cap of {}",
            max_attrs.min(20)
        )));
    }
    Ok(())
}

/// `finer[c][a]`: subset `c` meets every member containing `a`.
fn finer_by_hitting(f: &SetFamily, m: usize) -> Vec<Vec<bool>> {
    let n_masks: Vec<Vec<u32>> = (0..m).map(|a| family_masks(&f.n_of(a))).collect();
    (0..1u32 << m)
        .map(|c| (0..m).map(|a| hits(&n_masks[a], c)).collect())
        .collect()
}

fn audit_with(
    f: &SetFamily,
    m: usize,
    max_attrs: usize,
    instance: &str,
    finer: Vec<Vec<bool>>,
) -> Result<AuditReport> {
    let universe: AttrSet = (0..m).collect();
    let reducts = all_reducts_bruteforce(f, &universe, max_attrs)?;
    let subsets = Subsets { m };

    let union: AttrSet = reducts.iter().fold(AttrSet::new(), |acc, r| acc.union(r));
    let core: AttrSet = match reducts.split_first() {
        Some((first, rest)) => rest
            .iter()
            .fold(first.clone(), |acc, r| acc.intersection(r)),
        None => AttrSet::new(),
    };
    let unnecessary = |a| !union.contains(a);
    let relative = |a| union.contains(a) && !core.contains(a);

    let n: Vec<SetFamily> = (0..m).map(|a| f.n_of(a)).collect();
    let e: Vec<SetFamily> = (0..m).map(|a| f.e_of(a)).collect();
    let n_masks: Vec<Vec<u32>> = n.iter().map(family_masks).collect();
    let e_masks: Vec<Vec<u32>> = e.iter().map(family_masks).collect();
    let singleton_member = |a| f.contains(&AttrSet::singleton(a));
    let all_c = || 0..subsets.count();

    let mut entries = Vec::new();
    let mut push = |claim, subject, lhs, rhs, witness: Option<u32>| {
        entries.push(AuditEntry {
            claim,
            subject,
            lhs,
            rhs,
            witness: witness.map(|c| Witness::Subset(subsets.set(c))),
        })
    };

    for a in 0..m {
        let hits_e = |c: u32| hits(&e_masks[a], c);

        let escape = all_c().find(|&c| hits_e(c) && !finer[c as usize][a]);
        push(
            Claim::UnnecessaryByPartitions,
            Subject::Attribute(a),
            unnecessary(a),
            escape.is_none(),
            escape,
        );
        push(
            Claim::RelativeNecessaryByPartitions,
            Subject::Attribute(a),
            relative(a),
            !singleton_member(a) && escape.is_some(),
            escape,
        );

        let hitting_escape = all_c().find(|&c| hits_e(c) && !hits(&n_masks[a], c));
        push(
            Claim::UnnecessaryByHitting,
            Subject::Attribute(a),
            unnecessary(a),
            hitting_escape.is_none(),
            hitting_escape,
        );
    }

    // Needs witnesses carrying a member, so pushed separately.
    for a in 0..m {
        let found = all_c().find_map(|c| {
            if !hits(&e_masks[a], c) {
                return None;
            }
            n[a].iter()
                .find(|k| mask_of(k) & c == 0)
                .map(|k| (c, k.clone()))
        });
        entries.push(AuditEntry {
            claim: Claim::RelativeNecessaryByHitting,
            subject: Subject::Attribute(a),
            lhs: relative(a),
            rhs: !singleton_member(a) && found.is_some(),
            witness: found.map(|(c, k)| Witness::SubsetAndMember(subsets.set(c), k)),
        });

        let unescaped = f
            .canonical()
            .into_iter()
            .filter(|d| !d.contains(a))
            .find(|d| n[a].iter().all(|k| d.is_subset(k)));
        entries.push(AuditEntry {
            claim: Claim::RelativeNecessaryByContainment,
            subject: Subject::Attribute(a),
            lhs: relative(a),
            rhs: !singleton_member(a) && unescaped.is_none(),
            witness: unescaped.map(Witness::Member),
        });
    }

    for d in f.absorb().d_reduct.canonical() {
        if d.len() < 2 {
            continue;
        }
        for a in &d {
            let mut rest = d.clone();
            rest.remove(a);
            let avoiding = reducts.iter().find(|r| r.is_disjoint(&rest));
            entries.push(AuditEntry {
                claim: Claim::MinimalMemberAvoidance,
                subject: Subject::MemberAndAttribute(d.clone(), a),
                lhs: true,
                rhs: avoiding.is_some(),
                witness: avoiding.cloned().map(Witness::Reduct),
            });
        }
    }

    let space = CoveringSpace::from_family(f.clone());
    for a in 0..m {
        for b in 0..m {
            if a == b {
                continue;
            }
            let by_partition = finer[1 << a][b];
            let membership_miss = n[b].iter().find(|k| !k.contains(a)).cloned();
            entries.push(AuditEntry {
                claim: Claim::FinerByMembership,
                subject: Subject::Pair(a, b),
                lhs: by_partition,
                rhs: membership_miss.is_none(),
                witness: membership_miss.map(Witness::Member),
            });
            if space.ground().contains(b) {
                entries.push(AuditEntry {
                    claim: Claim::FinerByNeighborhood,
                    subject: Subject::Pair(a, b),
                    lhs: by_partition,
                    rhs: space.neighborhood(b)?.contains(a),
                    witness: None,
                });
            }
            if by_partition {
                let shared = reducts.iter().find(|r| r.contains(a) && r.contains(b));
                entries.push(AuditEntry {
                    claim: Claim::FinerPairNeverShareReduct,
                    subject: Subject::Pair(a, b),
                    lhs: true,
                    rhs: shared.is_none(),
                    witness: shared.cloned().map(Witness::Reduct),
                });
            }
        }
    }

    for a in 0..m {
        for b in a + 1..m {
            let same_partition = finer[1 << a][b] && finer[1 << b][a];
            entries.push(AuditEntry {
                claim: Claim::EquivalentBySameFamilies,
                subject: Subject::Pair(a, b),
                lhs: same_partition,
                rhs: n[a] == n[b],
                witness: None,
            });

            let is_coupled = coupled(&reducts, a, b);
            let by_partitions = all_c().find(|&c| {
                let row = &finer[c as usize];
                row[b] != row[a]
            });
            let by_extension = all_c().find(|&c| {
                let with_a = &finer[(c | 1 << a) as usize];
                let with_b = &finer[(c | 1 << b) as usize];
                let row = &finer[c as usize];
                (with_a[b] && !row[a]) || (with_b[a] && !row[b])
            });
            let only_b: Vec<u32> = family_masks(&n[b].filter(|k| !n[a].contains(k)));
            let only_a: Vec<u32> = family_masks(&n[a].filter(|k| !n[b].contains(k)));
            let by_hitting = all_c().find(|&c| {
                (hits(&only_b, c) && !hits(&n_masks[a], c))
                    || (hits(&only_a, c) && !hits(&n_masks[b], c))
            });
            for (claim, failure) in [
                (Claim::CoupledByPartitions, by_partitions),
                (Claim::CoupledByExtension, by_extension),
                (Claim::CoupledByHitting, by_hitting),
            ] {
                entries.push(AuditEntry {
                    claim,
                    subject: Subject::Pair(a, b),
                    lhs: is_coupled,
                    rhs: failure.is_none(),
                    witness: failure.map(|c| Witness::Subset(subsets.set(c))),
                });
            }
        }
    }

    let reduct_masks: Vec<u32> = reducts.iter().map(mask_of).collect();
    for c in all_c() {
        if !reduct_masks.iter().any(|r| c & r == c) {
            continue;
        }
        let c_set = subsets.set(c);
        for a in 0..m {
            if c & 1 << a != 0 {
                continue;
            }
            let outside: Vec<u32> = e_masks[a].iter().copied().filter(|k| k & c == 0).collect();
            let failure = all_c().find(|&d| hits(&outside, d) && !finer[(c | d) as usize][a]);
            entries.push(AuditEntry {
                claim: Claim::ExcludesByExtension,
                subject: Subject::SetAndAttribute(c_set.clone(), a),
                lhs: excludes(&reducts, &c_set, a),
                rhs: failure.is_none(),
                witness: failure.map(|d| Witness::Subset(subsets.set(d))),
            });
        }
    }

    Ok(AuditReport {
        instance: instance.to_owned(),
        reducts,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_attribute_system_agrees() {
        let rows = vec![vec!["0"], vec!["1"], vec!["1"]];
        let is = InformationSystem::from_rows(vec!["a".into()], &rows).unwrap();
        let report = audit_theorems(&is, DEFAULT_AUDIT_CAP, "one attribute").unwrap();
        assert!(!report.entries.is_empty());
        assert_eq!(
            report.disagreements().count(),
            0,
            "{:?}",
            report.disagreements().collect::<Vec<_>>()
        );
    }

    #[test]
    fn cap_is_enforced() {
        let rows = vec![vec!["0", "0", "0"]];
        let names = vec!["a".into(), "b".into(), "c".into()];
        let is = InformationSystem::from_rows(names, &rows).unwrap();
        assert!(matches!(
            audit_theorems(&is, 2, "x"),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn every_entry_records_both_sides() {
        let rows = vec![vec!["0", "0"], vec!["0", "1"], vec!["1", "0"]];
        let is = InformationSystem::from_rows(vec!["a".into(), "b".into()], &rows).unwrap();
        let report = audit_theorems(&is, DEFAULT_AUDIT_CAP, "two cores").unwrap();
        let summary = report.summary();
        assert_eq!(summary.len(), Claim::ALL.len());
        assert_eq!(
            summary.iter().map(|s| s.checked).sum::<usize>(),
            report.entries.len()
        );
    }
}
