//! Relations between attributes: finer, equivalent, coupled and excluded.

use crate::covering::CoveringSpace;
use crate::discernibility::{DiscernibilityMatrix, SetFamily};
use crate::error::{Error, Result};
use crate::model::InformationSystem;
use crate::set::{AttrId, AttrSet};

fn check_attribute(is: &InformationSystem, a: AttrId) -> Result<()> {
    if a < is.n_attributes() {
        Ok(())
    } else {
        Err(Error::Input(format!(
            "attribute id {a} is out of range for {} attributes",
            is.n_attributes()
        )))
    }
}

/// `a` is finer than `b` when every member containing `b` also contains `a`.
pub fn finer_by_family(f: &SetFamily, a: AttrId, b: AttrId) -> bool {
    f.iter().filter(|k| k.contains(b)).all(|k| k.contains(a))
}

/// Whether the partition induced by `a` refines the one induced by `b`.
///
/// Cross-checked against the family criterion and, when `b` is covered,
/// against membership of `a` in the neighbourhood of `b`.
pub fn attr_finer_in(is: &InformationSystem, f: &SetFamily, a: AttrId, b: AttrId) -> Result<bool> {
    check_attribute(is, a)?;
    check_attribute(is, b)?;
    let by_partition = is
        .partition(&AttrSet::singleton(a))?
        .refines(&is.partition(&AttrSet::singleton(b))?)?;
    let by_family = finer_by_family(f, a, b);
    if by_partition != by_family {
        return Err(Error::Invariant(format!(
            "finer({a}, {b}): partitions say {by_partition}, discernibility sets say {by_family}"
        )));
    }
    let space = CoveringSpace::from_family(f.clone());
    if space.ground().contains(b) {
        let by_neighborhood = space.neighborhood(b)?.contains(a);
        if by_neighborhood != by_partition {
            return Err(Error::Invariant(format!(
                "finer({a}, {b}): partitions say {by_partition}, neighbourhood says {by_neighborhood}"
            )));
        }
    }
    Ok(by_partition)
}

pub fn attr_finer(is: &InformationSystem, a: AttrId, b: AttrId) -> Result<bool> {
    attr_finer_in(is, &DiscernibilityMatrix::new(is).family(), a, b)
}

/// Same partition; cross-checked against `N(a) = N(b)`.
pub fn attr_equivalent_in(
    is: &InformationSystem,
    f: &SetFamily,
    a: AttrId,
    b: AttrId,
) -> Result<bool> {
    let both = attr_finer_in(is, f, a, b)? && attr_finer_in(is, f, b, a)?;
    let same_n = f.n_of(a) == f.n_of(b);
    if both != same_n {
        return Err(Error::Invariant(format!(
            "equivalent({a}, {b}): partitions say {both}, N families say {same_n}"
        )));
    }
    Ok(both)
}

pub fn attr_equivalent(is: &InformationSystem, a: AttrId, b: AttrId) -> Result<bool> {
    attr_equivalent_in(is, &DiscernibilityMatrix::new(is).family(), a, b)
}

/// Every reduct contains both `a` and `b` or neither.
pub fn coupled(reducts: &[AttrSet], a: AttrId, b: AttrId) -> bool {
    reducts.iter().all(|r| r.contains(a) == r.contains(b))
}

/// No reduct contains both the set `c` and the attribute `a`.
pub fn excludes(reducts: &[AttrSet], c: &AttrSet, a: AttrId) -> bool {
    !reducts.iter().any(|r| c.is_subset(r) && r.contains(a))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exclusion {
    pub c: AttrSet,
    pub a: AttrId,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    /// `(a, b)` with `a != b` and `a` finer than `b`.
    pub finer_pairs: Vec<(AttrId, AttrId)>,
    /// `(a, b)` with `a < b` inducing the same partition.
    pub equivalent_pairs: Vec<(AttrId, AttrId)>,
    /// `(a, b)` with `a < b` coupled over the reducts.
    pub coupled_pairs: Vec<(AttrId, AttrId)>,
    pub exclusions: Vec<Exclusion>,
}

impl RelationReport {
    /// Builds every pairwise relation. With `is` present the finer relation
    /// is cross-checked against partitions, otherwise it is read off the
    /// family alone.
    pub fn build(
        is: Option<&InformationSystem>,
        f: &SetFamily,
        n_attributes: usize,
        reducts: &[AttrSet],
        queries: &[(AttrSet, AttrId)],
    ) -> Result<Self> {
        let mut report = RelationReport::default();
        let finer = |a, b| match is {
            Some(is) => attr_finer_in(is, f, a, b),
            None => Ok(finer_by_family(f, a, b)),
        };
        for a in 0..n_attributes {
            for b in 0..n_attributes {
                if a != b && finer(a, b)? {
                    report.finer_pairs.push((a, b));
                }
            }
        }
        for a in 0..n_attributes {
            for b in a + 1..n_attributes {
                let equivalent =
                    report.finer_pairs.contains(&(a, b)) && report.finer_pairs.contains(&(b, a));
                if equivalent != (f.n_of(a) == f.n_of(b)) {
                    return Err(Error::Invariant(format!(
                        "equivalent({a}, {b}) disagrees with N-family equality"
                    )));
                }
                if equivalent {
                    report.equivalent_pairs.push((a, b));
                }
                if coupled(reducts, a, b) {
                    report.coupled_pairs.push((a, b));
                }
            }
        }
        for (c, a) in queries {
            if *a >= n_attributes || c.last().is_some_and(|x| x >= n_attributes) {
                return Err(Error::Input(
                    "exclusion query references an unknown attribute".into(),
                ));
            }
            report.exclusions.push(Exclusion {
                c: c.clone(),
                a: *a,
                holds: excludes(reducts, c, *a),
            });
        }
        Ok(report)
    }
}
