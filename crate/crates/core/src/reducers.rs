//! Reduct construction: an exhaustive oracle, row-wise matrix simplification,
//! and the `E(a)`-driven algorithm built on top of it.

use std::fmt;

use crate::discernibility::SetFamily;
use crate::error::{Error, Result};
use crate::set::{canonical_cmp, AttrId, AttrSet};

/// Every minimal hitting set of `f` drawn from `universe`, canonically
/// sorted. Enumerates all `2^|universe|` subsets.
pub fn all_reducts_bruteforce(
    f: &SetFamily,
    universe: &AttrSet,
    cap: usize,
) -> Result<Vec<AttrSet>> {
    let members = universe.to_vec();
    let k = members.len();
    if k > cap || k > 30 {
        return Err(Error::Resource(format!(
            "exhaustive reduct search over {k} attributes exceeds the cap of {}",
            cap.min(30)
        )));
    }
    let masks: Vec<u32> = f
        .iter()
        .map(|set| {
            members
                .iter()
                .enumerate()
                .filter(|(_, a)| set.contains(**a))
                .fold(0u32, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let hits: Vec<bool> = (0..1u32 << k)
        .map(|b| masks.iter().all(|m| m & b != 0))
        .collect();
    let mut reducts: Vec<AttrSet> = (0..1u32 << k)
        .filter(|&b| hits[b as usize])
        .filter(|&b| {
            (0..k)
                .filter(|i| b & 1 << i != 0)
                .all(|i| !hits[(b & !(1 << i)) as usize])
        })
        .map(|b| {
            (0..k)
                .filter(|i| b & 1 << i != 0)
                .map(|i| members[i])
                .collect()
        })
        .collect();
    reducts.sort_by(canonical_cmp);
    Ok(reducts)
}

/// How an attribute is picked from a target set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SelectionPolicy {
    /// Lowest attribute index in the target.
    First,
    /// Attribute of the target occurring in the most context sets; ties go to
    /// the lowest index.
    MaxFrequency,
}

impl SelectionPolicy {
    /// Picks from a non-empty `target`.
    pub fn select<'a>(
        self,
        target: &AttrSet,
        context: impl IntoIterator<Item = &'a AttrSet>,
    ) -> AttrId {
        match self {
            SelectionPolicy::First => target.first().expect("selection from an empty set"),
            SelectionPolicy::MaxFrequency => {
                let candidates = target.to_vec();
                let mut counts = vec![0usize; candidates.len()];
                for set in context {
                    for (i, &a) in candidates.iter().enumerate() {
                        if set.contains(a) {
                            counts[i] += 1;
                        }
                    }
                }
                let best = counts
                    .iter()
                    .copied()
                    .max()
                    .expect("selection from an empty set");
                candidates[counts.iter().position(|&c| c == best).unwrap()]
            }
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SelectionPolicy::First => "first",
            SelectionPolicy::MaxFrequency => "freq",
        }
    }
}

impl fmt::Display for SelectionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    RowWise,
    EaBased,
}

/// One processed entry of the row-wise simplification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowWiseIteration {
    /// Position of the processed entry.
    pub entry: usize,
    /// The entry's content when it was reached.
    pub original: AttrSet,
    /// The minimal entry it was absorbed into.
    pub absorbed: AttrSet,
    pub chosen: AttrId,
    /// All entries after simplification.
    pub entries_after: Vec<AttrSet>,
}

/// One pass of the `E(a)` loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EaIteration {
    pub chosen: AttrId,
    pub n: SetFamily,
    pub e: SetFamily,
    /// Minimal hitting set of `e`.
    pub red: AttrSet,
    /// Whether `chosen` itself had to be added.
    pub a_added: bool,
    /// The first member of `n` missed by `red`, when `a_added`.
    pub blocking: Option<AttrSet>,
    /// The family after removing `∪n` from every member.
    pub family_after: SetFamily,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Iteration {
    RowWise(RowWiseIteration),
    Ea(EaIteration),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductTrace {
    pub algorithm: Algorithm,
    pub policy: SelectionPolicy,
    pub iterations: Vec<Iteration>,
    /// Output before the minimisation pass.
    pub unminimized: AttrSet,
    pub result: AttrSet,
    pub minimized: bool,
}

/// Outcome of checking a candidate reduct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductDiagnosis {
    Valid,
    /// A member the candidate misses.
    NotHitting(AttrSet),
    /// An attribute whose removal keeps every member hit.
    NotMinimal(AttrId),
}

impl ReductDiagnosis {
    pub fn is_valid(&self) -> bool {
        matches!(self, ReductDiagnosis::Valid)
    }
}

/// Checks that `b` hits every member of `f` and that no single attribute can
/// be dropped. Witnesses are the canonically first missed member and the
/// highest removable attribute.
pub fn verify_reduct(f: &SetFamily, b: &AttrSet) -> ReductDiagnosis {
    if let Some(missed) = f.first_missed(b) {
        return ReductDiagnosis::NotHitting(missed);
    }
    let removable = b.to_vec().into_iter().rev().find(|&a| {
        let mut smaller = b.clone();
        smaller.remove(a);
        f.hits_all(&smaller)
    });
    match removable {
        Some(a) => ReductDiagnosis::NotMinimal(a),
        None => ReductDiagnosis::Valid,
    }
}

/// Drops attributes, highest index first, while `f` stays hit.
fn minimize(f: &SetFamily, b: &AttrSet) -> AttrSet {
    let mut out = b.clone();
    for a in b.to_vec().into_iter().rev() {
        out.remove(a);
        if !f.hits_all(&out) {
            out.insert(a);
        }
    }
    out
}

/// Shrinks `target` to a ⊆-minimal entry among the non-empty `entries`.
fn absorb_fixed_point(target: &AttrSet, entries: &[AttrSet]) -> AttrSet {
    let mut current = target.clone();
    while let Some(smaller) = entries
        .iter()
        .find(|e| !e.is_empty() && e.is_proper_subset(&current))
    {
        current = smaller.clone();
    }
    current
}

/// Row-wise simplification of the family viewed as a matrix whose entries
/// are the members in stored order. Each unresolved entry is absorbed to a
/// minimal entry, split into a chosen attribute and a remainder, and every
/// other entry is either collapsed onto the attribute or stripped of the
/// remainder.
pub fn yao_row_wise(f: &SetFamily, policy: SelectionPolicy) -> (AttrSet, ReductTrace) {
    let mut entries: Vec<AttrSet> = f.iter().cloned().collect();
    let mut resolved = vec![false; entries.len()];
    let mut iterations = Vec::new();
    for i in 0..entries.len() {
        if resolved[i] || entries[i].is_empty() {
            continue;
        }
        let original = entries[i].clone();
        let absorbed = absorb_fixed_point(&original, &entries);
        let unresolved = entries
            .iter()
            .zip(&resolved)
            .filter(|(_, r)| !**r)
            .map(|(e, _)| e);
        let chosen = policy.select(&absorbed, unresolved);
        let mut remainder = absorbed.clone();
        remainder.remove(chosen);
        let pick = AttrSet::singleton(chosen);
        entries[i] = pick.clone();
        resolved[i] = true;
        for j in 0..entries.len() {
            if j == i || entries[j].is_empty() {
                continue;
            }
            if entries[j].contains(chosen) {
                entries[j] = pick.clone();
                resolved[j] = true;
            } else {
                entries[j].difference_with(&remainder);
                debug_assert!(
                    !entries[j].is_empty(),
                    "absorption left a subset of the remainder"
                );
            }
        }
        iterations.push(Iteration::RowWise(RowWiseIteration {
            entry: i,
            original,
            absorbed,
            chosen,
            entries_after: entries.clone(),
        }));
    }
    let mut result = AttrSet::new();
    for e in &entries {
        result.union_with(e);
    }
    let trace = ReductTrace {
        algorithm: Algorithm::RowWise,
        policy,
        iterations,
        unminimized: result.clone(),
        result: result.clone(),
        minimized: false,
    };
    (result, trace)
}

/// A minimal hitting set of `f` inside `∪f`.
pub fn red_of_family(f: &SetFamily, policy: SelectionPolicy) -> AttrSet {
    yao_row_wise(f, policy).0
}

/// The `E(a)` algorithm. While members remain: pick `a` from the first
/// member, add a minimal hitting set of `E(a)` to the result, add `a` itself
/// if that set misses some member of `N(a)`, then delete `∪N(a)` from every
/// member. With `minimize`, a final pass drops redundant attributes.
pub fn ea_reduce(
    f: &SetFamily,
    policy: SelectionPolicy,
    minimize_result: bool,
) -> (AttrSet, ReductTrace) {
    let mut family = f.clone();
    let mut reduct = AttrSet::new();
    let mut iterations = Vec::new();
    while let Some(first) = family.first() {
        let chosen = policy.select(first, family.iter());
        let n = family.n_of(chosen);
        let e = family.e_of(chosen);
        let red = red_of_family(&e, policy);
        reduct.union_with(&red);
        let blocking = n.iter().find(|k| k.is_disjoint(&red)).cloned();
        if blocking.is_some() {
            reduct.insert(chosen);
        }
        let family_after = family.subtract(&n.union());
        iterations.push(Iteration::Ea(EaIteration {
            chosen,
            n,
            e,
            red,
            a_added: blocking.is_some(),
            blocking,
            family_after: family_after.clone(),
        }));
        family = family_after;
    }
    let result = if minimize_result {
        minimize(f, &reduct)
    } else {
        reduct.clone()
    };
    let trace = ReductTrace {
        algorithm: Algorithm::EaBased,
        policy,
        iterations,
        unminimized: reduct,
        result: result.clone(),
        minimized: minimize_result,
    };
    (result, trace)
}

impl ReductTrace {
    /// Re-applies every recorded step to `f`, checking each one is a legal
    /// move of its algorithm, and returns the reproduced result.
    pub fn replay(&self, f: &SetFamily) -> Result<AttrSet> {
        let bad = |what: String| Err(Error::Invariant(format!("trace replay: {what}")));
        let reproduced = match self.algorithm {
            Algorithm::RowWise => {
                let mut entries: Vec<AttrSet> = f.iter().cloned().collect();
                for it in &self.iterations {
                    let Iteration::RowWise(step) = it else {
                        return bad("mixed iteration kinds".into());
                    };
                    if entries.get(step.entry) != Some(&step.original) {
                        return bad(format!("entry {} does not match", step.entry));
                    }
                    let minimal = entries.contains(&step.absorbed)
                        && step.absorbed.is_subset(&step.original)
                        && !entries
                            .iter()
                            .any(|e| !e.is_empty() && e.is_proper_subset(&step.absorbed));
                    if !minimal || !step.absorbed.contains(step.chosen) {
                        return bad(format!(
                            "entry {} was not absorbed to a minimal entry",
                            step.entry
                        ));
                    }
                    let mut remainder = step.absorbed.clone();
                    remainder.remove(step.chosen);
                    let pick = AttrSet::singleton(step.chosen);
                    for (j, e) in entries.iter_mut().enumerate() {
                        if j == step.entry || e.contains(step.chosen) {
                            *e = pick.clone();
                        } else if !e.is_empty() {
                            e.difference_with(&remainder);
                        }
                    }
                    if entries != step.entries_after {
                        return bad(format!("entries after step {} differ", step.entry));
                    }
                }
                if entries.iter().any(|e| e.len() != 1) {
                    return bad("unresolved entries remain".into());
                }
                entries.iter().fold(AttrSet::new(), |acc, e| acc.union(e))
            }
            Algorithm::EaBased => {
                let mut family = f.clone();
                let mut reduct = AttrSet::new();
                for it in &self.iterations {
                    let Iteration::Ea(step) = it else {
                        return bad("mixed iteration kinds".into());
                    };
                    if !family.first().is_some_and(|c| c.contains(step.chosen)) {
                        return bad(format!(
                            "attribute {} is not in the first member",
                            step.chosen
                        ));
                    }
                    if step.n != family.n_of(step.chosen) || step.e != family.e_of(step.chosen) {
                        return bad(format!("N/E of attribute {} differ", step.chosen));
                    }
                    if verify_reduct(&step.e, &step.red) != ReductDiagnosis::Valid
                        || !step.red.is_subset(&step.e.union())
                    {
                        return bad(format!(
                            "RED for attribute {} is not a reduct of E",
                            step.chosen
                        ));
                    }
                    let missed = step.n.iter().any(|k| k.is_disjoint(&step.red));
                    if missed != step.a_added {
                        return bad(format!(
                            "add decision for attribute {} differs",
                            step.chosen
                        ));
                    }
                    reduct.union_with(&step.red);
                    if step.a_added {
                        reduct.insert(step.chosen);
                    }
                    family = family.subtract(&step.n.union());
                    if family != step.family_after {
                        return bad(format!("family after attribute {} differs", step.chosen));
                    }
                }
                if !family.is_empty() {
                    return bad("members remain after the last iteration".into());
                }
                reduct
            }
        };
        if reproduced != self.unminimized {
            return bad("unminimised result differs".into());
        }
        let result = if self.minimized {
            minimize(f, &reproduced)
        } else {
            reproduced
        };
        if result != self.result {
            return bad("result differs".into());
        }
        Ok(result)
    }
}
