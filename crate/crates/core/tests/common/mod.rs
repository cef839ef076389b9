#![allow(dead_code)]

use reductkit::{AttrSet, InformationSystem, SetFamily};

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Builds a system from 1-based object blocks, one partition per attribute.
pub fn from_one_based(
    attributes: Vec<String>,
    n_objects: usize,
    partitions: &[&[&[usize]]],
) -> InformationSystem {
    let zero_based: Vec<Vec<Vec<usize>>> = partitions
        .iter()
        .map(|blocks| {
            blocks
                .iter()
                .map(|b| b.iter().map(|x| x - 1).collect())
                .collect()
        })
        .collect();
    InformationSystem::from_partitions(attributes, n_objects, &zero_based).unwrap()
}

/// Five objects, four attributes, three two-attribute reducts and no core.
pub fn no_core_system() -> InformationSystem {
    from_one_based(
        names("a", 4),
        5,
        &[
            &[&[1, 2], &[3, 4], &[5]],
            &[&[1, 2, 3], &[4, 5]],
            &[&[1, 2, 4], &[3, 5]],
            &[&[1, 2, 3, 4], &[5]],
        ],
    )
}

/// Five objects, three attributes, built from three listed partitions. Its
/// matrix differs from [`exclusive_pair_family`] at pairs (1, 3) and (1, 5).
pub fn exclusive_pair_system() -> InformationSystem {
    from_one_based(
        names("a", 3),
        5,
        &[
            &[&[1, 2, 3], &[4, 5]],
            &[&[1, 2], &[3, 4, 5]],
            &[&[1, 3], &[2, 4, 5]],
        ],
    )
}

/// Attribute ids for 1-based indices.
pub fn attrs(ids: &[usize]) -> AttrSet {
    ids.iter().map(|a| a - 1).collect()
}

pub fn family(sets: &[&[usize]]) -> SetFamily {
    sets.iter().map(|s| attrs(s)).collect()
}

/// Letter-named attributes `a..f` mapped to ids `0..6`.
pub fn letters(s: &str) -> AttrSet {
    s.bytes().map(|b| (b - b'a') as usize).collect()
}

pub fn letter_family(sets: &[&str]) -> SetFamily {
    sets.iter().map(|s| letters(s)).collect()
}

/// Nine discernibility sets over `a..f`, in matrix order.
pub fn six_attribute_family() -> SetFamily {
    letter_family(&["abf", "ac", "ad", "cdf", "bd", "bc", "bef", "ce", "de"])
}

/// Nine matrix entries over `a1..a3` in which `a3` is core and `a1`, `a2`
/// exclude each other. No table of values produces exactly these entries:
/// objects 4 and 5 agree everywhere yet differ from object 1 differently.
pub const EXCLUSIVE_PAIR_ENTRIES: [(usize, usize, &[usize]); 10] = [
    (1, 2, &[3]),
    (1, 3, &[2, 3]),
    (1, 4, &[1, 2, 3]),
    (1, 5, &[2, 3]),
    (2, 3, &[2, 3]),
    (2, 4, &[1, 2]),
    (2, 5, &[1, 2]),
    (3, 4, &[1, 3]),
    (3, 5, &[1, 3]),
    (4, 5, &[]),
];

pub fn exclusive_pair_family() -> SetFamily {
    EXCLUSIVE_PAIR_ENTRIES
        .iter()
        .map(|(_, _, d)| attrs(d))
        .collect()
}
