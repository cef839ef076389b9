//! Information systems, indiscernibility partitions and Pawlak approximations.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::set::{AttrId, AttrSet, ObjSet, ObjectId};

/// An object-by-attribute table of categorical values.
///
/// Values are opaque tokens: they are interned per attribute and only ever
/// compared for equality. Rows that are identical across every attribute are
/// kept as distinct objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InformationSystem {
    attributes: Vec<String>,
    objects: Vec<String>,
    // codes[attribute][object]
    codes: Vec<Vec<u32>>,
    symbols: Vec<Vec<String>>,
}

impl InformationSystem {
    /// Builds a system from row-major values. Objects are labelled `1..=n`.
    pub fn from_rows<S: AsRef<str>>(attributes: Vec<String>, rows: &[Vec<S>]) -> Result<Self> {
        if attributes.is_empty() {
            return Err(Error::Input(
                "an information system needs at least one attribute".into(),
            ));
        }
        if rows.is_empty() {
            return Err(Error::Input(
                "an information system needs at least one object".into(),
            ));
        }
        for (i, name) in attributes.iter().enumerate() {
            if attributes[..i].contains(name) {
                return Err(Error::Input(format!("duplicate attribute name `{name}`")));
            }
        }
        let mut codes = vec![Vec::with_capacity(rows.len()); attributes.len()];
        let mut symbols = vec![Vec::new(); attributes.len()];
        let mut interners: Vec<HashMap<String, u32>> = vec![HashMap::new(); attributes.len()];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != attributes.len() {
                return Err(Error::Input(format!(
                    "object {} has {} values, expected {}",
                    r + 1,
                    row.len(),
                    attributes.len()
                )));
            }
            for (a, value) in row.iter().enumerate() {
                let value = value.as_ref();
                let next = symbols[a].len() as u32;
                let code = *interners[a].entry(value.to_owned()).or_insert_with(|| {
                    symbols[a].push(value.to_owned());
                    next
                });
                codes[a].push(code);
            }
        }
        Ok(InformationSystem {
            attributes,
            objects: (1..=rows.len()).map(|i| i.to_string()).collect(),
            codes,
            symbols,
        })
    }

    /// Builds a system whose attribute `i` induces `partitions[i]` over
    /// `n_objects` objects. Each value is the index of the block holding the
    /// object. Blocks must cover every object exactly once.
    pub fn from_partitions(
        attributes: Vec<String>,
        n_objects: usize,
        partitions: &[Vec<Vec<ObjectId>>],
    ) -> Result<Self> {
        if partitions.len() != attributes.len() {
            return Err(Error::Input(format!(
                "{} partitions given for {} attributes",
                partitions.len(),
                attributes.len()
            )));
        }
        let mut rows = vec![vec![String::new(); attributes.len()]; n_objects];
        for (a, blocks) in partitions.iter().enumerate() {
            let mut seen = vec![false; n_objects];
            for (b, block) in blocks.iter().enumerate() {
                for &x in block {
                    if x >= n_objects || seen[x] {
                        return Err(Error::Input(format!(
                            "partition of `{}` is not a partition of {n_objects} objects",
                            attributes[a]
                        )));
                    }
                    seen[x] = true;
                    rows[x][a] = b.to_string();
                }
            }
            if seen.contains(&false) {
                return Err(Error::Input(format!(
                    "partition of `{}` does not cover every object",
                    attributes[a]
                )));
            }
        }
        Self::from_rows(attributes, &rows)
    }

    /// Replaces the default `1..=n` object labels.
    pub fn with_object_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.objects.len() {
            return Err(Error::Input(format!(
                "{} labels given for {} objects",
                labels.len(),
                self.objects.len()
            )));
        }
        self.objects = labels;
        Ok(self)
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attributes
    }

    pub fn object_labels(&self) -> &[String] {
        &self.objects
    }

    pub fn attribute_index(&self, name: &str) -> Option<AttrId> {
        self.attributes.iter().position(|a| a == name)
    }

    /// The full attribute set `A`.
    pub fn all_attributes(&self) -> AttrSet {
        AttrSet::full(self.n_attributes())
    }

    pub fn all_objects(&self) -> ObjSet {
        ObjSet::full(self.n_objects())
    }

    /// The original token stored at `(object, attribute)`.
    pub fn value(&self, object: ObjectId, attribute: AttrId) -> &str {
        &self.symbols[attribute][self.codes[attribute][object] as usize]
    }

    /// Whether `x` and `y` carry the same value of `attribute`.
    pub fn agrees(&self, x: ObjectId, y: ObjectId, attribute: AttrId) -> bool {
        let column = &self.codes[attribute];
        column[x] == column[y]
    }

    pub(crate) fn check_attributes(&self, b: &AttrSet) -> Result<()> {
        match b.last() {
            Some(last) if last >= self.n_attributes() => Err(Error::Input(format!(
                "attribute id {last} is out of range for {} attributes",
                self.n_attributes()
            ))),
            _ => Ok(()),
        }
    }

    /// `U/R_B`: objects share a block iff they agree on every attribute of `b`.
    pub fn partition(&self, b: &AttrSet) -> Result<Partition> {
        self.check_attributes(b)?;
        let columns: Vec<&[u32]> = b.iter().map(|a| self.codes[a].as_slice()).collect();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut blocks: Vec<ObjSet> = Vec::new();
        for x in 0..self.n_objects() {
            let key: Vec<u32> = columns.iter().map(|c| c[x]).collect();
            let slot = *index.entry(key).or_insert_with(|| {
                blocks.push(ObjSet::new());
                blocks.len() - 1
            });
            blocks[slot].insert(x);
        }
        // Blocks were opened in order of their smallest member, so they are
        // already canonical.
        Ok(Partition {
            universe: self.n_objects(),
            blocks,
        })
    }

    /// Whether `b` induces the same partition as the full attribute set.
    pub fn is_consistent(&self, b: &AttrSet) -> Result<bool> {
        Ok(self.partition(b)? == self.partition(&self.all_attributes())?)
    }

    /// Whether `b` is consistent and no `b - {a}` is.
    pub fn is_reduct(&self, b: &AttrSet) -> Result<bool> {
        if !self.is_consistent(b)? {
            return Ok(false);
        }
        for a in b {
            let mut smaller = b.clone();
            smaller.remove(a);
            if self.is_consistent(&smaller)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A partition of the objects `0..universe` into non-empty blocks, kept sorted
/// by smallest member so that equal partitions compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    universe: usize,
    blocks: Vec<ObjSet>,
}

/// Lower and upper approximation of an object set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximation {
    pub lower: ObjSet,
    pub upper: ObjSet,
}

impl Partition {
    /// Validates and canonicalises a list of blocks over `0..universe`.
    pub fn from_blocks(universe: usize, blocks: Vec<ObjSet>) -> Result<Self> {
        let mut covered = ObjSet::new();
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::Input("partition blocks must be non-empty".into()));
            }
            if block.intersects(&covered) {
                return Err(Error::Input(
                    "partition blocks must be pairwise disjoint".into(),
                ));
            }
            covered.union_with(block);
        }
        if covered != ObjSet::full(universe) {
            return Err(Error::Input(format!(
                "partition blocks do not cover exactly the objects 0..{universe}"
            )));
        }
        let mut blocks = blocks;
        blocks.sort_by_key(|b| b.first());
        Ok(Partition { universe, blocks })
    }

    /// The one-block partition.
    pub fn indiscrete(universe: usize) -> Self {
        let blocks = if universe == 0 {
            Vec::new()
        } else {
            vec![ObjSet::full(universe)]
        };
        Partition { universe, blocks }
    }

    /// The partition into singletons.
    pub fn discrete(universe: usize) -> Self {
        Partition {
            universe,
            blocks: (0..universe).map(ObjSet::singleton).collect(),
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn blocks(&self) -> &[ObjSet] {
        &self.blocks
    }

    /// Block index of every object.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.universe];
        for (i, block) in self.blocks.iter().enumerate() {
            for x in block {
                labels[x] = i;
            }
        }
        labels
    }

    /// The equivalence class `[x]`.
    pub fn block_of(&self, x: ObjectId) -> Option<&ObjSet> {
        self.blocks.iter().find(|b| b.contains(x))
    }

    /// Whether every block of `self` lies inside some block of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        if self.universe != other.universe {
            return Err(Error::Input(format!(
                "cannot compare partitions of {} and {} objects",
                self.universe, other.universe
            )));
        }
        let labels = other.labels();
        Ok(self.blocks.iter().all(|block| {
            let mut members = block.iter();
            let head = members.next().map(|x| labels[x]);
            members.all(|x| Some(labels[x]) == head)
        }))
    }

    fn check_objects(&self, x: &ObjSet) -> Result<()> {
        match x.last() {
            Some(last) if last >= self.universe => Err(Error::Input(format!(
                "object id {last} is out of range for {} objects",
                self.universe
            ))),
            _ => Ok(()),
        }
    }

    /// Union of blocks inside `x`, and union of blocks meeting `x`.
    pub fn approximations(&self, x: &ObjSet) -> Result<Approximation> {
        self.check_objects(x)?;
        let mut lower = ObjSet::new();
        let mut upper = ObjSet::new();
        for block in &self.blocks {
            if block.is_subset(x) {
                lower.union_with(block);
            }
            if block.intersects(x) {
                upper.union_with(block);
            }
        }
        Ok(Approximation { lower, upper })
    }

    /// Whether `x` is a union of blocks.
    pub fn is_precise(&self, x: &ObjSet) -> Result<bool> {
        let approx = self.approximations(x)?;
        Ok(approx.lower == approx.upper)
    }
}
