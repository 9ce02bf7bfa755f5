//! Equivalence relations in canonical form: partitions with blocks ordered
//! by minimum element, plus the standard relation property checks and an
//! enumerator over all partitions of a carrier.

use crate::error::{EquivalenceViolation, Error, Result};
use crate::function::{Carrier, FiniteFunction};
use crate::relation::BinaryRelation;
use crate::subset::Subset;

/// The standard flags of a square binary relation, each computed by an
/// exhaustive quantifier check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationProperties {
    pub reflexive: bool,
    pub symmetric: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
}

impl RelationProperties {
    pub fn is_equivalence(&self) -> bool {
        self.reflexive && self.symmetric && self.transitive
    }
}

/// Compute all four property flags of a square relation.
///
/// Membership in a dense boolean matrix carries at most one witness, so
/// relations here are singleton-valued by representation; no separate
/// proof-irrelevance check is needed.
pub fn relation_properties(r: &BinaryRelation) -> Result<RelationProperties> {
    r.check_square()?;
    let n = r.dom_a().size();
    let reflexive = (0..n).all(|x| r.get(x, x));
    let symmetric = (0..n).all(|x| (0..n).all(|y| !r.get(x, y) || r.get(y, x)));
    let antisymmetric = (0..n).all(|x| (0..n).all(|y| !(r.get(x, y) && r.get(y, x)) || x == y));
    let transitive =
        (0..n).all(|x| (0..n).all(|y| !r.get(x, y) || (0..n).all(|z| !r.get(y, z) || r.get(x, z))));
    Ok(RelationProperties {
        reflexive,
        symmetric,
        antisymmetric,
        transitive,
    })
}

/// The first equivalence-law violation in scan order, if any: reflexivity
/// over elements, then symmetry over pairs, then transitivity over triples.
fn equivalence_violation(r: &BinaryRelation) -> Option<EquivalenceViolation> {
    let n = r.dom_a().size();
    for x in 0..n {
        if !r.get(x, x) {
            return Some(EquivalenceViolation::NotReflexive { x });
        }
    }
    for x in 0..n {
        for y in 0..n {
            if r.get(x, y) && !r.get(y, x) {
                return Some(EquivalenceViolation::NotSymmetric { x, y });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !r.get(x, y) {
                continue;
            }
            for z in 0..n {
                if r.get(y, z) && !r.get(x, z) {
                    return Some(EquivalenceViolation::NotTransitive { x, y, z });
                }
            }
        }
    }
    None
}

/// An equivalence relation on a carrier, in canonical form.
///
/// Blocks are sorted internally and ordered by their minimum element, and
/// `block_of` maps each element to the index of its block in that order.
/// Two partitions encode the same equivalence exactly when they are equal
/// values, so block identity is decided by value equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    carrier: Carrier,
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// The partition into singletons.
    pub fn discrete(carrier: Carrier) -> Self {
        Partition {
            carrier,
            block_of: carrier.elements().collect(),
            blocks: carrier.elements().map(|x| vec![x]).collect(),
        }
    }

    /// The partition with one block containing everything.
    pub fn single_block(carrier: Carrier) -> Self {
        let blocks = if carrier.size() == 0 {
            Vec::new()
        } else {
            vec![carrier.elements().collect()]
        };
        Partition {
            carrier,
            block_of: vec![0; carrier.size()],
            blocks,
        }
    }

    /// Build from an arbitrary block label per element; labels are
    /// renumbered by first appearance to reach the canonical form.
    pub fn from_assignment(carrier: Carrier, labels: &[usize]) -> Result<Self> {
        if labels.len() != carrier.size() {
            return Err(Error::LengthMismatch {
                expected: carrier.size(),
                found: labels.len(),
            });
        }
        let mut renumber: Vec<(usize, usize)> = Vec::new();
        let mut block_of = Vec::with_capacity(labels.len());
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, &label) in labels.iter().enumerate() {
            let id = match renumber.iter().find(|&&(l, _)| l == label) {
                Some(&(_, id)) => id,
                None => {
                    let id = blocks.len();
                    renumber.push((label, id));
                    blocks.push(Vec::new());
                    id
                }
            };
            block_of.push(id);
            blocks[id].push(x);
        }
        Ok(Partition {
            carrier,
            block_of,
            blocks,
        })
    }

    /// Build from explicit blocks, which must be nonempty, pairwise
    /// disjoint, and cover the carrier.
    pub fn from_blocks(carrier: Carrier, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut label: Vec<Option<usize>> = vec![None; carrier.size()];
        for (id, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::EmptyBlock { block: id });
            }
            for &x in block {
                carrier.check(x)?;
                if label[x].is_some() {
                    return Err(Error::OverlappingBlocks { element: x });
                }
                label[x] = Some(id);
            }
        }
        if let Some(x) = label.iter().position(Option::is_none) {
            return Err(Error::UncoveredElement { element: x });
        }
        let labels: Vec<usize> = label.into_iter().map(Option::unwrap).collect();
        Self::from_assignment(carrier, &labels)
    }

    /// Convert a square relation to its partition, checking that it is an
    /// equivalence. On failure the error names the first failing witness.
    pub fn from_relation(r: &BinaryRelation) -> Result<Self> {
        r.check_square()?;
        if let Some(violation) = equivalence_violation(r) {
            return Err(Error::NotEquivalence(violation));
        }
        let n = r.dom_a().size();
        let mut labels = vec![usize::MAX; n];
        for x in 0..n {
            if labels[x] != usize::MAX {
                continue;
            }
            for (y, label) in labels.iter_mut().enumerate().skip(x) {
                if r.get(x, y) {
                    *label = x;
                }
            }
        }
        Self::from_assignment(r.dom_a(), &labels)
    }

    /// The kernel of a function as a partition; kernels are always
    /// equivalences, so this cannot fail.
    pub fn from_kernel(f: &FiniteFunction) -> Self {
        Self::from_assignment(f.dom(), f.table()).expect("kernel labels are total")
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks in canonical order; each is sorted ascending.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Block index per element; a restricted growth string.
    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn block_id(&self, x: usize) -> Result<usize> {
        self.carrier.check(x)?;
        Ok(self.block_of[x])
    }

    pub fn related(&self, x: usize, y: usize) -> Result<bool> {
        self.carrier.check(x)?;
        self.carrier.check(y)?;
        Ok(self.block_of[x] == self.block_of[y])
    }

    /// The block containing `u`, as a subset.
    pub fn block(&self, u: usize) -> Result<Subset> {
        self.carrier.check(u)?;
        Subset::from_elements(self.carrier, self.blocks[self.block_of[u]].iter().copied())
    }

    /// The smallest `u` whose block is exactly `c`, if `c` is a block.
    pub fn find_block(&self, c: &Subset) -> Option<usize> {
        if c.carrier() != self.carrier || c.is_empty() {
            return None;
        }
        let elements: Vec<usize> = c.elements().collect();
        let id = self.block_of[elements[0]];
        (self.blocks[id] == elements).then(|| elements[0])
    }

    /// Blocks in canonical order, each paired with its designated
    /// representative (the minimum element).
    pub fn quotient_set(&self) -> Vec<(Subset, usize)> {
        self.blocks
            .iter()
            .map(|block| {
                let subset = Subset::from_elements(self.carrier, block.iter().copied())
                    .expect("block elements are in range");
                (subset, block[0])
            })
            .collect()
    }

    /// The partition as a square binary relation.
    pub fn to_relation(&self) -> BinaryRelation {
        BinaryRelation::from_fn(self.carrier, self.carrier, |x, y| {
            self.block_of[x] == self.block_of[y]
        })
    }

    /// True when every block of `self` is contained in a block of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        self.carrier.check_same(other.carrier)?;
        Ok(self.blocks.iter().all(|block| {
            let target = other.block_of[block[0]];
            block.iter().all(|&x| other.block_of[x] == target)
        }))
    }

    /// Enumerate every partition of the carrier, in lexicographic order of
    /// restricted growth strings. The single-block partition comes first
    /// and the discrete partition comes last.
    pub fn all(carrier: Carrier) -> Partitions {
        Partitions {
            carrier,
            next: Some(vec![0; carrier.size()]),
        }
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over all partitions of a carrier; see [`Partition::all`].
#[derive(Debug, Clone)]
pub struct Partitions {
    carrier: Carrier,
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let rgs = self.next.take()?;
        let partition = Partition::from_assignment(self.carrier, &rgs)
            .expect("restricted growth strings are valid assignments");
        // Advance to the next restricted growth string: a digit may rise to
        // at most max(prefix) + 1, and everything after it resets to 0.
        let mut next = rgs;
        let mut i = next.len();
        while i > 1 {
            i -= 1;
            let prefix_max = next[..i].iter().copied().max().unwrap_or(0);
            if next[i] <= prefix_max {
                next[i] += 1;
                next[i + 1..].fill(0);
                self.next = Some(next);
                return Some(partition);
            }
        }
        self.next = None;
        Some(partition)
    }
}
