//! The partition lattice over a finite ground set.
//!
//! A [`Partition`] is always kept in canonical form: empty blocks are dropped
//! and the remaining blocks are ordered by their smallest element. Two
//! partitions are equal exactly when their canonical forms coincide.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{GroundSet, Subset, MAX_GROUND};

/// Default ground-size bound for full partition enumeration (B(10) = 115975).
pub const DEFAULT_ENUMERATION_LIMIT: usize = 10;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<Subset>,
}

impl Partition {
    /// Builds a partition from blocks that may include empty sets.
    pub fn from_blocks<I: IntoIterator<Item = Subset>>(n: usize, blocks: I) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGround);
        }
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge { n, max: MAX_GROUND });
        }
        let full = Subset::full(n);
        let mut seen = Subset::EMPTY;
        let mut kept = Vec::new();
        for b in blocks {
            if !b.is_subset_of(full) {
                return Err(Error::NotAPartition(format!("block {b:?} leaves the ground set")));
            }
            if b.intersects(seen) {
                return Err(Error::NotAPartition(format!("block {b:?} overlaps another block")));
            }
            seen = seen.union(b);
            if !b.is_empty() {
                kept.push(b);
            }
        }
        if seen != full {
            return Err(Error::NotAPartition(format!(
                "elements {:?} are not covered",
                full.difference(seen)
            )));
        }
        Ok(Self::canonical(n, kept))
    }

    fn canonical(n: usize, mut blocks: Vec<Subset>) -> Self {
        blocks.retain(|b| !b.is_empty());
        blocks.sort_by_key(|b| b.min_element());
        Partition { n, blocks }
    }

    /// The one-block partition `{A}`.
    pub fn trivial(n: usize) -> Self {
        Partition {
            n,
            blocks: vec![Subset::full(n)],
        }
    }

    /// All singletons.
    pub fn discrete(n: usize) -> Self {
        Partition {
            n,
            blocks: (0..n).map(Subset::singleton).collect(),
        }
    }

    /// `{X, X^c}` in canonical form.
    pub fn bipartition(n: usize, x: Subset) -> Self {
        let x = x.intersection(Subset::full(n));
        Self::canonical(n, vec![x, x.complement(n)])
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn has_block(&self, x: Subset) -> bool {
        self.blocks.contains(&x)
    }

    /// The block containing element `i`.
    pub fn block_of(&self, i: usize) -> Subset {
        *self
            .blocks
            .iter()
            .find(|b| b.contains(i))
            .expect("element outside the ground set")
    }

    /// Whether `x` is a union of blocks.
    pub fn refines(&self, x: Subset) -> bool {
        self.blocks.iter().all(|b| b.is_subset_of(x) || !b.intersects(x))
    }

    fn check_ground(&self, other: &Partition) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GroundMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// `self >= other`: every block of `other` lies inside a block of `self`.
    pub fn is_coarser_than(&self, other: &Partition) -> Result<bool> {
        self.check_ground(other)?;
        Ok(other
            .blocks
            .iter()
            .all(|b| self.blocks.iter().any(|a| b.is_subset_of(*a))))
    }

    /// The common coarsening `self ∨ other`.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.check_ground(other)?;
        let mut merged: Vec<Subset> = Vec::with_capacity(self.blocks.len());
        for &b in self.blocks.iter().chain(&other.blocks) {
            let mut acc = b;
            merged.retain(|m| {
                if m.intersects(acc) {
                    acc = acc.union(*m);
                    false
                } else {
                    true
                }
            });
            merged.push(acc);
        }
        // a merged set can absorb earlier disjoint ones only through later blocks;
        // one more sweep settles chains
        loop {
            let mut changed = false;
            let mut out: Vec<Subset> = Vec::with_capacity(merged.len());
            for b in merged {
                if let Some(pos) = out.iter().position(|o| o.intersects(b)) {
                    out[pos] = out[pos].union(b);
                    changed = true;
                } else {
                    out.push(b);
                }
            }
            merged = out;
            if !changed {
                break;
            }
        }
        Ok(Self::canonical(self.n, merged))
    }

    /// `P_{x→f}`: block `x` becomes `x ∪ f`, every other block loses `f`.
    ///
    /// The empty set counts as an (implicit) block of every partition, so
    /// `x = ∅` inserts `f` as a new block.
    pub fn redirect(&self, x: Subset, f: Subset) -> Result<Partition> {
        if !x.is_empty() && !self.has_block(x) {
            return Err(Error::NotABlock(format!("{x:?}")));
        }
        let f = f.intersection(Subset::full(self.n));
        let mut blocks: Vec<Subset> = self
            .blocks
            .iter()
            .filter(|b| **b != x)
            .map(|b| b.difference(f))
            .collect();
        blocks.push(x.union(f));
        Ok(Self::canonical(self.n, blocks))
    }

    /// Restricted-growth string: element `i` maps to the index of its block.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (k, b) in self.blocks.iter().enumerate() {
            for i in b.iter() {
                out[i] = k;
            }
        }
        out
    }

    pub fn display<'a>(&'a self, ground: &'a GroundSet) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Partition, &'a GroundSet);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for b in self.0.blocks() {
                    f.write_str(&self.1.format_subset(*b))?;
                }
                Ok(())
            }
        }
        D(self, ground)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            write!(f, "{b:?}")?;
        }
        Ok(())
    }
}

/// Iterator over all partitions of `{0, .., n-1}` by restricted-growth strings.
pub struct Partitions {
    n: usize,
    rgs: Vec<usize>,
    maxes: Vec<usize>,
    done: bool,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let nblocks = self.maxes[self.n - 1] + 1;
        let mut blocks = vec![Subset::EMPTY; nblocks];
        for (i, &l) in self.rgs.iter().enumerate() {
            blocks[l] = blocks[l].insert(i);
        }
        let out = Partition { n: self.n, blocks };

        // advance: rightmost position that can still grow
        let mut i = self.n - 1;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            let bound = self.maxes[i - 1] + 1;
            if self.rgs[i] < bound {
                self.rgs[i] += 1;
                self.maxes[i] = self.maxes[i - 1].max(self.rgs[i]);
                for j in i + 1..self.n {
                    self.rgs[j] = 0;
                    self.maxes[j] = self.maxes[i];
                }
                break;
            }
            i -= 1;
        }
        Some(out)
    }
}

/// Every partition of an `n`-element ground set, each exactly once.
pub fn enumerate_partitions(n: usize, limit: usize) -> Result<Partitions> {
    if n == 0 {
        return Err(Error::EmptyGround);
    }
    if n > limit {
        return Err(Error::LimitExceeded { n, limit });
    }
    Ok(Partitions {
        n,
        rgs: vec![0; n],
        maxes: vec![0; n],
        done: false,
    })
}

/// All partitions `{X, Y, Z}` with `X ∪ Y ∪ Z = A` (disjoint, possibly empty)
/// whose three bipartitions `{X, X^c}`, `{Y, Y^c}`, `{Z, Z^c}` are in `bipartitions`.
pub fn triple_partitions(n: usize, bipartitions: &[Partition]) -> BTreeSet<Partition> {
    let full = Subset::full(n);
    let mut sides: BTreeSet<Subset> = BTreeSet::new();
    for p in bipartitions {
        if p.ground_size() != n || p.num_blocks() > 2 {
            continue;
        }
        match p.blocks() {
            [a] => {
                sides.insert(*a);
                sides.insert(Subset::EMPTY);
            }
            [a, b] => {
                sides.insert(*a);
                sides.insert(*b);
            }
            _ => {}
        }
    }
    let sides: Vec<Subset> = sides.into_iter().collect();
    let mut out = BTreeSet::new();
    for (i, &x) in sides.iter().enumerate() {
        for &y in &sides[i..] {
            if x.intersects(y) {
                continue;
            }
            let z = full.difference(x.union(y));
            if sides.binary_search(&z).is_ok() {
                out.insert(Partition::canonical(n, vec![x, y, z]));
            }
        }
    }
    out
}
