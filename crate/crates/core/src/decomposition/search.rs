use crate::error::{Error, Result};
use crate::partition::enumerate_partitions;
use crate::scenario::Scenario;
use crate::subset::Subset;
use crate::tree::leaf_labeled_trees;

use super::{validate_bdec, validate_tdec, BranchDec, LeafLabeling, TreeDec};

/// Largest leaf count the exhaustive searches will enumerate topologies for.
pub const MAX_SEARCH_LEAVES: usize = 8;

/// Partitions of `A` all of whose blocks are simple, in canonical order.
pub fn simple_partitions(s: &Scenario) -> Result<Vec<Vec<Subset>>> {
    Ok(enumerate_partitions(s.n(), s.limit())?
        .filter(|p| p.blocks().iter().all(|&b| s.is_simple(b)))
        .map(|p| p.blocks().to_vec())
        .collect())
}

fn search(s: &Scenario, cubic: bool, valid: impl Fn(&LeafLabeling) -> bool) -> Result<Option<LeafLabeling>> {
    for blocks in simple_partitions(s)? {
        let m = blocks.len();
        if m > MAX_SEARCH_LEAVES {
            return Err(Error::LimitExceeded {
                n: m,
                limit: MAX_SEARCH_LEAVES,
            });
        }
        for tree in leaf_labeled_trees(m, cubic) {
            let labels = blocks.iter().enumerate().map(|(i, &b)| (i, b)).collect();
            let d = LeafLabeling::new(tree, labels)?;
            if valid(&d) {
                return Ok(Some(d));
            }
        }
    }
    Ok(None)
}

/// Exhaustive tree-decomposition search over leaf labellings by simple sets
/// and all tree shapes with internal degree at least three.
pub fn find_tdec(s: &Scenario) -> Result<Option<TreeDec>> {
    search(s, false, |d| validate_tdec(s, d).is_valid())
}

/// Exhaustive branch-decomposition search over cubic shapes.
pub fn find_bdec(s: &Scenario) -> Result<Option<BranchDec>> {
    search(s, true, |d| validate_bdec(s, d).is_valid())
}
