use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::partition::{triple_partitions, Partition};
use crate::scenario::{Scenario, ScenarioKind};
use crate::subset::Subset;
use crate::tree::Tree;

use super::{edge_partition, validate_bdec, validate_search_tree, validate_tdec, BranchDec, SearchTree, TreeDec};

/// Reads a tree decomposition off an exact search tree: each leaf gets the
/// label of the arc entering it.
pub fn search_tree_to_tdec(s: &Scenario, st: &SearchTree) -> Result<TreeDec> {
    let report = validate_search_tree(s, st, true, true);
    if !report.is_valid(true, true) {
        return Err(Error::Precondition(format!(
            "not an exact search tree for the scenario: {:?}",
            report.violations
        )));
    }
    let labels = st
        .leaf_entering_arcs()
        .into_iter()
        .map(|(a, b)| (b, st.label(a, b)))
        .collect();
    let d = TreeDec::new(st.tree.clone(), labels)?;
    let check = validate_tdec(s, &d);
    if !check.is_valid() {
        return Err(Error::Validation(format!(
            "derived tree decomposition is invalid: {:?}",
            check.violations
        )));
    }
    Ok(d)
}

/// Labels every arc `(s, t)` with the union of the leaf labels on `t`'s side.
///
/// A one-node decomposition becomes the two-node tree with labels `A` and `∅`.
pub fn tdec_to_search_tree(s: &Scenario, d: &TreeDec) -> Result<SearchTree> {
    let report = validate_tdec(s, d);
    if !report.is_valid() {
        return Err(Error::Precondition(format!(
            "invalid tree decomposition: {:?}",
            report.violations
        )));
    }
    if d.tree.len() == 1 {
        let tree = Tree::from_edges(2, &[(0, 1)])?;
        let labels = BTreeMap::from([((0, 1), s.full()), ((1, 0), Subset::EMPTY)]);
        return SearchTree::new(tree, labels);
    }
    let labels = d
        .tree
        .arcs()
        .into_iter()
        .map(|(a, b)| ((a, b), d.side_union(a, b)))
        .collect();
    SearchTree::new(d.tree.clone(), labels)
}

/// Expands internal nodes of degree at least four into caterpillars and
/// suppresses internal nodes of degree two.
pub fn tdec_to_bdec(s: &Scenario, d: &TreeDec) -> Result<BranchDec> {
    let report = validate_tdec(s, d);
    if !report.is_valid() {
        return Err(Error::Precondition(format!(
            "invalid tree decomposition: {:?}",
            report.violations
        )));
    }
    let mut tree = d.tree.clone();
    let original = tree.len();
    for t in 0..original {
        let nbrs = tree.neighbors(t).to_vec();
        if nbrs.len() < 4 {
            continue;
        }
        // t keeps nbrs[0], nbrs[1]; a chain of fresh nodes takes the rest
        let mut prev = t;
        for &u in &nbrs[2..nbrs.len() - 2] {
            tree.remove_edge(t, u);
            let c = tree.add_node();
            tree.add_edge(prev, c);
            tree.add_edge(c, u);
            prev = c;
        }
        let (y, z) = (nbrs[nbrs.len() - 2], nbrs[nbrs.len() - 1]);
        let last = tree.add_node();
        tree.remove_edge(t, y);
        tree.remove_edge(t, z);
        tree.add_edge(prev, last);
        tree.add_edge(last, y);
        tree.add_edge(last, z);
    }
    for t in 0..tree.len() {
        if tree.degree(t) == 2 {
            let (a, b) = (tree.neighbors(t)[0], tree.neighbors(t)[1]);
            tree.remove_edge(t, a);
            tree.remove_edge(t, b);
            tree.add_edge(a, b);
        }
    }
    let (tree, map) = tree.compact();
    let labels = d.labels.iter().map(|(v, x)| (map[v], *x)).collect();
    let b = BranchDec::new(tree, labels)?;
    let check = validate_bdec(s, &b);
    if !check.is_valid() {
        return Err(Error::Validation(format!(
            "cubic expansion is invalid: {:?}",
            check.violations
        )));
    }
    Ok(b)
}

/// `(𝒫³, 𝒮)`: partitions `{X, Y, Z}` all of whose blocks give feasible
/// bipartitions, with the simple sets of `s`.
pub fn cubed_scenario(s: &Scenario) -> Result<Scenario> {
    let bips: Vec<Partition> = s
        .feasible_partitions()?
        .into_iter()
        .filter(|p| p.num_blocks() <= 2)
        .collect();
    let cubed: BTreeSet<Partition> = triple_partitions(s.n(), &bips);
    Ok(s.with_partitions(ScenarioKind::Derived, move |p| cubed.contains(p)))
}

/// The tree of a branch decomposition, read as a tree decomposition of
/// `(𝒫³, 𝒮)`. Returns the decomposition with that scenario.
pub fn bdec_to_tdec_cubed(s: &Scenario, d: &BranchDec) -> Result<(TreeDec, Scenario)> {
    let report = validate_bdec(s, d);
    if !report.is_valid() {
        return Err(Error::Precondition(format!(
            "invalid branch decomposition: {:?}",
            report.violations
        )));
    }
    // every P_e is feasible, so the edge bipartitions are already among 𝒫's
    debug_assert!(d
        .tree
        .edges()
        .into_iter()
        .all(|e| edge_partition(d, s.n(), e).is_ok_and(|p| s.is_feasible(&p))));
    let cubed = cubed_scenario(s)?;
    let t = d.clone();
    let check = validate_tdec(&cubed, &t);
    if !check.is_valid() {
        return Err(Error::Validation(format!(
            "not a tree decomposition of the cubed scenario: {:?}",
            check.violations
        )));
    }
    Ok((t, cubed))
}
