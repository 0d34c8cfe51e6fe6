//! Tree decompositions, branch decompositions and search trees of scenarios,
//! their validators, and the conversions between them.

mod convert;
mod exact;
mod search;

pub use convert::{bdec_to_tdec_cubed, cubed_scenario, search_tree_to_tdec, tdec_to_bdec, tdec_to_search_tree};
pub use exact::{make_exact, potential, ExactStep, MakeExactTrace, StepKind};
pub use search::{find_bdec, find_tdec, simple_partitions};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scenario::Scenario;
use crate::subset::{GroundSet, Subset};
use crate::tree::Tree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A label is not in `𝒮`.
    NotSimple { node: usize, label: Subset },
    /// Two leaf labels share elements.
    Overlap { a: usize, b: usize },
    /// Leaf labels miss these elements.
    Uncovered { missing: Subset },
    /// The partition induced at an internal node is not feasible.
    NodeInfeasible { node: usize, partition: Partition },
    /// The bipartition induced by an edge is not feasible.
    EdgeInfeasible { edge: (usize, usize), partition: Partition },
    /// An internal node of a branch decomposition without degree three.
    NotCubic { node: usize, degree: usize },
    /// Outgoing labels at an internal node do not partition the ground set.
    NotPartitionAt { node: usize },
    /// `l(s,t) ∩ l(t,s) ≠ ∅`.
    CycleOverlap { s: usize, t: usize },
    /// `l(s,t) ∪ l(t,s) ≠ A`.
    NotExact { s: usize, t: usize },
    /// A label entering a leaf is not in `𝒮`.
    LeafEntryNotSimple { s: usize, t: usize, label: Subset },
}

/// A tree whose leaves carry subsets of the ground set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafLabeling {
    pub tree: Tree,
    pub labels: BTreeMap<usize, Subset>,
}

impl LeafLabeling {
    pub fn new(tree: Tree, labels: BTreeMap<usize, Subset>) -> Result<Self> {
        let leaves = tree.leaves();
        if labels.keys().copied().collect::<Vec<_>>() != leaves {
            return Err(Error::Validation(format!(
                "labels must be given exactly on the leaves {leaves:?}"
            )));
        }
        Ok(LeafLabeling { tree, labels })
    }

    /// Union of the leaf labels on `to`'s side of edge `from`–`to`.
    pub fn side_union(&self, from: usize, to: usize) -> Subset {
        self.tree
            .side(from, to)
            .into_iter()
            .filter_map(|v| self.labels.get(&v))
            .fold(Subset::EMPTY, |a, b| a.union(*b))
    }

    /// The blocks `P_t` at node `t`, one per neighbour, possibly empty.
    pub fn node_blocks(&self, t: usize) -> Vec<Subset> {
        self.tree.neighbors(t).iter().map(|&u| self.side_union(t, u)).collect()
    }

    /// Checks that the labels are pairwise disjoint, cover `A` and lie in `𝒮`.
    fn check_leaf_partition(&self, s: &Scenario, out: &mut Vec<Violation>) -> bool {
        let before = out.len();
        let mut seen = Subset::EMPTY;
        let entries: Vec<(usize, Subset)> = self.labels.iter().map(|(k, v)| (*k, *v)).collect();
        for (i, &(v, x)) in entries.iter().enumerate() {
            if !s.is_simple(x) {
                out.push(Violation::NotSimple { node: v, label: x });
            }
            if x.intersects(seen) {
                let (w, _) = entries[..i]
                    .iter()
                    .find(|(_, y)| y.intersects(x))
                    .copied()
                    .expect("overlap has a partner");
                out.push(Violation::Overlap { a: w, b: v });
            }
            seen = seen.union(x);
        }
        if seen != s.full() {
            out.push(Violation::Uncovered {
                missing: s.full().difference(seen),
            });
        }
        out.len() == before
    }

    pub fn to_dot(&self, ground: &GroundSet, name: &str) -> String {
        self.tree.to_dot(name, |v| match self.labels.get(&v) {
            Some(x) => ground.format_subset(*x),
            None => format!("t{v}"),
        })
    }
}

/// Tree decomposition `(T, τ)` of a scenario.
pub type TreeDec = LeafLabeling;

/// Branch decomposition `(T, β)` of a scenario; `T` must be cubic.
pub type BranchDec = LeafLabeling;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TdecReport {
    pub td1: bool,
    pub td2: bool,
    pub violations: Vec<Violation>,
}

impl TdecReport {
    pub fn is_valid(&self) -> bool {
        self.td1 && self.td2
    }
}

pub fn validate_tdec(s: &Scenario, d: &TreeDec) -> TdecReport {
    let mut violations = Vec::new();
    let td1 = d.check_leaf_partition(s, &mut violations);
    let mut td2 = true;
    for t in d.tree.internal_nodes() {
        match Partition::from_blocks(s.n(), d.node_blocks(t)) {
            Ok(p) if s.is_feasible(&p) => {}
            Ok(p) => {
                td2 = false;
                violations.push(Violation::NodeInfeasible { node: t, partition: p });
            }
            // overlapping leaf labels; already reported under TD1
            Err(_) => td2 = false,
        }
    }
    TdecReport { td1, td2, violations }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BdecReport {
    pub cubic: bool,
    pub bd1: bool,
    pub bd2: bool,
    pub violations: Vec<Violation>,
}

impl BdecReport {
    pub fn is_valid(&self) -> bool {
        self.cubic && self.bd1 && self.bd2
    }
}

/// The bipartition `P_e` induced by edge `(u, v)`.
pub fn edge_partition(d: &BranchDec, n: usize, (u, v): (usize, usize)) -> Result<Partition> {
    Partition::from_blocks(n, [d.side_union(v, u), d.side_union(u, v)])
}

pub fn validate_bdec(s: &Scenario, d: &BranchDec) -> BdecReport {
    let mut violations = Vec::new();
    let mut cubic = true;
    for t in d.tree.internal_nodes() {
        if d.tree.degree(t) != 3 {
            cubic = false;
            violations.push(Violation::NotCubic {
                node: t,
                degree: d.tree.degree(t),
            });
        }
    }
    let bd1 = d.check_leaf_partition(s, &mut violations);
    let mut bd2 = true;
    for e in d.tree.edges() {
        match edge_partition(d, s.n(), e) {
            Ok(p) if s.is_feasible(&p) => {}
            Ok(p) => {
                bd2 = false;
                violations.push(Violation::EdgeInfeasible { edge: e, partition: p });
            }
            Err(_) => bd2 = false,
        }
    }
    BdecReport {
        cubic,
        bd1,
        bd2,
        violations,
    }
}

/// A bidirected tree with a subset on every arc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchTree {
    pub tree: Tree,
    pub labels: BTreeMap<(usize, usize), Subset>,
}

impl SearchTree {
    pub fn new(tree: Tree, labels: BTreeMap<(usize, usize), Subset>) -> Result<Self> {
        if tree.len() < 2 {
            return Err(Error::Validation("a search tree needs at least one edge".into()));
        }
        if labels.keys().copied().collect::<Vec<_>>() != tree.arcs() {
            return Err(Error::Validation("labels must be given on exactly the arcs".into()));
        }
        Ok(SearchTree { tree, labels })
    }

    pub fn label(&self, s: usize, t: usize) -> Subset {
        self.labels[&(s, t)]
    }

    /// `π_t`: labels of the arcs leaving `t`, possibly with empty sets.
    pub fn outgoing(&self, t: usize) -> Vec<Subset> {
        self.tree.neighbors(t).iter().map(|&u| self.label(t, u)).collect()
    }

    /// Arcs `(s, t)` with `t` a leaf.
    pub fn leaf_entering_arcs(&self) -> Vec<(usize, usize)> {
        self.tree
            .leaves()
            .into_iter()
            .map(|t| (self.tree.neighbors(t)[0], t))
            .collect()
    }

    /// Leaf labels: arcs leaving the leaves.
    pub fn leaf_arcs(&self) -> Vec<(usize, usize)> {
        self.tree
            .leaves()
            .into_iter()
            .map(|t| (t, self.tree.neighbors(t)[0]))
            .collect()
    }

    pub fn is_compatible_with(&self, family: &[Subset]) -> bool {
        self.leaf_arcs()
            .into_iter()
            .all(|(s, t)| family.iter().any(|f| f.is_subset_of(self.label(s, t))))
    }

    pub fn to_dot(&self, ground: &GroundSet, name: &str) -> String {
        let mut s = format!("digraph {name} {{\n");
        for v in 0..self.tree.len() {
            s.push_str(&format!("  n{v} [label=\"t{v}\"];\n"));
        }
        for ((a, b), x) in &self.labels {
            s.push_str(&format!("  n{a} -> n{b} [label=\"{}\"];\n", ground.format_subset(*x)));
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchTreeReport {
    pub st1: bool,
    pub st2: bool,
    pub exact: bool,
    /// `π_t ∈ 𝒫` at internal nodes and leaf-entering labels in `𝒮`.
    pub scenario: bool,
    /// On exact trees: whether the leaf-entering labels partition `A`.
    pub leaf_entries_partition: Option<bool>,
    pub violations: Vec<Violation>,
}

impl SearchTreeReport {
    pub fn is_valid(&self, require_exact: bool, require_scenario: bool) -> bool {
        self.st1 && self.st2 && (!require_exact || self.exact) && (!require_scenario || self.scenario)
    }
}

pub fn validate_search_tree(
    s: &Scenario,
    st: &SearchTree,
    require_exact: bool,
    require_scenario: bool,
) -> SearchTreeReport {
    let full = s.full();
    let mut violations = Vec::new();
    let mut st1 = true;
    let mut scenario = true;
    for t in st.tree.internal_nodes() {
        match Partition::from_blocks(s.n(), st.outgoing(t)) {
            Ok(p) => {
                if !s.is_feasible(&p) {
                    scenario = false;
                    if require_scenario {
                        violations.push(Violation::NodeInfeasible { node: t, partition: p });
                    }
                }
            }
            Err(_) => {
                st1 = false;
                violations.push(Violation::NotPartitionAt { node: t });
            }
        }
    }
    let mut st2 = true;
    let mut exact = true;
    for (a, b) in st.tree.edges() {
        let (x, y) = (st.label(a, b), st.label(b, a));
        if x.intersects(y) {
            st2 = false;
            violations.push(Violation::CycleOverlap { s: a, t: b });
        }
        if x.union(y) != full {
            exact = false;
            if require_exact {
                violations.push(Violation::NotExact { s: a, t: b });
            }
        }
    }
    for (a, b) in st.leaf_entering_arcs() {
        let x = st.label(a, b);
        if !s.is_simple(x) {
            scenario = false;
            if require_scenario {
                violations.push(Violation::LeafEntryNotSimple { s: a, t: b, label: x });
            }
        }
    }
    let leaf_entries_partition = exact.then(|| {
        let entries: Vec<Subset> = st
            .leaf_entering_arcs()
            .into_iter()
            .map(|(a, b)| st.label(a, b))
            .collect();
        let total: usize = entries.iter().map(|x| x.len()).sum();
        let cover = entries.iter().fold(Subset::EMPTY, |a, b| a.union(*b));
        total == s.n() && cover == full
    });
    SearchTreeReport {
        st1,
        st2,
        exact,
        scenario,
        leaf_entries_partition,
        violations,
    }
}

#[cfg(test)]
mod tests;
