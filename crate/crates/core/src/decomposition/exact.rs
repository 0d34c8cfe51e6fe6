use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scenario::{weak_submod_witness, Scenario, Side};
use crate::subset::Subset;

use super::{validate_search_tree, SearchTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepKind {
    /// The outgoing label of a leaf was replaced by the complement of its
    /// incoming label.
    Leaf,
    /// An internal node's outgoing labels were redirected towards `F`; the
    /// side says which endpoint of the 2-cycle was rewritten.
    Redirect(Side),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactStep {
    pub kind: StepKind,
    /// The non-exact 2-cycle, as the arc `(s, t)` scanned.
    pub cycle: (usize, usize),
    /// Elements added to the rewritten label.
    pub added: Subset,
    pub potential_before: usize,
    pub potential_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MakeExactTrace {
    pub tree: SearchTree,
    pub steps: Vec<ExactStep>,
}

/// `Σ_{internal t} Σ_{X ∈ π_t} |X| + Σ_{leaf s} |l(s, s')|`.
pub fn potential(st: &SearchTree) -> usize {
    let internal: usize = st
        .tree
        .internal_nodes()
        .into_iter()
        .map(|t| st.outgoing(t).iter().map(|x| x.len()).sum::<usize>())
        .sum();
    let leaves: usize = st.leaf_arcs().into_iter().map(|(a, b)| st.label(a, b).len()).sum();
    internal + leaves
}

/// Largest number of labellings `make_exact` visits before giving up.
pub const MAX_EXACT_STATES: usize = 200_000;

type Labels = BTreeMap<(usize, usize), Subset>;
type Frame = (
    SearchTree,
    Vec<ExactStep>,
    Option<std::vec::IntoIter<(ExactStep, Labels)>>,
);

/// Applies the leaf rule to the first non-exact 2-cycle with a leaf end.
fn leaf_move(cur: &SearchTree, order: &[(usize, usize)], n: usize) -> Option<(ExactStep, Labels)> {
    let full = Subset::full(n);
    let &(a, b) = order.iter().find(|&&(a, b)| {
        (cur.tree.is_leaf(a) || cur.tree.is_leaf(b)) && cur.label(a, b).union(cur.label(b, a)) != full
    })?;
    let (leaf, other) = if cur.tree.is_leaf(b) { (b, a) } else { (a, b) };
    let old = cur.label(leaf, other);
    let new = cur.label(other, leaf).complement(n);
    let mut labels = cur.labels.clone();
    labels.insert((leaf, other), new);
    Some((step(StepKind::Leaf, (a, b), new.difference(old)), labels))
}

fn step(kind: StepKind, cycle: (usize, usize), added: Subset) -> ExactStep {
    ExactStep {
        kind,
        cycle,
        added,
        potential_before: 0,
        potential_after: 0,
    }
}

/// Every redirect repairing part of a non-exact 2-cycle between internal
/// nodes. The witness `weak_submod_witness` picks for the first such cycle
/// comes first.
fn redirect_moves(s: &Scenario, cur: &SearchTree, order: &[(usize, usize)]) -> Result<Vec<(ExactStep, Labels)>> {
    let n = s.n();
    let full = s.full();
    let mut out = Vec::new();
    for &(a, b) in order {
        let (x, y) = (cur.label(a, b), cur.label(b, a));
        if x.union(y) == full {
            continue;
        }
        let p = Partition::from_blocks(n, cur.outgoing(a))?;
        let q = Partition::from_blocks(n, cur.outgoing(b))?;
        let mut options = Vec::new();
        if out.is_empty() {
            match weak_submod_witness(s, &p, &q, x, y) {
                Ok(w) => options.push((w.side, w.f)),
                Err(Error::NoWitness(m)) => return Err(Error::NoWitness(format!("non-exact 2-cycle ({a},{b}): {m}"))),
                Err(e) => return Err(e),
            }
        }
        for f in full.difference(x.union(y)).nonempty_subsets_by_size() {
            if s.is_feasible(&p.redirect(x, f)?) {
                options.push((Side::P, f));
            }
            if s.is_feasible(&q.redirect(y, f)?) {
                options.push((Side::Q, f));
            }
        }
        let mut seen = HashSet::new();
        for (side, f) in options {
            if !seen.insert((side, f)) {
                continue;
            }
            let (at, toward) = match side {
                Side::P => (a, b),
                Side::Q => (b, a),
            };
            let mut labels = cur.labels.clone();
            for &u in cur.tree.neighbors(at) {
                let l = cur.label(at, u);
                labels.insert((at, u), if u == toward { l.union(f) } else { l.difference(f) });
            }
            out.push((step(StepKind::Redirect(side), (a, b), f), labels));
        }
    }
    Ok(out)
}

/// Rewrites a search tree until every 2-cycle is exact.
///
/// A 2-cycle with a leaf end is repaired by giving the leaf the complement
/// of its incoming label; these repairs are always applied first. Between
/// two internal nodes, part of the gap is moved into one label by a
/// redirect that keeps the node partition feasible. Redirects alone need
/// not make progress and can cycle, so the labellings reachable by them
/// are searched depth first, trying the weak submodularity witness of the
/// first non-exact 2-cycle (in breadth-first order from node 0) before the
/// alternatives. The returned steps are the path to the first exact
/// labelling found.
pub fn make_exact(s: &Scenario, st: &SearchTree, family: &[Subset]) -> Result<MakeExactTrace> {
    if st.tree.internal_nodes().is_empty() {
        return Err(Error::Precondition("the search tree has no internal node".into()));
    }
    let report = validate_search_tree(s, st, false, true);
    if !report.is_valid(false, true) {
        return Err(Error::Precondition(format!(
            "not a search tree for the scenario: {:?}",
            report.violations
        )));
    }
    if !st.is_compatible_with(family) {
        return Err(Error::Precondition(
            "search tree is not compatible with the family".into(),
        ));
    }
    let n = s.n();
    let full = s.full();
    let order: Vec<(usize, usize)> = st
        .tree
        .bfs(0)
        .into_iter()
        .filter_map(|(v, p)| p.map(|p| (p, v)))
        .collect();
    let with_labels = |labels: Labels| SearchTree {
        tree: st.tree.clone(),
        labels,
    };
    let mut seen: HashSet<Labels> = HashSet::from([st.labels.clone()]);
    // each frame: a labelling, the path that reached it, and its untried moves
    let mut stack: Vec<Frame> = vec![(st.clone(), Vec::new(), None)];
    while let Some((cur, path, moves)) = stack.last_mut() {
        if order
            .iter()
            .all(|&(a, b)| cur.label(a, b).union(cur.label(b, a)) == full)
        {
            let (tree, steps, _) = stack.pop().expect("nonempty");
            return Ok(MakeExactTrace { tree, steps });
        }
        if moves.is_none() {
            *moves = Some(
                match leaf_move(cur, &order, n) {
                    Some(m) => vec![m],
                    None => redirect_moves(s, cur, &order)?,
                }
                .into_iter(),
            );
        }
        let next = moves.as_mut().expect("just filled").find(|(_, l)| !seen.contains(l));
        let Some((mut step, labels)) = next else {
            stack.pop();
            continue;
        };
        if seen.len() >= MAX_EXACT_STATES {
            return Err(Error::Validation(format!(
                "no exact labelling within {MAX_EXACT_STATES} rewritten labellings"
            )));
        }
        seen.insert(labels.clone());
        let next = with_labels(labels);
        step.potential_before = potential(cur);
        step.potential_after = potential(&next);
        let mut steps = path.clone();
        steps.push(step);
        stack.push((next, steps, None));
    }
    Err(Error::Validation(
        "no exact labelling is reachable by leaf repairs and redirects".into(),
    ))
}
