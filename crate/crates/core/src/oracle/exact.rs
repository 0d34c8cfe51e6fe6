use std::collections::BTreeMap;

use crate::decomposition::SearchTree;
use crate::error::Result;
use crate::partition::Partition;
use crate::scenario::Scenario;
use crate::subset::Subset;
use crate::tree::Tree;

#[derive(Clone, Copy, Debug)]
enum Derivation {
    Leaf,
    /// Index of the partition placed at the node.
    Node(usize),
}

/// `good[X]`: some subtree hanging below an arc labelled `X` can be
/// completed. A leaf needs `X ∈ 𝒮`; an internal node needs `P ∈ 𝒫` with
/// `A \ X` as a block (dropped when `X = A`) and every other block good.
fn derivations(s: &Scenario, parts: &[Partition]) -> Vec<Option<Derivation>> {
    let n = s.n();
    let full = s.full();
    let mut good: Vec<Option<Derivation>> = Subset::all(n)
        .map(|x| s.is_simple(x).then_some(Derivation::Leaf))
        .collect();
    loop {
        let mut changed = false;
        for x in Subset::all(n) {
            if good[x.mask() as usize].is_some() || x.is_empty() {
                continue;
            }
            let rest = x.complement(n);
            let found = parts.iter().position(|p| {
                (x == full || p.has_block(rest))
                    && p.blocks()
                        .iter()
                        .filter(|&&b| b != rest)
                        .all(|b| good[b.mask() as usize].is_some())
            });
            if let Some(i) = found {
                good[x.mask() as usize] = Some(Derivation::Node(i));
                changed = true;
            }
        }
        if !changed {
            return good;
        }
    }
}

struct Builder<'a> {
    n: usize,
    parts: &'a [Partition],
    good: &'a [Option<Derivation>],
    edges: Vec<(usize, usize)>,
    labels: BTreeMap<(usize, usize), Subset>,
    nodes: usize,
}

impl Builder<'_> {
    fn arc(&mut self, s: usize, t: usize, x: Subset) {
        self.edges.push((s, t));
        self.labels.insert((s, t), x);
        self.labels.insert((t, s), x.complement(self.n));
    }

    /// Grows the subtree below `t`, whose incoming label is `x`.
    fn expand(&mut self, t: usize, x: Subset) {
        if let Some(Derivation::Node(i)) = self.good[x.mask() as usize] {
            let rest = x.complement(self.n);
            let children: Vec<Subset> = self.parts[i].blocks().iter().copied().filter(|&b| b != rest).collect();
            for y in children {
                let c = self.nodes;
                self.nodes += 1;
                self.arc(t, c, y);
                self.expand(c, y);
            }
        }
    }
}

/// Decides whether the scenario has an exact search tree by a least
/// fixpoint over subsets, and builds one when it does.
pub fn exact_search_tree(s: &Scenario) -> Result<Option<SearchTree>> {
    let parts = s.feasible_partitions()?;
    let good = derivations(s, &parts);
    let n = s.n();
    let Some(x) =
        Subset::all(n).find(|x| good[x.mask() as usize].is_some() && good[x.complement(n).mask() as usize].is_some())
    else {
        return Ok(None);
    };
    let mut b = Builder {
        n,
        parts: &parts,
        good: &good,
        edges: Vec::new(),
        labels: BTreeMap::new(),
        nodes: 2,
    };
    b.arc(0, 1, x);
    b.expand(1, x);
    b.expand(0, x.complement(n));
    let tree = Tree::from_edges(b.nodes, &b.edges)?;
    Ok(Some(SearchTree::new(tree, b.labels)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::validate_search_tree;
    use crate::width::{part_tw_k, Graph};

    #[test]
    fn triangle_thresholds() {
        let k3 = Graph::complete(3);
        let yes = part_tw_k(&k3, 3).unwrap();
        let st = exact_search_tree(&yes).unwrap().unwrap();
        assert!(validate_search_tree(&yes, &st, true, true).is_valid(true, true));
        assert!(exact_search_tree(&part_tw_k(&k3, 2).unwrap()).unwrap().is_none());
    }
}
