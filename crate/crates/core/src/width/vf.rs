use crate::error::{Error, Result};
use crate::scenario::{Scenario, ScenarioKind};
use crate::subset::Subset;
use crate::tree::Tree;

use super::connectivity::is_singleton_or_empty;
use super::graph::{boundary, Graph, GraphTreeDec};
use super::matroid::{exhaustive_leaf_decomposition, MatroidTreeDec};

/// A vertex-free tree decomposition: every edge mapped to a tree node.
pub type VFTreeDec = MatroidTreeDec;

/// `VF-node-w(x) = |V| + (d − 1)·c(G) − Σ c(G − F_i^x)`.
pub fn vf_node_width(g: &Graph, d: &VFTreeDec, x: usize) -> i64 {
    let all = g.all_edges();
    let fs = d.branches(x);
    let sum: i64 = fs.iter().map(|f| g.components(all.difference(*f)) as i64).sum();
    g.num_vertices() as i64 + (fs.len() as i64 - 1) * g.components(all) as i64 - sum
}

pub fn vf_width(g: &Graph, d: &VFTreeDec) -> i64 {
    (0..d.tree.len()).map(|x| vf_node_width(g, d, x)).max().unwrap_or(0)
}

/// VF tree-width by exhaustive search.
pub fn vf_tw(g: &Graph) -> Result<(i64, VFTreeDec)> {
    if g.num_edges() == 0 {
        return Err(Error::InvalidGraph("VF tree-width needs at least one edge".into()));
    }
    exhaustive_leaf_decomposition(g.num_edges(), |d| vf_width(g, d))
}

/// `(Part_tw^k, S_sing)` on the edges of `g`.
pub fn part_tw_k(g: &Graph, k: usize) -> Result<Scenario> {
    if g.num_edges() == 0 {
        return Err(Error::InvalidGraph("the edge set is empty".into()));
    }
    let gg = g.clone();
    Ok(Scenario::new(
        g.edge_ground()?,
        ScenarioKind::Boundary,
        move |p| boundary(&gg, p).len() <= k,
        is_singleton_or_empty,
    ))
}

/// Contracts every tree edge `st` with `B_t ⊆ B_s` until none is left.
pub fn make_small(d: &GraphTreeDec) -> GraphTreeDec {
    let mut tree = d.tree.clone();
    let mut bags = d.bags.clone();
    let mut alive = vec![true; bags.len()];
    loop {
        let hit = tree.edges().into_iter().find_map(|(a, b)| {
            if bags[b].is_subset_of(bags[a]) {
                Some((b, a))
            } else if bags[a].is_subset_of(bags[b]) {
                Some((a, b))
            } else {
                None
            }
        });
        let Some((gone, keep)) = hit else { break };
        for u in tree.neighbors(gone).to_vec() {
            tree.remove_edge(gone, u);
            if u != keep {
                tree.add_edge(keep, u);
            }
        }
        alive[gone] = false;
        bags[gone] = Subset::EMPTY;
    }
    if alive.iter().filter(|&&a| a).count() == 1 {
        let only = alive.iter().position(|&a| a).unwrap();
        return GraphTreeDec {
            tree: Tree::single(),
            bags: vec![bags[only]],
        };
    }
    let (tree, map) = tree.compact();
    let mut out = vec![Subset::EMPTY; tree.len()];
    for (old, new) in map {
        out[new] = bags[old];
    }
    GraphTreeDec { tree, bags: out }
}

/// Maps every edge to a node of the (contracted) decomposition whose bag
/// contains both ends.
pub fn graph_tdec_to_vf(g: &Graph, d: &GraphTreeDec) -> Result<VFTreeDec> {
    d.validate(g)?;
    let small = make_small(d);
    let iota = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let uv = Subset::EMPTY.insert(u).insert(v);
            small
                .bags
                .iter()
                .position(|b| uv.is_subset_of(*b))
                .expect("valid decompositions cover every edge")
        })
        .collect();
    MatroidTreeDec::new(small.tree, iota)
}
