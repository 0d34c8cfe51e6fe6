//! Small undirected trees used by every decomposition type.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

impl Tree {
    /// The one-node tree.
    pub fn single() -> Self {
        Tree { adj: vec![vec![]] }
    }

    pub fn from_edges(num_nodes: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if num_nodes == 0 {
            return Err(Error::Validation("a tree needs at least one node".into()));
        }
        if edges.len() + 1 != num_nodes {
            return Err(Error::Validation(format!(
                "{} nodes need {} edges, got {}",
                num_nodes,
                num_nodes - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); num_nodes];
        for &(u, v) in edges {
            if u >= num_nodes || v >= num_nodes {
                return Err(Error::Validation(format!("edge ({u},{v}) names a missing node")));
            }
            if u == v || adj[u].contains(&v) {
                return Err(Error::Validation(format!("edge ({u},{v}) is a loop or repeated")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let t = Tree { adj };
        if t.component(0, usize::MAX).len() != num_nodes {
            return Err(Error::Validation("edges do not connect all nodes".into()));
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Leaves are the nodes of degree at most one.
    pub fn is_leaf(&self, v: usize) -> bool {
        self.adj[v].len() <= 1
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn internal_nodes(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| !self.is_leaf(v)).collect()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.len())
            .flat_map(|u| self.adj[u].iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Both orientations of every edge.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.len())
            .flat_map(|u| self.adj[u].iter().map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Nodes reachable from `start` without passing through `blocked`.
    pub fn component(&self, start: usize, blocked: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![start];
        seen[start] = true;
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            out.push(v);
            for &w in &self.adj[v] {
                if w != blocked && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Nodes on `to`'s side of the edge `from`–`to`.
    pub fn side(&self, from: usize, to: usize) -> Vec<usize> {
        self.component(to, from)
    }

    /// Breadth-first order from `root` together with each node's parent.
    pub fn bfs(&self, root: usize) -> Vec<(usize, Option<usize>)> {
        let mut seen = vec![false; self.len()];
        let mut out = vec![(root, None)];
        seen[root] = true;
        let mut i = 0;
        while i < out.len() {
            let v = out[i].0;
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    out.push((w, Some(v)));
                }
            }
            i += 1;
        }
        out
    }

    pub(crate) fn add_node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.adj[u].sort_unstable();
        self.adj[v].sort_unstable();
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].retain(|&w| w != v);
        self.adj[v].retain(|&w| w != u);
    }

    /// Drops isolated nodes (other than in a one-node tree) and renumbers the
    /// rest in order; returns the old-to-new map.
    pub(crate) fn compact(&self) -> (Tree, BTreeMap<usize, usize>) {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&v| self.len() == 1 || !self.adj[v].is_empty())
            .collect();
        let map: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = keep
            .iter()
            .map(|&v| {
                let mut a: Vec<usize> = self.adj[v].iter().map(|w| map[w]).collect();
                a.sort_unstable();
                a
            })
            .collect();
        (Tree { adj }, map)
    }

    /// Graphviz rendering with caller-supplied node labels.
    pub fn to_dot(&self, name: &str, label: impl Fn(usize) -> String) -> String {
        let mut s = format!("graph {name} {{\n");
        for v in 0..self.len() {
            let shape = if self.is_leaf(v) { "box" } else { "ellipse" };
            s.push_str(&format!(
                "  n{v} [shape={shape}, label=\"{}\"];\n",
                label(v).replace('"', "\\\"")
            ));
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  n{u} -- n{v};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// All trees on leaves `0..m` whose internal nodes have degree at least
/// three (exactly three if `cubic`). Internal nodes get indices `m..`.
///
/// Built by inserting leaf `k` either on an edge (new degree-3 node) or at an
/// existing internal node; removing the largest leaf inverts this uniquely,
/// so every tree appears once.
pub fn leaf_labeled_trees(m: usize, cubic: bool) -> Vec<Tree> {
    match m {
        0 => return vec![],
        1 => return vec![Tree::single()],
        _ => {}
    }
    // nodes: leaves are 0..m; internals are numbered from `m` as they appear
    type Edges = Vec<(usize, usize)>;
    let mut shapes: Vec<(Edges, usize)> = vec![(vec![(0, 1)], 0)];
    for k in 2..m {
        let mut next = Vec::new();
        for (edges, internals) in &shapes {
            for (i, &(u, v)) in edges.iter().enumerate() {
                let w = m + internals;
                let mut e = edges.clone();
                e[i] = (u, w);
                e.push((w, v));
                e.push((w, k));
                next.push((e, internals + 1));
            }
            if !cubic {
                for w in m..m + internals {
                    let mut e = edges.clone();
                    e.push((w, k));
                    next.push((e, *internals));
                }
            }
        }
        shapes = next;
    }
    shapes
        .into_iter()
        .map(|(edges, internals)| Tree::from_edges(m + internals, &edges).expect("generated shape is a tree"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_trees() {
        assert!(Tree::from_edges(3, &[(0, 1)]).is_err());
        assert!(Tree::from_edges(3, &[(0, 1), (0, 1)]).is_err());
        assert!(Tree::from_edges(4, &[(0, 1), (1, 0), (2, 3)]).is_err());
        assert!(Tree::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).is_ok());
    }

    #[test]
    fn leaves_and_sides() {
        let t = Tree::from_edges(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
        assert_eq!(t.leaves(), vec![0, 1, 2]);
        assert_eq!(t.internal_nodes(), vec![3]);
        assert_eq!(t.side(0, 3), vec![1, 2, 3]);
        assert!(Tree::single().is_leaf(0));
    }

    #[test]
    fn topology_counts() {
        // trees with m labelled leaves, internal degrees >= 3: 1, 1, 1, 4, 26, 236
        let general: Vec<usize> = (1..=6).map(|m| leaf_labeled_trees(m, false).len()).collect();
        assert_eq!(general, vec![1, 1, 1, 4, 26, 236]);
        // cubic: (2m-5)!! for m >= 3
        let cubic: Vec<usize> = (1..=7).map(|m| leaf_labeled_trees(m, true).len()).collect();
        assert_eq!(cubic, vec![1, 1, 1, 3, 15, 105, 945]);
        for t in leaf_labeled_trees(5, false) {
            assert_eq!(t.leaves(), vec![0, 1, 2, 3, 4]);
            assert!(t.internal_nodes().iter().all(|&v| t.degree(v) >= 3));
        }
    }
}
