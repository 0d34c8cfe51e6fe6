use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::subset::{GroundSet, Subset, MAX_GROUND};
use crate::tree::Tree;

/// A finite simple undirected graph with named vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: GroundSet,
    /// Edges `(u, v)` with `u < v`, in input order.
    edges: Vec<(usize, usize)>,
    adj: Vec<Subset>,
}

impl Graph {
    pub fn new(vertices: GroundSet, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        let mut adj = vec![Subset::EMPTY; n];
        let mut out = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) names a missing vertex")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at {}", vertices.name(u))));
            }
            if adj[u].contains(v) {
                return Err(Error::InvalidGraph(format!(
                    "parallel edge {}-{}",
                    vertices.name(u),
                    vertices.name(v)
                )));
            }
            adj[u] = adj[u].insert(v);
            adj[v] = adj[v].insert(u);
            out.push((u.min(v), u.max(v)));
        }
        if out.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge {
                n: out.len(),
                max: MAX_GROUND,
            });
        }
        Ok(Graph {
            vertices,
            edges: out,
            adj,
        })
    }

    /// Graph on vertices named `0..n`.
    pub fn indexed(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Graph::new(GroundSet::indexed(n)?, edges.to_vec())
    }

    pub fn path(n: usize) -> Self {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::indexed(n, &e).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        e.push((0, n - 1));
        Graph::indexed(n, &e).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Self {
        let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::indexed(n, &e).expect("complete graph is simple")
    }

    pub fn vertices(&self) -> &GroundSet {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> Subset {
        self.adj[v]
    }

    pub fn all_vertices(&self) -> Subset {
        Subset::full(self.num_vertices())
    }

    pub fn all_edges(&self) -> Subset {
        Subset::full(self.num_edges())
    }

    /// Ground set of edges, named `u-v`.
    pub fn edge_ground(&self) -> Result<GroundSet> {
        GroundSet::new(
            self.edges
                .iter()
                .map(|&(u, v)| format!("{}-{}", self.vertices.name(u), self.vertices.name(v))),
        )
    }

    /// Vertices incident with an edge of `f`.
    pub fn incident(&self, f: Subset) -> Subset {
        f.iter().fold(Subset::EMPTY, |acc, i| {
            let (u, v) = self.edges[i];
            acc.insert(u).insert(v)
        })
    }

    /// Number of components of `(V, F)`, isolated vertices included.
    pub fn components(&self, f: Subset) -> usize {
        let mut parent: Vec<usize> = (0..self.num_vertices()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = self.num_vertices();
        for i in f.iter() {
            let (u, v) = self.edges[i];
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.components(self.all_edges()) <= 1
    }

    pub fn is_forest(&self) -> bool {
        self.components(self.all_edges()) + self.num_edges() == self.num_vertices()
    }
}

/// Vertices incident with edges from two different blocks of `p`.
pub fn boundary(g: &Graph, p: &Partition) -> Subset {
    let mut seen: Vec<Option<usize>> = vec![None; g.num_vertices()];
    let mut out = Subset::EMPTY;
    for (bi, &b) in p.blocks().iter().enumerate() {
        for e in b.iter() {
            let (u, v) = g.edges[e];
            for w in [u, v] {
                match seen[w] {
                    Some(c) if c != bi => out = out.insert(w),
                    None => seen[w] = Some(bi),
                    _ => {}
                }
            }
        }
    }
    out
}

/// `δ(X) = |∂({X, X^c})|`.
pub fn delta(g: &Graph, x: Subset) -> usize {
    let inside = g.incident(x);
    let outside = g.incident(x.complement(g.num_edges()));
    inside.intersection(outside).len()
}

/// Rank of `F` in the cycle matroid: `|V| − c(V, F)`.
pub fn graphic_rank(g: &Graph, f: Subset) -> usize {
    g.num_vertices() - g.components(f)
}

/// Rank over GF(2) of a family of row vectors given as bit masks.
pub fn gf2_rank(rows: impl IntoIterator<Item = u32>) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for mut r in rows {
        for &b in &basis {
            r = r.min(r ^ b);
        }
        if r != 0 {
            basis.push(r);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Rank over GF(2) of the adjacency submatrix between `x` and `x^c`.
pub fn cut_rank(g: &Graph, x: Subset) -> usize {
    let rest = x.complement(g.num_vertices());
    gf2_rank(x.iter().map(|v| g.adj[v].intersection(rest).mask()))
}

/// Number of edges with exactly one end in `x`.
pub fn carving_cut(g: &Graph, x: Subset) -> usize {
    g.edges.iter().filter(|&&(u, v)| x.contains(u) != x.contains(v)).count()
}

/// A tree decomposition of a graph in the usual sense.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphTreeDec {
    pub tree: Tree,
    pub bags: Vec<Subset>,
}

impl GraphTreeDec {
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Checks vertex cover, edge cover and connectivity of each vertex's
    /// occurrence set; returns the first failure.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.bags.len() != self.tree.len() {
            return Err(Error::Validation("one bag per tree node required".into()));
        }
        for v in 0..g.num_vertices() {
            let nodes: Vec<usize> = (0..self.tree.len()).filter(|&t| self.bags[t].contains(v)).collect();
            let Some(&first) = nodes.first() else {
                return Err(Error::Validation(format!("vertex {} is in no bag", g.vertices.name(v))));
            };
            // connected iff exploring through bags containing v reaches all
            let mut seen = vec![first];
            let mut stack = vec![first];
            while let Some(t) = stack.pop() {
                for &u in self.tree.neighbors(t) {
                    if self.bags[u].contains(v) && !seen.contains(&u) {
                        seen.push(u);
                        stack.push(u);
                    }
                }
            }
            if seen.len() != nodes.len() {
                return Err(Error::Validation(format!(
                    "bags containing {} are not connected",
                    g.vertices.name(v)
                )));
            }
        }
        for &(u, v) in &g.edges {
            let uv = Subset::EMPTY.insert(u).insert(v);
            if !self.bags.iter().any(|b| uv.is_subset_of(*b)) {
                return Err(Error::Validation(format!(
                    "edge {}-{} is in no bag",
                    g.vertices.name(u),
                    g.vertices.name(v)
                )));
            }
        }
        Ok(())
    }
}

/// Largest vertex count the exact tree-width computation accepts.
pub const MAX_TW_VERTICES: usize = 16;

/// Exact tree-width by dynamic programming over elimination prefixes,
/// with a decomposition of that width built from an optimal ordering.
pub fn treewidth_exact(g: &Graph) -> Result<(usize, GraphTreeDec)> {
    let n = g.num_vertices();
    if n > MAX_TW_VERTICES {
        return Err(Error::LimitExceeded {
            n,
            limit: MAX_TW_VERTICES,
        });
    }
    // vertices outside S ∪ {v} reachable from v through S
    let q = |s: Subset, v: usize| -> usize {
        let mut reach = Subset::singleton(v);
        let mut frontier = Subset::singleton(v);
        let mut out = Subset::EMPTY;
        while let Some(w) = frontier.min_element() {
            frontier = frontier.difference(Subset::singleton(w));
            for u in g.adj[w].difference(reach).iter() {
                reach = reach.insert(u);
                if s.contains(u) {
                    frontier = frontier.insert(u);
                } else {
                    out = out.insert(u);
                }
            }
        }
        out.len()
    };
    let mut best: HashMap<Subset, (usize, usize)> = HashMap::new();
    best.insert(Subset::EMPTY, (0, usize::MAX));
    let mut by_size: Vec<Subset> = Subset::all(n).collect();
    by_size.sort_by_key(|s| (s.len(), s.mask()));
    for &s in by_size.iter().skip(1) {
        let mut cur = (usize::MAX, 0);
        for v in s.iter() {
            let rest = s.difference(Subset::singleton(v));
            let w = best[&rest].0.max(q(rest, v));
            if w < cur.0 {
                cur = (w, v);
            }
        }
        best.insert(s, cur);
    }
    let mut order = Vec::with_capacity(n);
    let mut s = Subset::full(n);
    while !s.is_empty() {
        let v = best[&s].1;
        order.push(v);
        s = s.difference(Subset::singleton(v));
    }
    order.reverse();
    let d = elimination_decomposition(g, &order);
    let width = best[&Subset::full(n)].0;
    debug_assert_eq!(d.width(), width);
    Ok((width, d))
}

/// The decomposition induced by eliminating vertices in `order`.
pub fn elimination_decomposition(g: &Graph, order: &[usize]) -> GraphTreeDec {
    let n = g.num_vertices();
    if n == 0 {
        return GraphTreeDec {
            tree: Tree::single(),
            bags: vec![Subset::EMPTY],
        };
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj = g.adj.clone();
    let mut bags = vec![Subset::EMPTY; n];
    let mut edges = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Subset = adj[v]
            .iter()
            .filter(|&u| pos[u] > i)
            .fold(Subset::EMPTY, Subset::insert);
        bags[i] = later.insert(v);
        for u in later.iter() {
            adj[u] = adj[u].union(later).difference(Subset::singleton(u));
        }
        if i + 1 < n {
            let parent = later.iter().map(|u| pos[u]).min().unwrap_or(n - 1);
            edges.push((i, parent));
        }
    }
    GraphTreeDec {
        tree: Tree::from_edges(n, &edges).expect("elimination tree"),
        bags,
    }
}
