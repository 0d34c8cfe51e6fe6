use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::subset::GroundSet;
use crate::width::Graph;

/// Largest edge count accepted by the graph enumerators.
pub const MAX_ENUM_EDGES: usize = 6;

/// Largest vertex count accepted by `graphs_on_vertices`.
pub const MAX_ENUM_VERTICES: usize = 6;

type Edges = Vec<(usize, usize)>;

fn vertex_names(n: usize) -> Result<GroundSet> {
    GroundSet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=k).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, k);
                    q
                })
            })
            .collect();
    }
    out
}

fn relabel(edges: &[(usize, usize)], perm: &[usize]) -> Edges {
    let mut e: Edges = edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (perm[u], perm[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    e.sort_unstable();
    e
}

/// Canonical code of a connected graph on `0..n`: the least sorted edge
/// list over all relabellings.
fn connected_code(n: usize, edges: &[(usize, usize)]) -> (usize, Edges) {
    let best = permutations(n)
        .iter()
        .map(|p| relabel(edges, p))
        .min()
        .unwrap_or_default();
    (n, best)
}

/// Canonical form of a graph without isolated vertices: the sorted list of
/// its components' codes, laid out on consecutive vertices.
fn canonical(n: usize, edges: &[(usize, usize)]) -> Edges {
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut comp, u), find(&mut comp, v));
        comp[a] = b;
    }
    let mut roots: Vec<usize> = (0..n).map(|v| find(&mut comp, v)).collect();
    roots.sort_unstable();
    roots.dedup();
    let mut codes: Vec<(usize, Edges)> = roots
        .iter()
        .map(|&r| {
            let verts: Vec<usize> = (0..n).filter(|&v| find(&mut comp, v) == r).collect();
            let local: Edges = edges
                .iter()
                .filter(|&&(u, _)| find(&mut comp, u) == r)
                .map(|&(u, v)| {
                    let a = verts.iter().position(|&x| x == u).unwrap();
                    let b = verts.iter().position(|&x| x == v).unwrap();
                    (a.min(b), a.max(b))
                })
                .collect();
            connected_code(verts.len(), &local)
        })
        .collect();
    codes.sort();
    let mut out = Edges::new();
    let mut offset = 0;
    for (k, e) in codes {
        out.extend(e.iter().map(|&(u, v)| (u + offset, v + offset)));
        offset += k;
    }
    out
}

fn vertex_count(edges: &[(usize, usize)]) -> usize {
    edges.iter().map(|&(_, v)| v + 1).max().unwrap_or(0)
}

/// Every graph with `1..=max_edges` edges and no isolated vertices, one per
/// isomorphism class, ordered by edge count. Vertices are named `a, b, ...`.
pub fn enumerate_small_graphs(max_edges: usize) -> Result<Vec<Graph>> {
    if max_edges > MAX_ENUM_EDGES {
        return Err(Error::LimitExceeded {
            n: max_edges,
            limit: MAX_ENUM_EDGES,
        });
    }
    let mut layers: Vec<BTreeSet<Edges>> = Vec::new();
    let mut current: BTreeSet<Edges> = BTreeSet::new();
    if max_edges >= 1 {
        current.insert(vec![(0, 1)]);
    }
    for _ in 1..=max_edges {
        let mut next = BTreeSet::new();
        for e in &current {
            let n = vertex_count(e);
            for u in 0..n + 2 {
                for v in u + 1..n + 2 {
                    // new vertices are only ever n and n + 1
                    if u > n || e.contains(&(u, v)) {
                        continue;
                    }
                    let mut f = e.clone();
                    f.push((u, v));
                    let m = vertex_count(&f);
                    if (0..m).all(|x| f.iter().any(|&(a, b)| a == x || b == x)) {
                        next.insert(canonical(m, &f));
                    }
                }
            }
        }
        layers.push(std::mem::replace(&mut current, next));
    }
    let mut out = Vec::new();
    for layer in layers {
        for e in layer {
            out.push(Graph::new(vertex_names(vertex_count(&e))?, e)?);
        }
    }
    Ok(out)
}

/// The connected graphs among `enumerate_small_graphs(max_edges)`.
pub fn connected_small_graphs(max_edges: usize) -> Result<Vec<Graph>> {
    Ok(enumerate_small_graphs(max_edges)?
        .into_iter()
        .filter(Graph::is_connected)
        .collect())
}

/// Every graph on vertices `0..n` with at most `max_edges` edges, without
/// identifying isomorphic copies.
pub fn labeled_graphs(n: usize, max_edges: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUM_VERTICES {
        return Err(Error::LimitExceeded {
            n,
            limit: MAX_ENUM_VERTICES,
        });
    }
    let pairs: Edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        if mask.count_ones() as usize > max_edges {
            continue;
        }
        let edges: Edges = (0..pairs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        out.push(Graph::indexed(n, &edges)?);
    }
    Ok(out)
}

/// Every graph on exactly `n` vertices, isolated vertices allowed, one per
/// isomorphism class.
pub fn graphs_on_vertices(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUM_VERTICES {
        return Err(Error::LimitExceeded {
            n,
            limit: MAX_ENUM_VERTICES,
        });
    }
    let perms = permutations(n);
    let mut seen: BTreeSet<Edges> = BTreeSet::new();
    for g in labeled_graphs(n, n * n)? {
        let code = perms.iter().map(|p| relabel(g.edges(), p)).min().unwrap_or_default();
        seen.insert(code);
    }
    let mut classes: Vec<Edges> = seen.into_iter().collect();
    classes.sort_by_key(|e| e.len());
    classes.into_iter().map(|e| Graph::new(vertex_names(n)?, e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_by_edge_number() {
        let gs = enumerate_small_graphs(5).unwrap();
        let counts: Vec<usize> = (1..=5)
            .map(|m| gs.iter().filter(|g| g.num_edges() == m).count())
            .collect();
        assert_eq!(counts, vec![1, 2, 5, 11, 26]);
        assert!(gs.iter().all(|g| g.incident(g.all_edges()) == g.all_vertices()));
    }

    #[test]
    fn triangle_and_path_present() {
        let gs = enumerate_small_graphs(3).unwrap();
        let triangle = gs.iter().any(|g| g.num_vertices() == 3 && g.num_edges() == 3);
        let p4 = gs.iter().any(|g| {
            g.num_vertices() == 4
                && g.num_edges() == 3
                && g.is_connected()
                && g.is_forest()
                && (0..4).all(|v| g.neighbors(v).len() <= 2)
        });
        assert!(triangle && p4);
        assert_eq!(enumerate_small_graphs(1).unwrap().len(), 1);
        assert!(enumerate_small_graphs(7).is_err());
    }

    #[test]
    fn labeled_counts() {
        // 1 + 6 + 15 edge sets of size at most two among the six pairs
        assert_eq!(labeled_graphs(4, 2).unwrap().len(), 22);
        assert_eq!(labeled_graphs(3, 3).unwrap().len(), 8);
    }

    #[test]
    fn unlabeled_counts_by_vertex_number() {
        let counts: Vec<usize> = (1..=5).map(|n| graphs_on_vertices(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    }

    #[test]
    fn connected_counts() {
        let counts: Vec<usize> = (1..=5)
            .map(|m| {
                connected_small_graphs(5)
                    .unwrap()
                    .iter()
                    .filter(|g| g.num_edges() == m)
                    .count()
            })
            .collect();
        assert_eq!(counts, vec![1, 1, 3, 5, 12]);
    }
}
