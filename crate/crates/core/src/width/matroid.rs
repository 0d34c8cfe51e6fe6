use std::sync::Arc;

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, Partition};
use crate::scenario::{Scenario, ScenarioKind};
use crate::subset::{GroundSet, Subset};
use crate::tree::{leaf_labeled_trees, Tree};

use super::connectivity::{is_singleton_or_empty, MAX_TABLE_GROUND};
use super::graph::{gf2_rank, graphic_rank, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatroidKind {
    Graphic,
    BinaryLinear,
}

/// A matroid given by its rank function, tabulated on all subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    ground: GroundSet,
    rank: Arc<Vec<u32>>,
    kind: MatroidKind,
}

impl Matroid {
    /// The cycle matroid `M[G]` on the edges of `g`.
    pub fn graphic(g: &Graph) -> Result<Self> {
        let ground = g.edge_ground()?;
        Matroid::tabulate(ground, MatroidKind::Graphic, |f| graphic_rank(g, f))
    }

    /// The column matroid of a 0/1 matrix over GF(2); `rows[i][j]` is entry
    /// `(i, j)` and the columns are the elements.
    pub fn binary(ground: GroundSet, rows: &[Vec<bool>]) -> Result<Self> {
        if rows.len() > 32 {
            return Err(Error::Validation("at most 32 matrix rows are supported".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != ground.len()) {
            return Err(Error::Validation(format!(
                "row of length {} in a matrix with {} columns",
                r.len(),
                ground.len()
            )));
        }
        let cols: Vec<u32> = (0..ground.len())
            .map(|j| {
                rows.iter()
                    .enumerate()
                    .filter(|(_, r)| r[j])
                    .fold(0u32, |m, (i, _)| m | 1 << i)
            })
            .collect();
        Matroid::tabulate(ground, MatroidKind::BinaryLinear, |f| {
            gf2_rank(f.iter().map(|j| cols[j]))
        })
    }

    fn tabulate(ground: GroundSet, kind: MatroidKind, r: impl Fn(Subset) -> usize) -> Result<Self> {
        if ground.len() > MAX_TABLE_GROUND {
            return Err(Error::LimitExceeded {
                n: ground.len(),
                limit: MAX_TABLE_GROUND,
            });
        }
        let rank = Subset::all(ground.len()).map(|f| r(f) as u32).collect();
        Ok(Matroid {
            ground,
            rank: Arc::new(rank),
            kind,
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn kind(&self) -> MatroidKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn rank(&self, f: Subset) -> usize {
        self.rank[f.mask() as usize] as usize
    }

    /// `r(M)`.
    pub fn total_rank(&self) -> usize {
        self.rank(self.ground.full())
    }

    /// `λ_M(X) = r(X) + r(E − X) − r(M)`.
    pub fn lambda(&self, x: Subset) -> usize {
        self.rank(x) + self.rank(x.complement(self.n())) - self.total_rank()
    }

    /// Exhaustive check of the rank axioms: `r(∅) = 0`, `r(X) ≤ |X|`,
    /// monotonicity and submodularity.
    pub fn check_rank_axioms(&self) -> bool {
        let n = self.n();
        if self.rank(Subset::EMPTY) != 0 {
            return false;
        }
        Subset::all(n).all(|x| {
            self.rank(x) <= x.len()
                && (0..n).all(|e| self.rank(x) <= self.rank(x.insert(e)))
                && Subset::all(n)
                    .all(|y| self.rank(x) + self.rank(y) >= self.rank(x.union(y)) + self.rank(x.intersection(y)))
        })
    }

    /// `w(P) = Σ r(E \ X_i) − (d − 1)·r(M)`.
    pub fn partition_width(&self, p: &Partition) -> i64 {
        let n = self.n();
        let d = p.num_blocks() as i64;
        let sum: i64 = p.blocks().iter().map(|&x| self.rank(x.complement(n)) as i64).sum();
        sum - (d - 1) * self.total_rank() as i64
    }
}

/// `(T, ι)` with `ι` an arbitrary map from elements to tree nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidTreeDec {
    pub tree: Tree,
    pub iota: Vec<usize>,
}

impl MatroidTreeDec {
    pub fn new(tree: Tree, iota: Vec<usize>) -> Result<Self> {
        if let Some(&t) = iota.iter().find(|&&t| t >= tree.len()) {
            return Err(Error::Validation(format!("element mapped to missing node {t}")));
        }
        Ok(MatroidTreeDec { tree, iota })
    }

    /// Elements mapped into the set of nodes `nodes`.
    pub fn preimage(&self, nodes: &[usize]) -> Subset {
        self.iota
            .iter()
            .enumerate()
            .filter(|(_, t)| nodes.contains(t))
            .fold(Subset::EMPTY, |s, (e, _)| s.insert(e))
    }

    /// `F_i^x` for each component of `T − x`.
    pub fn branches(&self, x: usize) -> Vec<Subset> {
        self.tree
            .neighbors(x)
            .iter()
            .map(|&u| self.preimage(&self.tree.side(x, u)))
            .collect()
    }

    pub fn on_leaves(&self) -> bool {
        self.iota.iter().all(|&t| self.tree.is_leaf(t))
    }
}

/// `node-w(x) = Σ r(E \ F_i^x) − (d − 1)·r(M)`.
pub fn mtw_node_width(m: &Matroid, d: &MatroidTreeDec, x: usize) -> i64 {
    let n = m.n();
    let fs = d.branches(x);
    let sum: i64 = fs.iter().map(|f| m.rank(f.complement(n)) as i64).sum();
    sum - (fs.len() as i64 - 1) * m.total_rank() as i64
}

pub fn mtw_width(m: &Matroid, d: &MatroidTreeDec) -> i64 {
    (0..d.tree.len()).map(|x| mtw_node_width(m, d, x)).max().unwrap_or(0)
}

/// Moves every element sitting on an internal node to a fresh leaf
/// attached there. A one-node tree carrying several elements gets one new
/// leaf per element.
pub fn move_to_leaves(d: &MatroidTreeDec) -> MatroidTreeDec {
    let mut tree = d.tree.clone();
    let mut iota = d.iota.clone();
    let split_single = tree.len() == 1 && iota.len() >= 2;
    for slot in iota.iter_mut() {
        let t = *slot;
        if split_single || !d.tree.is_leaf(t) {
            let leaf = tree.add_node();
            tree.add_edge(t, leaf);
            *slot = leaf;
        }
    }
    MatroidTreeDec { tree, iota }
}

/// `(Part_mtw^k, S_sing)`.
pub fn part_mtw_k(m: &Matroid, k: i64) -> Scenario {
    let mm = m.clone();
    Scenario::new(
        m.ground.clone(),
        ScenarioKind::Matroid,
        move |p| mm.partition_width(p) <= k,
        is_singleton_or_empty,
    )
}

/// Largest ground set the exhaustive decomposition searches accept.
pub const MAX_EXHAUSTIVE_GROUND: usize = 7;

/// Minimum of `width(d)` over leaf-only decompositions: every partition of
/// the elements into nonempty leaf bags and every tree shape on those
/// leaves with internal degree at least three.
///
/// Restricting to such shapes loses nothing: elements can be moved to
/// leaves, empty leaves removed, and degree-two nodes suppressed without
/// increasing any node's width.
pub fn exhaustive_leaf_decomposition(
    n: usize,
    width: impl Fn(&MatroidTreeDec) -> i64,
) -> Result<(i64, MatroidTreeDec)> {
    if n > MAX_EXHAUSTIVE_GROUND {
        return Err(Error::LimitExceeded {
            n,
            limit: MAX_EXHAUSTIVE_GROUND,
        });
    }
    let mut best: Option<(i64, MatroidTreeDec)> = None;
    for p in enumerate_partitions(n, MAX_EXHAUSTIVE_GROUND)? {
        for tree in leaf_labeled_trees(p.num_blocks(), false) {
            let mut iota = vec![0; n];
            for (leaf, b) in p.blocks().iter().enumerate() {
                for e in b.iter() {
                    iota[e] = leaf;
                }
            }
            let d = MatroidTreeDec { tree, iota };
            let w = width(&d);
            if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                best = Some((w, d));
            }
        }
    }
    Ok(best.expect("at least one partition"))
}

/// `mtw(M)` by exhaustive search over decompositions.
pub fn mtw_exhaustive(m: &Matroid) -> Result<(i64, MatroidTreeDec)> {
    exhaustive_leaf_decomposition(m.n(), |d| mtw_width(m, d))
}
