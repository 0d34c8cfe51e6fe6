use std::sync::Arc;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scenario::{Scenario, ScenarioKind};
use crate::subset::{GroundSet, Subset};

use super::graph::{carving_cut, cut_rank, delta, Graph};
use super::matroid::Matroid;

/// Ground sets up to this size have their values tabulated.
pub const MAX_TABLE_GROUND: usize = 20;

/// An integer set function on a ground set, tabulated on all subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityFn {
    name: String,
    ground: GroundSet,
    values: Arc<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub symmetric: bool,
    pub submodular: bool,
    pub normalized: bool,
    /// First offending set (symmetry) or pair (submodularity).
    pub witness: Option<(Subset, Option<Subset>)>,
}

impl ConnectivityReport {
    pub fn holds(&self) -> bool {
        self.symmetric && self.submodular && self.normalized
    }
}

impl ConnectivityFn {
    pub fn from_fn(name: &str, ground: GroundSet, f: impl Fn(Subset) -> i64) -> Result<Self> {
        if ground.len() > MAX_TABLE_GROUND {
            return Err(Error::LimitExceeded {
                n: ground.len(),
                limit: MAX_TABLE_GROUND,
            });
        }
        let values = Subset::all(ground.len()).map(f).collect();
        Ok(ConnectivityFn {
            name: name.to_string(),
            ground,
            values: Arc::new(values),
        })
    }

    /// `δ` on the edges of `g`.
    pub fn delta(g: &Graph) -> Result<Self> {
        ConnectivityFn::from_fn("delta", g.edge_ground()?, |x| delta(g, x) as i64)
    }

    /// Cut-rank on the vertices of `g`.
    pub fn cut_rank(g: &Graph) -> Result<Self> {
        ConnectivityFn::from_fn("cutrank", g.vertices().clone(), |x| cut_rank(g, x) as i64)
    }

    /// Carving cut on the vertices of `g`.
    pub fn carving(g: &Graph) -> Result<Self> {
        ConnectivityFn::from_fn("carving", g.vertices().clone(), |x| carving_cut(g, x) as i64)
    }

    /// Matroid connectivity `λ_M`.
    pub fn lambda(m: &Matroid) -> Result<Self> {
        ConnectivityFn::from_fn("lambda", m.ground().clone(), |x| m.lambda(x) as i64)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn eval(&self, x: Subset) -> i64 {
        self.values[x.mask() as usize]
    }

    /// `Σ_{X ∈ P} f(X)`.
    pub fn partition_sum(&self, p: &Partition) -> i64 {
        p.blocks().iter().map(|&b| self.eval(b)).sum()
    }

    pub fn max_singleton(&self) -> i64 {
        (0..self.n())
            .map(|i| self.eval(Subset::singleton(i)))
            .max()
            .unwrap_or(0)
    }

    /// Exhaustive check of symmetry, submodularity and `f(∅) = 0`.
    pub fn check_axioms(&self) -> ConnectivityReport {
        let n = self.n();
        let mut report = ConnectivityReport {
            symmetric: true,
            submodular: true,
            normalized: self.eval(Subset::EMPTY) == 0,
            witness: None,
        };
        if let Some(x) = Subset::all(n).find(|&x| self.eval(x) != self.eval(x.complement(n))) {
            report.symmetric = false;
            report.witness = Some((x, None));
        }
        'outer: for x in Subset::all(n) {
            for y in Subset::all(n).filter(|y| y.mask() > x.mask()) {
                if self.eval(x) + self.eval(y) < self.eval(x.union(y)) + self.eval(x.intersection(y)) {
                    report.submodular = false;
                    report.witness.get_or_insert((x, Some(y)));
                    break 'outer;
                }
            }
        }
        report
    }
}

/// `S_sing`: every singleton and the empty set.
pub fn is_singleton_or_empty(x: Subset) -> bool {
    x.len() <= 1
}

/// `(Part_f^k, S_sing)`.
pub fn part_f_k(f: &ConnectivityFn, k: i64) -> Scenario {
    part_f_k_with(f, k, is_singleton_or_empty)
}

/// `(Part_f^k, 𝒮)` for a caller-supplied `𝒮`.
pub fn part_f_k_with(f: &ConnectivityFn, k: i64, simple: impl Fn(Subset) -> bool + Send + Sync + 'static) -> Scenario {
    let g = f.clone();
    Scenario::new(
        f.ground.clone(),
        ScenarioKind::Connectivity,
        move |p| g.partition_sum(p) <= k,
        simple,
    )
}

/// `(Q_f^k, S_sing)`: bipartitions `{X, X^c}` with `f(X) ≤ k`.
pub fn q_f_k(f: &ConnectivityFn, k: i64) -> Scenario {
    let g = f.clone();
    Scenario::new(
        f.ground.clone(),
        ScenarioKind::Connectivity,
        move |p| p.num_blocks() <= 2 && g.eval(p.blocks()[0]) <= k,
        is_singleton_or_empty,
    )
}
