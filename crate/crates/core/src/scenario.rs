//! Scenarios `(𝒫, 𝒮)`: feasible partitions and simple subsets of a ground set.
//!
//! A [`Scenario`] holds both families as membership predicates, which is how
//! the threshold families of the width instantiations are naturally given.
//! [`ExplicitScenario`] lists them; conversion in either direction is
//! available within the enumeration limit.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, Partition, DEFAULT_ENUMERATION_LIMIT};
use crate::subset::{GroundSet, Subset};

pub type PartitionOracle = Arc<dyn Fn(&Partition) -> bool + Send + Sync>;
pub type SimpleOracle = Arc<dyn Fn(Subset) -> bool + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioKind {
    Explicit,
    Connectivity,
    Boundary,
    Matroid,
    Derived,
}

impl ScenarioKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioKind::Explicit => "explicit",
            ScenarioKind::Connectivity => "connectivity",
            ScenarioKind::Boundary => "boundary",
            ScenarioKind::Matroid => "matroid",
            ScenarioKind::Derived => "derived",
        }
    }
}

#[derive(Clone)]
pub struct Scenario {
    ground: GroundSet,
    feasible: PartitionOracle,
    simple: SimpleOracle,
    kind: ScenarioKind,
    limit: usize,
}

impl fmt::Debug for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Scenario")
            .field("ground", &self.ground.names())
            .field("kind", &self.kind)
            .finish_non_exhaustive()
    }
}

impl Scenario {
    pub fn new(
        ground: GroundSet,
        kind: ScenarioKind,
        feasible: impl Fn(&Partition) -> bool + Send + Sync + 'static,
        simple: impl Fn(Subset) -> bool + Send + Sync + 'static,
    ) -> Self {
        Scenario {
            ground,
            feasible: Arc::new(feasible),
            simple: Arc::new(simple),
            kind,
            limit: DEFAULT_ENUMERATION_LIMIT,
        }
    }

    /// Override the ground-size bound used whenever `𝒫` has to be enumerated.
    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn full(&self) -> Subset {
        self.ground.full()
    }

    pub fn kind(&self) -> ScenarioKind {
        self.kind
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn is_feasible(&self, p: &Partition) -> bool {
        p.ground_size() == self.n() && (self.feasible)(p)
    }

    pub fn is_simple(&self, s: Subset) -> bool {
        s.is_subset_of(self.full()) && (self.simple)(s)
    }

    /// `𝒫` in canonical order.
    pub fn feasible_partitions(&self) -> Result<Vec<Partition>> {
        let mut out: Vec<Partition> = enumerate_partitions(self.n(), self.limit)?
            .filter(|p| (self.feasible)(p))
            .collect();
        out.sort();
        Ok(out)
    }

    /// `𝒮` in increasing mask order.
    pub fn simple_sets(&self) -> Vec<Subset> {
        Subset::all(self.n()).filter(|s| (self.simple)(*s)).collect()
    }

    pub fn simple_union(&self) -> Subset {
        self.simple_sets().into_iter().fold(Subset::EMPTY, Subset::union)
    }

    pub fn materialize(&self) -> Result<ExplicitScenario> {
        Ok(ExplicitScenario {
            ground: self.ground.clone(),
            partitions: self.feasible_partitions()?.into_iter().collect(),
            simples: self.simple_sets().into_iter().collect(),
        })
    }

    /// Same `𝒮`, different `𝒫`.
    pub fn with_partitions(
        &self,
        kind: ScenarioKind,
        feasible: impl Fn(&Partition) -> bool + Send + Sync + 'static,
    ) -> Scenario {
        Scenario {
            ground: self.ground.clone(),
            feasible: Arc::new(feasible),
            simple: self.simple.clone(),
            kind,
            limit: self.limit,
        }
    }
}

/// A scenario given by explicit listings of `𝒫` and `𝒮`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitScenario {
    pub ground: GroundSet,
    pub partitions: BTreeSet<Partition>,
    pub simples: BTreeSet<Subset>,
}

impl ExplicitScenario {
    pub fn new(
        ground: GroundSet,
        partitions: impl IntoIterator<Item = Partition>,
        simples: impl IntoIterator<Item = Subset>,
    ) -> Result<Self> {
        let n = ground.len();
        let partitions: BTreeSet<Partition> = partitions.into_iter().collect();
        if let Some(p) = partitions.iter().find(|p| p.ground_size() != n) {
            return Err(Error::GroundMismatch {
                left: n,
                right: p.ground_size(),
            });
        }
        let simples: BTreeSet<Subset> = simples.into_iter().collect();
        if let Some(s) = simples.iter().find(|s| !s.is_subset_of(ground.full())) {
            return Err(Error::Precondition(format!("simple set {s:?} leaves the ground set")));
        }
        Ok(ExplicitScenario {
            ground,
            partitions,
            simples,
        })
    }

    pub fn to_scenario(&self) -> Scenario {
        let parts = Arc::new(self.partitions.clone());
        let simples = Arc::new(self.simples.clone());
        Scenario::new(
            self.ground.clone(),
            ScenarioKind::Explicit,
            move |p| parts.contains(p),
            move |s| simples.contains(&s),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// A feasible partition whose coarsening (two blocks merged) is missing.
    Sc1 { feasible: Partition, missing: Partition },
    /// A block of a feasible partition inside a simple set that is not simple.
    Sc2 {
        simple: Subset,
        partition: Partition,
        block: Subset,
    },
    /// A simple set whose bipartition is not feasible.
    Sc3 { simple: Subset },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub sc1: bool,
    pub sc2: bool,
    pub sc3: bool,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.sc1 && self.sc2 && self.sc3
    }
}

/// Checks SC1–SC3 by enumeration.
///
/// SC1 is checked through single merges of two blocks: every coarsening is
/// reached by a chain of such merges.
pub fn check_axioms(s: &Scenario) -> Result<AxiomReport> {
    let feasible = s.feasible_partitions()?;
    let simples = s.simple_sets();
    let mut violations = Vec::new();

    for p in &feasible {
        let b = p.blocks();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let merged = Partition::from_blocks(
                    s.n(),
                    b.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(k, x)| if k == i { x.union(b[j]) } else { *x }),
                )?;
                if !s.is_feasible(&merged) {
                    violations.push(AxiomViolation::Sc1 {
                        feasible: p.clone(),
                        missing: merged,
                    });
                }
            }
        }
    }
    let sc1 = violations.is_empty();

    for &sset in &simples {
        for p in &feasible {
            for &x in p.blocks() {
                if x.is_subset_of(sset) && !s.is_simple(x) {
                    violations.push(AxiomViolation::Sc2 {
                        simple: sset,
                        partition: p.clone(),
                        block: x,
                    });
                }
            }
        }
    }
    let sc2 = !violations.iter().any(|v| matches!(v, AxiomViolation::Sc2 { .. }));

    for &sset in &simples {
        if !s.is_feasible(&Partition::bipartition(s.n(), sset)) {
            violations.push(AxiomViolation::Sc3 { simple: sset });
        }
    }
    let sc3 = !violations.iter().any(|v| matches!(v, AxiomViolation::Sc3 { .. }));

    Ok(AxiomReport {
        sc1,
        sc2,
        sc3,
        violations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    P,
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub side: Side,
    pub f: Subset,
    /// The redirected partition, known to be feasible.
    pub partition: Partition,
}

/// A nonempty `F ⊆ A \ (x ∪ y)` with `p_{x→F}` or `q_{y→F}` feasible.
///
/// Candidates are scanned by increasing size, then mask; for each `F` the
/// `p`-side is tried first. `x` or `y` may be empty (the implicit empty block).
pub fn weak_submod_witness(s: &Scenario, p: &Partition, q: &Partition, x: Subset, y: Subset) -> Result<Witness> {
    let pool = s.full().difference(x.union(y));
    if pool.is_empty() {
        return Err(Error::Precondition(
            "x ∪ y covers the ground set; no candidate F".into(),
        ));
    }
    for f in pool.nonempty_subsets_by_size() {
        let rp = p.redirect(x, f)?;
        if s.is_feasible(&rp) {
            return Ok(Witness {
                side: Side::P,
                f,
                partition: rp,
            });
        }
        let rq = q.redirect(y, f)?;
        if s.is_feasible(&rq) {
            return Ok(Witness {
                side: Side::Q,
                f,
                partition: rq,
            });
        }
    }
    Err(Error::NoWitness(format!("P={p:?} X={x:?} Q={q:?} Y={y:?}")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakSubmodularityReport {
    pub holds: bool,
    /// `(P, Q, X, Y)` for which no `F` works.
    pub witness: Option<(Partition, Partition, Subset, Subset)>,
}

/// Exhaustive weak-submodularity check over nonempty blocks.
///
/// Empty blocks never produce a counterexample when `{A}` is feasible: with
/// `X = ∅`, `F = A \ Y` gives `Q_{Y→F} = {A}`.
pub fn check_weak_submodularity(s: &Scenario) -> Result<WeakSubmodularityReport> {
    let feasible = s.feasible_partitions()?;
    let full = s.full();
    for p in &feasible {
        for q in &feasible {
            for &x in p.blocks() {
                for &y in q.blocks() {
                    if x.union(y) == full {
                        continue;
                    }
                    match weak_submod_witness(s, p, q, x, y) {
                        Ok(_) => {}
                        Err(Error::NoWitness(_)) => {
                            return Ok(WeakSubmodularityReport {
                                holds: false,
                                witness: Some((p.clone(), q.clone(), x, y)),
                            })
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    Ok(WeakSubmodularityReport {
        holds: true,
        witness: None,
    })
}

/// Coarsening closure of a family of partitions.
pub fn up_closure(n: usize, generators: &[Partition], limit: usize) -> Result<BTreeSet<Partition>> {
    Ok(enumerate_partitions(n, limit)?
        .filter(|q| generators.iter().any(|g| q.is_coarser_than(g).unwrap_or(false)))
        .collect())
}
