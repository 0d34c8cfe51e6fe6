use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::decomposition::{
    bdec_to_tdec_cubed, find_tdec, make_exact, search_tree_to_tdec, tdec_to_bdec, validate_bdec, validate_search_tree,
    validate_tdec, SearchTree, StepKind,
};
use crate::error::Result;
use crate::io::{explicit_to_json, search_tree_json};
use crate::partition::Partition;
use crate::scenario::{check_weak_submodularity, Scenario};
use crate::subset::Subset;
use crate::tree::Tree;
use crate::width::{move_to_leaves, mtw_node_width, mtw_width, Matroid, MatroidTreeDec};

use super::exact::exact_search_tree;
use super::generate::CorpusEntry;
use super::graphs::enumerate_small_graphs;
use super::properties::seeded_binary_matroids;
use super::report::{run_checks, SuiteReport};

type Check = Result<Option<(String, Value)>>;

/// Largest tree drawn by the search-tree generator.
pub const MAX_GENERATED_NODES: usize = 6;

fn random_subset(x: Subset, rng: &mut ChaCha8Rng) -> Subset {
    Subset::from_elements(x.iter().filter(|_| rng.gen_bool(0.5)))
}

fn random_tree(nodes: usize, rng: &mut ChaCha8Rng) -> Result<Tree> {
    let edges: Vec<(usize, usize)> = (1..nodes).map(|v| (rng.gen_range(0..v), v)).collect();
    Tree::from_edges(nodes, &edges)
}

/// One attempt at a scenario-conformant search tree: every internal node
/// takes a random feasible partition padded with empty sets, every leaf a
/// random subset of the complement of its incoming label.
fn random_search_tree(s: &Scenario, parts: &[Partition], rng: &mut ChaCha8Rng) -> Result<Option<SearchTree>> {
    let n = s.n();
    let nodes = rng.gen_range(3..=MAX_GENERATED_NODES);
    let tree = random_tree(nodes, rng)?;
    let mut labels = BTreeMap::new();
    for t in tree.internal_nodes() {
        let d = tree.degree(t);
        let fitting: Vec<&Partition> = parts.iter().filter(|p| p.num_blocks() <= d).collect();
        let Some(p) = fitting.choose(rng) else {
            return Ok(None);
        };
        let mut blocks = p.blocks().to_vec();
        blocks.resize(d, Subset::EMPTY);
        blocks.shuffle(rng);
        for (&u, x) in tree.neighbors(t).iter().zip(blocks) {
            labels.insert((t, u), x);
        }
    }
    for t in tree.leaves() {
        let u = tree.neighbors(t)[0];
        let rest = labels[&(u, t)].complement(n);
        let x = if rng.gen_bool(0.5) {
            rest
        } else {
            random_subset(rest, rng)
        };
        labels.insert((t, u), x);
    }
    let st = SearchTree::new(tree, labels)?;
    Ok(validate_search_tree(s, &st, false, true)
        .is_valid(false, true)
        .then_some(st))
}

/// The exact tree from the oracle with every leaf label shrunk at random.
fn shrunk_exact_tree(s: &Scenario, rng: &mut ChaCha8Rng) -> Result<Option<SearchTree>> {
    let Some(mut st) = exact_search_tree(s)? else {
        return Ok(None);
    };
    if st.tree.internal_nodes().is_empty() {
        return Ok(None);
    }
    for (a, b) in st.leaf_arcs() {
        let x = random_subset(st.label(a, b), rng);
        st.labels.insert((a, b), x);
    }
    Ok(Some(st))
}

/// A random family the tree is compatible with: one random subset of each
/// leaf label.
fn compatible_family(st: &SearchTree, rng: &mut ChaCha8Rng) -> Vec<Subset> {
    st.leaf_arcs()
        .into_iter()
        .map(|(a, b)| random_subset(st.label(a, b), rng))
        .collect()
}

pub struct MakeExactCase {
    pub origin: String,
    pub scenario: Scenario,
    pub tree: SearchTree,
    pub family: Vec<Subset>,
}

/// Up to `per_scenario` generated search trees for each weakly submodular
/// corpus scenario, reproducible from `seed`.
pub fn make_exact_cases(corpus: &[CorpusEntry], per_scenario: usize, seed: u64) -> Result<Vec<MakeExactCase>> {
    let mut out = Vec::new();
    for e in corpus {
        let s = e.scenario.to_scenario();
        if !check_weak_submodularity(&s)?.holds {
            continue;
        }
        let parts = s.feasible_partitions()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ e.index as u64);
        let mut trees = Vec::new();
        if let Some(st) = shrunk_exact_tree(&s, &mut rng)? {
            trees.push(st);
        }
        for _ in 0..50 * per_scenario {
            if trees.len() > per_scenario {
                break;
            }
            if let Some(st) = random_search_tree(&s, &parts, &mut rng)? {
                trees.push(st);
            }
        }
        for tree in trees {
            let family = compatible_family(&tree, &mut rng);
            out.push(MakeExactCase {
                origin: format!("{} #{}", e.origin, e.index),
                scenario: s.clone(),
                tree,
                family,
            });
        }
    }
    Ok(out)
}

fn case_dump(c: &MakeExactCase) -> Result<Value> {
    let g = c.scenario.ground();
    Ok(json!({
        "scenario": explicit_to_json(&c.scenario.materialize()?),
        "search_tree": search_tree_json(g, &c.tree),
        "family": c.family.iter().map(|&f| g.subset_names(f)).collect::<Vec<_>>(),
    }))
}

/// Runs the rewriting loop on every case. The first report covers
/// termination and validity of the output; the second asks that the label
/// sum strictly increase at every rewrite.
pub fn make_exact_suites(cases: &[MakeExactCase]) -> (SuiteReport, SuiteReport) {
    let validity = run_checks(
        "make-exact",
        cases,
        |c| c.origin.clone(),
        |c| -> Check {
            let s = &c.scenario;
            let trace = make_exact(s, &c.tree, &c.family)?;
            let mut problems = Vec::new();
            if !validate_search_tree(s, &trace.tree, true, true).is_valid(true, true) {
                problems.push("output is not an exact scenario search tree".to_string());
            }
            if !trace.tree.is_compatible_with(&c.family) {
                problems.push("output lost compatibility with the family".to_string());
            }
            if !validate_tdec(s, &search_tree_to_tdec(s, &trace.tree)?).is_valid() {
                problems.push("tree decomposition of the output is invalid".to_string());
            }
            if problems.is_empty() {
                return Ok(None);
            }
            Ok(Some((problems.join("; "), case_dump(c)?)))
        },
    );
    let mut potential = run_checks(
        "potential",
        cases,
        |c| c.origin.clone(),
        |c| -> Check {
            let trace = make_exact(&c.scenario, &c.tree, &c.family)?;
            let flat: Vec<_> = trace
                .steps
                .iter()
                .filter(|st| st.potential_after <= st.potential_before)
                .collect();
            let Some(first) = flat.first() else {
                return Ok(None);
            };
            Ok(Some((
                format!(
                    "{} of {} rewrites leave the sum unchanged; first: {:?} on {:?}, {} -> {}",
                    flat.len(),
                    trace.steps.len(),
                    first.kind,
                    first.cycle,
                    first.potential_before,
                    first.potential_after
                ),
                case_dump(c)?,
            )))
        },
    );
    let redirects = cases
        .iter()
        .filter_map(|c| make_exact(&c.scenario, &c.tree, &c.family).ok())
        .filter(|t| t.steps.iter().any(|st| matches!(st.kind, StepKind::Redirect(_))))
        .count();
    potential
        .notes
        .push(format!("{redirects} cases needed an internal redirect"));
    (validity, potential)
}

/// Tree decompositions from the corpus go to branch decompositions, and
/// those come back as tree decompositions of the cubed scenario.
pub fn conversions_suite(corpus: &[CorpusEntry]) -> SuiteReport {
    let mut report = run_checks(
        "conversions",
        corpus,
        |e| e.origin.clone(),
        |e| -> Check {
            let s = e.scenario.to_scenario();
            let Some(d) = find_tdec(&s)? else {
                return Ok(None);
            };
            let b = tdec_to_bdec(&s, &d)?;
            let mut problems = Vec::new();
            if !validate_bdec(&s, &b).is_valid() {
                problems.push("branch decomposition is invalid".to_string());
            }
            let (back, cubed) = bdec_to_tdec_cubed(&s, &b)?;
            if !validate_tdec(&cubed, &back).is_valid() {
                problems.push("tree decomposition of the cubed scenario is invalid".to_string());
            }
            if problems.is_empty() {
                return Ok(None);
            }
            Ok(Some((
                problems.join("; "),
                json!({ "scenario": explicit_to_json(&e.scenario) }),
            )))
        },
    );
    report.merge(move_to_leaves_suite(4, 5));
    report
}

/// Every tree on `1..=max_nodes` nodes given by a parent array with
/// `parent(v) < v`.
fn small_trees(max_nodes: usize) -> Vec<Tree> {
    let mut out = Vec::new();
    for nodes in 1..=max_nodes {
        let count: usize = (1..nodes).product();
        for code in 0..count {
            let mut rest = code;
            let edges: Vec<(usize, usize)> = (1..nodes)
                .map(|v| {
                    let p = rest % v;
                    rest /= v;
                    (p, v)
                })
                .collect();
            out.push(Tree::from_edges(nodes, &edges).expect("parent arrays give trees"));
        }
    }
    out
}

/// Moving elements to leaves never raises the width of an original node and
/// leaves every element on a leaf: all trees on at most `max_nodes` nodes,
/// all placements, graphic and seeded binary matroids on at most
/// `max_elements` elements.
pub fn move_to_leaves_suite(max_elements: usize, max_nodes: usize) -> SuiteReport {
    let mut ms: Vec<(String, Matroid)> = Vec::new();
    if let Ok(gs) = enumerate_small_graphs(max_elements) {
        for g in gs {
            if let Ok(m) = Matroid::graphic(&g) {
                ms.push((format!("M({})", super::equivalence::graph_name(&g)), m));
            }
        }
    }
    for cols in 1..=max_elements {
        if let Ok(bs) = seeded_binary_matroids(cols, 5, super::generate::DEFAULT_SEED) {
            ms.extend(
                bs.into_iter()
                    .enumerate()
                    .map(|(i, m)| (format!("binary #{i} on {cols}"), m)),
            );
        }
    }
    let trees = small_trees(max_nodes);
    run_checks(
        "conversions",
        &ms,
        |(name, _)| name.clone(),
        |(_, m)| -> Check {
            let n = m.n();
            for tree in &trees {
                let k = tree.len();
                for code in 0..k.pow(n as u32) {
                    let iota: Vec<usize> = (0..n).map(|e| code / k.pow(e as u32) % k).collect();
                    let d = MatroidTreeDec::new(tree.clone(), iota.clone())?;
                    let moved = move_to_leaves(&d);
                    let raised = (0..k).find(|&x| mtw_node_width(m, &moved, x) > mtw_node_width(m, &d, x));
                    if !moved.on_leaves() || mtw_width(m, &moved) > mtw_width(m, &d) || raised.is_some() {
                        return Ok(Some((
                            format!("tree edges {:?}, placement {iota:?}: node {raised:?}", tree.edges()),
                            Value::Null,
                        )));
                    }
                }
            }
            Ok(None)
        },
    )
}
