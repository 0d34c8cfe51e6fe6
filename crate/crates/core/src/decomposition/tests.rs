use std::collections::BTreeMap;

use super::*;
use crate::partition::enumerate_partitions;
use crate::scenario::ExplicitScenario;

fn sub(e: &[usize]) -> Subset {
    Subset::from_elements(e.iter().copied())
}

/// Every partition feasible, singletons and `∅` simple.
fn everything(n: usize) -> Scenario {
    let all: Vec<Partition> = enumerate_partitions(n, 10).unwrap().collect();
    let simples = std::iter::once(Subset::EMPTY).chain((0..n).map(Subset::singleton));
    ExplicitScenario::new(GroundSet::indexed(n).unwrap(), all, simples)
        .unwrap()
        .to_scenario()
}

fn star(n: usize) -> TreeDec {
    let edges: Vec<_> = (0..n).map(|i| (i, n)).collect();
    let tree = Tree::from_edges(n + 1, &edges).unwrap();
    let labels = (0..n).map(|i| (i, Subset::singleton(i))).collect();
    TreeDec::new(tree, labels).unwrap()
}

#[test]
fn star_is_a_tree_decomposition() {
    let s = everything(4);
    assert!(validate_tdec(&s, &star(4)).is_valid());
}

#[test]
fn overlapping_leaves_violate_td1() {
    let s = everything(3);
    let tree = Tree::from_edges(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
    let labels = BTreeMap::from([(0, sub(&[0])), (1, sub(&[0])), (2, sub(&[2]))]);
    let r = validate_tdec(&s, &TreeDec::new(tree, labels).unwrap());
    assert!(!r.td1);
    assert!(r.violations.iter().any(|v| matches!(v, Violation::Overlap { .. })));
    assert!(r.violations.iter().any(|v| matches!(v, Violation::Uncovered { .. })));
}

#[test]
fn missing_simple_cover_has_no_decomposition() {
    let all: Vec<Partition> = enumerate_partitions(3, 10).unwrap().collect();
    let s = ExplicitScenario::new(GroundSet::indexed(3).unwrap(), all, [sub(&[0]), sub(&[1])])
        .unwrap()
        .to_scenario();
    assert_eq!(find_tdec(&s).unwrap(), None);
    assert_eq!(find_bdec(&s).unwrap(), None);
}

#[test]
fn degree_four_is_not_cubic() {
    let s = everything(4);
    let r = validate_bdec(&s, &star(4));
    assert!(!r.cubic);
    assert!(r.bd1 && r.bd2);
    assert!(validate_bdec(&everything(3), &star(3)).is_valid());
}

#[test]
fn two_node_search_trees() {
    let s = everything(3);
    let tree = Tree::from_edges(2, &[(0, 1)]).unwrap();
    let exact = SearchTree::new(
        tree.clone(),
        BTreeMap::from([((0, 1), s.full()), ((1, 0), Subset::EMPTY)]),
    )
    .unwrap();
    let r = validate_search_tree(&s, &exact, true, false);
    assert!(r.is_valid(true, false));
    assert_eq!(r.leaf_entries_partition, Some(true));

    let loose = SearchTree::new(tree, BTreeMap::from([((0, 1), sub(&[0])), ((1, 0), sub(&[1]))])).unwrap();
    let r = validate_search_tree(&s, &loose, false, false);
    assert!(r.is_valid(false, false));
    assert!(!r.exact);
    assert_eq!(r.leaf_entries_partition, None);
}

#[test]
fn tdec_search_tree_round_trip() {
    let s = everything(4);
    let d = star(4);
    let st = tdec_to_search_tree(&s, &d).unwrap();
    assert!(validate_search_tree(&s, &st, true, true).is_valid(true, true));
    assert_eq!(st.outgoing(4), (0..4).map(Subset::singleton).collect::<Vec<_>>());
    assert_eq!(search_tree_to_tdec(&s, &st).unwrap(), d);
}

#[test]
fn make_exact_leaf_rule_on_a_star() {
    let s = everything(3);
    // star with centre 3; leaf 1 is already exact, leaves 0 and 2 are not
    let tree = Tree::from_edges(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
    let labels = BTreeMap::from([
        ((3, 0), sub(&[0])),
        ((3, 1), sub(&[1])),
        ((3, 2), sub(&[2])),
        ((0, 3), sub(&[1])),
        ((1, 3), sub(&[0, 2])),
        ((2, 3), Subset::EMPTY),
    ]);
    let st = SearchTree::new(tree, labels).unwrap();
    let family = [Subset::EMPTY];
    let out = make_exact(&s, &st, &family).unwrap();
    assert_eq!(out.steps.len(), 2);
    assert!(out.steps.iter().all(|x| x.kind == StepKind::Leaf));
    assert!(out.steps.iter().all(|x| x.potential_after > x.potential_before));
    assert!(validate_search_tree(&s, &out.tree, true, true).is_valid(true, true));
    assert!(out.tree.is_compatible_with(&family));

    let again = make_exact(&s, &out.tree, &family).unwrap();
    assert!(again.steps.is_empty());
    assert_eq!(again.tree, out.tree);
}

#[test]
fn caterpillar_expansion() {
    let s = everything(5);
    let b = tdec_to_bdec(&s, &star(5)).unwrap();
    assert!(validate_bdec(&s, &b).is_valid());
    assert_eq!(b.tree.internal_nodes().len(), 3);
    let mut labels: Vec<_> = b.labels.values().copied().collect();
    labels.sort();
    let mut orig: Vec<_> = star(5).labels.values().copied().collect();
    orig.sort();
    assert_eq!(labels, orig);
}

#[test]
fn degree_two_nodes_are_suppressed() {
    let s = everything(2);
    let tree = Tree::from_edges(3, &[(0, 2), (1, 2)]).unwrap();
    let d = TreeDec::new(tree, BTreeMap::from([(0, sub(&[0])), (1, sub(&[1]))])).unwrap();
    let b = tdec_to_bdec(&s, &d).unwrap();
    assert_eq!(b.tree.len(), 2);
    assert!(validate_bdec(&s, &b).is_valid());
}

#[test]
fn cubed_tree_decomposition() {
    let s = everything(3);
    let b = star(3);
    let (t, cubed) = bdec_to_tdec_cubed(&s, &b).unwrap();
    assert!(validate_tdec(&cubed, &t).is_valid());
    assert!(bdec_to_tdec_cubed(&s, &star(4)).is_err());
}

#[test]
fn searches_find_valid_witnesses() {
    let s = everything(4);
    let t = find_tdec(&s).unwrap().unwrap();
    assert!(validate_tdec(&s, &t).is_valid());
    let b = find_bdec(&s).unwrap().unwrap();
    assert!(validate_bdec(&s, &b).is_valid());
}
