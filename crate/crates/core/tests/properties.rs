use proptest::prelude::*;

use scenario_games::io::{parse_edge_list, parse_matrix, parse_partition, write_edge_list, write_matrix};
use scenario_games::width::{ConnectivityFn, Matroid};
use scenario_games::{GroundSet, Partition, Subset};

fn partition(n: usize, labels: &[usize]) -> Partition {
    let mut blocks = vec![Subset::EMPTY; n];
    for (i, &l) in labels.iter().enumerate() {
        blocks[l % n] = blocks[l % n].insert(i);
    }
    Partition::from_blocks(n, blocks.into_iter().filter(|b| !b.is_empty())).unwrap()
}

fn arb_partition(max_n: usize) -> impl Strategy<Value = Partition> {
    (1..=max_n).prop_flat_map(|n| prop::collection::vec(0..n, n).prop_map(move |l| partition(n, &l)))
}

fn arb_pair(max_n: usize) -> impl Strategy<Value = (Partition, Partition)> {
    (1..=max_n).prop_flat_map(|n| {
        (prop::collection::vec(0..n, n), prop::collection::vec(0..n, n))
            .prop_map(move |(a, b)| (partition(n, &a), partition(n, &b)))
    })
}

/// Union-find reference for the common coarsening.
fn join_reference(p: &Partition, q: &Partition) -> Partition {
    let n = p.ground_size();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        if parent[i] != i {
            parent[i] = find(parent, parent[i]);
        }
        parent[i]
    }
    for b in p.blocks().iter().chain(q.blocks()) {
        let elems: Vec<usize> = b.iter().collect();
        for w in elems.windows(2) {
            let (a, c) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = c;
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    partition(n, &roots)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn join_matches_union_find((p, q) in arb_pair(12)) {
        let j = p.join(&q).unwrap();
        prop_assert_eq!(&j, &join_reference(&p, &q));
        prop_assert_eq!(&j, &q.join(&p).unwrap());
        prop_assert!(j.is_coarser_than(&p).unwrap() && j.is_coarser_than(&q).unwrap());
        prop_assert_eq!(&p.join(&p).unwrap(), &p);
    }

    #[test]
    fn redirect_moves_exactly_f((p, pick, f) in arb_partition(10).prop_flat_map(|p| {
        let n = p.ground_size();
        (Just(p), 0..n, 0u32..(1 << n))
    })) {
        let n = p.ground_size();
        let x = p.blocks()[pick % p.num_blocks()];
        let f = Subset::from_mask(f);
        let r = p.redirect(x, f).unwrap();
        prop_assert!(r.has_block(x.union(f)));
        let covered = r.blocks().iter().fold(Subset::EMPTY, |a, &b| a.union(b));
        prop_assert_eq!(covered, Subset::full(n));
        for &b in p.blocks().iter().filter(|&&b| b != x) {
            let rest = b.difference(f);
            prop_assert!(rest.is_empty() || r.has_block(rest));
        }
        prop_assert_eq!(&r.redirect(x.union(f), Subset::EMPTY).unwrap(), &r);
    }

    #[test]
    fn partition_text_round_trip(p in arb_partition(12)) {
        let g = GroundSet::new((0..p.ground_size()).map(|i| format!("e{i}"))).unwrap();
        let text = p.display(&g).to_string();
        prop_assert_eq!(&parse_partition(&text, &g).unwrap(), &p);
    }

    #[test]
    fn refines_agrees_with_blocks(p in arb_partition(10), mask in 0u32..1024) {
        let x = Subset::from_mask(mask).intersection(Subset::full(p.ground_size()));
        let by_blocks = p.blocks().iter().all(|b| b.is_subset_of(x) || !b.intersects(x));
        prop_assert_eq!(p.refines(x), by_blocks);
    }

    #[test]
    fn edge_list_round_trip(edges in prop::collection::btree_set((0usize..8, 0usize..8), 1..14)) {
        let text: String = edges
            .iter()
            .filter(|(a, b)| a < b)
            .map(|(a, b)| format!("v{a} v{b}\n"))
            .collect();
        prop_assume!(!text.is_empty());
        let g = parse_edge_list(&text).unwrap();
        let again = parse_edge_list(&write_edge_list(&g)).unwrap();
        prop_assert_eq!(again.vertices().names(), g.vertices().names());
        prop_assert_eq!(again.edges(), g.edges());
    }

    #[test]
    fn matrix_round_trip(rows in prop::collection::vec(prop::collection::vec(any::<bool>(), 5), 1..5)) {
        prop_assert_eq!(parse_matrix(&write_matrix(&rows)).unwrap(), rows);
    }

    #[test]
    fn binary_connectivity_is_symmetric_and_submodular(
        rows in prop::collection::vec(prop::collection::vec(any::<bool>(), 8), 1..5),
        a in 0u32..256,
        b in 0u32..256,
    ) {
        let ground = GroundSet::new((0..8).map(|i| format!("e{i}"))).unwrap();
        let m = Matroid::binary(ground, &rows).unwrap();
        let f = ConnectivityFn::lambda(&m).unwrap();
        let (x, y) = (Subset::from_mask(a), Subset::from_mask(b));
        prop_assert_eq!(f.eval(x), f.eval(x.complement(8)));
        prop_assert!(f.eval(x) + f.eval(y) >= f.eval(x.union(y)) + f.eval(x.intersection(y)));
        prop_assert_eq!(f.eval(Subset::EMPTY), 0);
    }
}

#[test]
fn subset_iteration_counts() {
    for n in 0..=10 {
        assert_eq!(Subset::all(n).count(), 1 << n);
        assert!(Subset::all(n).all(|s| s.iter().all(|i| i < n)));
    }
    let s = Subset::from_elements([1, 4, 6]);
    assert_eq!(s.subsets().count(), 8);
    assert_eq!(s.nonempty_subsets_by_size().len(), 7);
}
