use super::*;
use crate::partition::{enumerate_partitions, Partition};
use crate::subset::Subset;
use crate::tree::Tree;

fn sub(e: &[usize]) -> Subset {
    Subset::from_elements(e.iter().copied())
}

fn part(n: usize, blocks: &[&[usize]]) -> Partition {
    Partition::from_blocks(n, blocks.iter().map(|b| sub(b))).unwrap()
}

#[test]
fn boundary_examples() {
    let p3 = Graph::path(3);
    assert_eq!(boundary(&p3, &part(2, &[&[0], &[1]])), sub(&[1]));
    assert_eq!(boundary(&p3, &Partition::trivial(2)), Subset::EMPTY);
    let k3 = Graph::complete(3);
    assert_eq!(boundary(&k3, &Partition::discrete(3)), sub(&[0, 1, 2]));
}

#[test]
fn delta_examples() {
    let p3 = Graph::path(3);
    assert_eq!(delta(&p3, Subset::EMPTY), 0);
    assert_eq!(delta(&p3, p3.all_edges()), 0);
    assert_eq!(delta(&p3, sub(&[0])), 1);
}

#[test]
fn rank_and_cut_examples() {
    let k3 = Graph::complete(3);
    assert_eq!(graphic_rank(&k3, Subset::EMPTY), 0);
    assert_eq!(graphic_rank(&k3, k3.all_edges()), 2);
    assert_eq!(graphic_rank(&k3, sub(&[1])), 1);
    assert_eq!(cut_rank(&k3, Subset::EMPTY), 0);
    assert_eq!(carving_cut(&k3, Subset::EMPTY), 0);
    assert_eq!(cut_rank(&k3, sub(&[0])), 1);
    assert_eq!(carving_cut(&k3, sub(&[0])), 2);
    let m = Matroid::graphic(&k3).unwrap();
    assert_eq!(m.lambda(Subset::EMPTY), 0);
    assert_eq!(m.lambda(sub(&[0])), 1);
}

#[test]
fn binary_matroid_matches_graphic() {
    // incidence matrix of K3 over GF(2) represents its cycle matroid
    let k3 = Graph::complete(3);
    let rows = vec![
        vec![true, true, false],
        vec![true, false, true],
        vec![false, true, true],
    ];
    let b = Matroid::binary(k3.edge_ground().unwrap(), &rows).unwrap();
    let g = Matroid::graphic(&k3).unwrap();
    for x in Subset::all(3) {
        assert_eq!(b.rank(x), g.rank(x));
    }
    assert!(b.check_rank_axioms());
}

#[test]
fn delta_threshold_one_on_triangle() {
    let k3 = Graph::complete(3);
    let f = ConnectivityFn::delta(&k3).unwrap();
    let s = part_f_k(&f, 1);
    let ps = s.feasible_partitions().unwrap();
    assert_eq!(ps, vec![Partition::trivial(3)]);
}

#[test]
fn partition_width_examples() {
    let k3 = Graph::complete(3);
    let m = Matroid::graphic(&k3).unwrap();
    assert_eq!(m.partition_width(&Partition::trivial(3)), 0);
    assert_eq!(m.partition_width(&Partition::discrete(3)), 2);
}

#[test]
fn node_width_examples() {
    let k3 = Graph::complete(3);
    let m = Matroid::graphic(&k3).unwrap();
    let star = Tree::from_edges(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
    let d = MatroidTreeDec::new(star, vec![0, 1, 2]).unwrap();
    assert_eq!(mtw_node_width(&m, &d, 3), 2);
    assert_eq!(vf_node_width(&k3, &d, 3), 2);
    // a leaf with one element and the rest beyond: r({e})
    assert_eq!(mtw_node_width(&m, &d, 0), 1);
    let single = MatroidTreeDec::new(Tree::single(), vec![0, 0, 0]).unwrap();
    assert_eq!(mtw_node_width(&m, &single, 0), 2);
}

#[test]
fn move_to_leaves_examples() {
    let k3 = Graph::complete(3);
    let m = Matroid::graphic(&k3).unwrap();
    let star = Tree::from_edges(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
    let d = MatroidTreeDec::new(star, vec![0, 1, 2]).unwrap();
    assert_eq!(move_to_leaves(&d), d);

    let p3 = Graph::path(3);
    let pm = Matroid::graphic(&p3).unwrap();
    let single = MatroidTreeDec::new(Tree::single(), vec![0, 0]).unwrap();
    let moved = move_to_leaves(&single);
    assert_eq!(moved.tree.len(), 3);
    assert!(moved.on_leaves());
    assert!(mtw_width(&pm, &moved) <= mtw_width(&pm, &single));

    // path of three nodes carrying K3's edges on the middle and one end
    let path = Tree::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
    let d = MatroidTreeDec::new(path, vec![1, 1, 2]).unwrap();
    let moved = move_to_leaves(&d);
    assert!(moved.on_leaves());
    assert!(mtw_width(&m, &moved) <= mtw_width(&m, &d));
}

#[test]
fn small_tree_widths() {
    for (g, tw) in [
        (Graph::path(4), 1),
        (Graph::cycle(4), 2),
        (Graph::cycle(5), 2),
        (Graph::complete(4), 3),
        (Graph::complete(3), 2),
    ] {
        let (w, d) = treewidth_exact(&g).unwrap();
        assert_eq!(w, tw);
        d.validate(&g).unwrap();
        assert_eq!(d.width(), tw);
        assert_eq!(tw_by_scenario(&g).unwrap().0, tw);
    }
}

#[test]
fn vf_from_graph_decomposition() {
    let k3 = Graph::complete(3);
    let d = GraphTreeDec {
        tree: Tree::single(),
        bags: vec![sub(&[0, 1, 2])],
    };
    let vf = graph_tdec_to_vf(&k3, &d).unwrap();
    assert!(vf_width(&k3, &vf) <= 2);
    assert_eq!(vf_tw(&k3).unwrap().0, 2);

    let p4 = Graph::path(4);
    let (_, d) = treewidth_exact(&p4).unwrap();
    let vf = graph_tdec_to_vf(&p4, &d).unwrap();
    assert!(vf_width(&p4, &vf) <= 1);
}

#[test]
fn rank_width_of_cliques() {
    for n in 2..=5 {
        let r = width_parameter(WidthParam::RankWidth, &WidthInput::Graph(Graph::complete(n)), None).unwrap();
        assert_eq!(r.value, 1, "K{n}");
    }
}

#[test]
fn registered_functions_are_connectivity_functions() {
    for g in [Graph::complete(4), Graph::cycle(5), Graph::path(5)] {
        for f in [
            ConnectivityFn::delta(&g).unwrap(),
            ConnectivityFn::cut_rank(&g).unwrap(),
            ConnectivityFn::carving(&g).unwrap(),
            ConnectivityFn::lambda(&Matroid::graphic(&g).unwrap()).unwrap(),
        ] {
            assert!(f.check_axioms().holds(), "{}", f.name());
        }
    }
}

#[test]
fn partition_width_identity_on_triangle_plus_pendant() {
    let g = Graph::indexed(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
    let m = Matroid::graphic(&g).unwrap();
    let r = m.total_rank() as i64;
    for p in enumerate_partitions(4, 10).unwrap() {
        let rhs = r - p
            .blocks()
            .iter()
            .map(|&x| m.rank(x) as i64 - m.lambda(x) as i64)
            .sum::<i64>();
        assert_eq!(m.partition_width(&p), rhs);
    }
}

#[test]
fn q_threshold_matches_doubled_partition_threshold() {
    let g = Graph::cycle(4);
    let f = ConnectivityFn::delta(&g).unwrap();
    for k in 0..4 {
        let q = q_f_k(&f, k);
        let p = part_f_k(&f, 2 * k);
        for x in enumerate_partitions(4, 10).unwrap().filter(|x| x.num_blocks() <= 2) {
            assert_eq!(q.is_feasible(&x), p.is_feasible(&x));
        }
    }
}
