use super::*;
use crate::decomposition::{find_tdec, tdec_to_search_tree, validate_search_tree, validate_tdec};
use crate::error::Error;
use crate::partition::Partition;
use crate::scenario::check_axioms;
use crate::subset::{GroundSet, Subset};

fn abc() -> GroundSet {
    GroundSet::new(["a", "b", "c"]).unwrap()
}

#[test]
fn partition_text() {
    let p = parse_partition("{a,b}{c}", &abc()).unwrap();
    assert_eq!(p.num_blocks(), 2);
    assert_eq!(p.display(&abc()).to_string(), "{a,b}{c}");
    let q = parse_partition("  { c } {b , a}\n", &abc()).unwrap();
    assert_eq!(p, q);
    assert_eq!(parse_partition("{a,b,c}{}", &abc()).unwrap(), Partition::trivial(3));
}

#[test]
fn partition_text_errors() {
    let err = |t: &str| match parse_partition(t, &abc()) {
        Err(Error::Parse { line, column, .. }) => (line, column),
        other => panic!("{t}: {other:?}"),
    };
    assert_eq!(err("{a,b}{d}"), (1, 7));
    assert_eq!(err("{a,b}\n{a,c}"), (2, 2));
    assert_eq!(err("{a,b}"), (1, 6));
    assert_eq!(err("{a,b}c"), (1, 6));
    assert_eq!(err("{a;b}{c}"), (1, 2));
    assert_eq!(err("{a,b"), (1, 5));
    assert_eq!(err(""), (1, 1));
}

#[test]
fn edge_list() {
    let g = parse_edge_list("# K3\na b\nb c\n\nc a # closing edge\nd\n").unwrap();
    assert_eq!(g.num_vertices(), 4);
    assert_eq!(g.num_edges(), 3);
    let again = parse_edge_list(&write_edge_list(&g)).unwrap();
    assert_eq!(again.num_edges(), 3);
    assert_eq!(again.num_vertices(), 4);
    assert!(matches!(
        parse_edge_list("a b\nb b"),
        Err(Error::Parse { line: 2, column: 3, .. })
    ));
    assert!(matches!(parse_edge_list("a b\nb a"), Err(Error::Parse { line: 2, .. })));
    assert!(matches!(
        parse_edge_list("a b c"),
        Err(Error::Parse { line: 1, column: 5, .. })
    ));
    assert!(parse_edge_list("# nothing\n").is_err());
}

#[test]
fn edge_list_keeps_vertex_order() {
    for text in ["a b\nc\nb d\n", "c d\na b\n", "a b\nb c\n"] {
        let g = parse_edge_list(text).unwrap();
        let again = parse_edge_list(&write_edge_list(&g)).unwrap();
        assert_eq!(again.vertices().names(), g.vertices().names(), "{text:?}");
        assert_eq!(again.edges(), g.edges(), "{text:?}");
    }
    assert_eq!(write_edge_list(&parse_edge_list("a b\nb c\n").unwrap()), "a b\nb c\n");
}

#[test]
fn graph_json_matches_edge_list() {
    let g = parse_graph("{\"edges\": [[\"a\",\"b\"],[\"b\",\"c\"]]}").unwrap();
    let h = parse_graph("a b\nb c\n").unwrap();
    assert_eq!(g, h);
    assert_eq!(GraphJson::from_graph(&g).to_graph().unwrap(), g);
}

#[test]
fn matrix_text_and_json() {
    let rows = parse_matrix("110\n101\n").unwrap();
    assert_eq!(rows, parse_matrix("1 1 0\n1 0 1").unwrap());
    assert_eq!(parse_matrix(&write_matrix(&rows)).unwrap(), rows);
    let m = parse_matroid("110\n101\n").unwrap();
    assert_eq!(m.total_rank(), 2);
    let j = parse_matroid("{\"elements\":[\"x\",\"y\",\"z\"],\"rows\":[[1,1,0],[1,0,1]]}").unwrap();
    assert_eq!(j.total_rank(), 2);
    assert_eq!(j.ground().name(2), "z");
    assert!(matches!(
        parse_matrix("10\n1x"),
        Err(Error::Parse { line: 2, column: 2, .. })
    ));
    assert!(matches!(parse_matrix("10\n101"), Err(Error::Parse { line: 2, .. })));
}

#[test]
fn explicit_scenario_round_trip() {
    let text = r#"{
        "elements": ["a", "b", "c"],
        "partitions": [[["a","b","c"]], [["a"],["b","c"]], [["a"],["b"],["c"]]],
        "simple": [[], ["a"], ["b"], ["c"]]
    }"#;
    let loaded = parse_scenario(text).unwrap();
    let ex = loaded.explicit.unwrap();
    assert_eq!(ex.partitions.len(), 3);
    let again = parse_scenario(&scenario_to_json(&ex)).unwrap();
    assert_eq!(again.explicit.unwrap(), ex);
}

#[test]
fn scenario_json_errors() {
    assert!(matches!(
        parse_scenario("{\n  \"elements\": [\"a\",]\n}"),
        Err(Error::Parse { line: 2, .. })
    ));
    let unknown = r#"{"elements":["a"],"partitions":[[["b"]]],"simple":[]}"#;
    assert!(matches!(parse_scenario(unknown), Err(Error::UnknownElement(_))));
    let overlap = r#"{"elements":["a","b"],"partitions":[[["a","b"],["a"]]],"simple":[]}"#;
    assert!(parse_scenario(overlap).is_err());
    let extra = r#"{"elements":["a"],"partitions":[],"simple":[],"x":1}"#;
    assert!(parse_scenario(extra).is_err());
}

#[test]
fn instance_scenarios() {
    let tw = r#"{"instance":"tw","graph":{"edges":[["a","b"],["b","c"],["c","a"]]},"k":3}"#;
    let s = parse_scenario(tw).unwrap().scenario;
    assert_eq!(s.n(), 3);
    assert!(s.is_feasible(&Partition::discrete(3)));
    assert!(check_axioms(&s).unwrap().holds());

    let f = r#"{"instance":"f","fn":"delta","graph":{"edges":[["a","b"],["b","c"]]},"k":2}"#;
    let s = parse_scenario(f).unwrap().scenario;
    assert!(s.is_feasible(&Partition::discrete(2)));

    let mtw = r#"{"instance":"mtw","matrix":{"rows":[[1,1,0],[1,0,1]]},"k":2}"#;
    assert_eq!(parse_scenario(mtw).unwrap().scenario.n(), 3);

    let missing = r#"{"instance":"f","graph":{"edges":[["a","b"]]},"k":2}"#;
    assert!(parse_scenario(missing).is_err());
    let both = r#"{"instance":"mtw","graph":{"edges":[["a","b"]]},"matrix":{"rows":[[1]]},"k":2}"#;
    assert!(parse_scenario(both).is_err());
}

#[test]
fn decomposition_round_trip() {
    let tw = r#"{"instance":"tw","graph":{"edges":[["a","b"],["b","c"],["c","a"]]},"k":3}"#;
    let s = parse_scenario(tw).unwrap().scenario;
    let d = find_tdec(&s).unwrap().unwrap();
    let text = to_pretty(&leaf_labeling_json(DecKind::Tdec, s.ground(), &d));
    let (kind, ground, back) = parse_decomposition(&text).unwrap();
    assert_eq!(kind, DecKind::Tdec);
    assert_eq!(&ground, s.ground());
    let Decomposition::Leaves(back) = back else {
        panic!("expected leaf labels")
    };
    assert_eq!(back, d);
    assert!(validate_tdec(&s, &back).is_valid());

    let st = tdec_to_search_tree(&s, &d).unwrap();
    let text = to_pretty(&search_tree_json(s.ground(), &st));
    let (kind, _, back) = parse_decomposition(&text).unwrap();
    assert_eq!(kind, DecKind::Searchtree);
    let Decomposition::Search(back) = back else {
        panic!("expected a search tree")
    };
    assert_eq!(back, st);
    assert!(validate_search_tree(&s, &back, true, true).is_valid(true, true));
}

#[test]
fn decomposition_errors() {
    let bad_tree = r#"{"kind":"tdec","elements":["a"],"nodes":3,"edges":[[0,1]],"labels":[]}"#;
    assert!(parse_decomposition(bad_tree).is_err());
    let inner = r#"{"kind":"tdec","elements":["a","b"],"nodes":3,"edges":[[0,1],[1,2]],
        "labels":[{"node":1,"set":["a"]}]}"#;
    assert!(parse_decomposition(inner).is_err());
    let twice = r#"{"kind":"tdec","elements":["a","b"],"nodes":2,"edges":[[0,1]],
        "labels":[{"node":0,"set":["a","a"]},{"node":1,"set":["b"]}]}"#;
    assert!(parse_decomposition(twice).is_err());
    let ok = r#"{"kind":"bdec","elements":["a","b"],"nodes":2,"edges":[[0,1]],
        "labels":[{"node":0,"set":["a"]},{"node":1,"set":["b"]}]}"#;
    let (_, g, _) = parse_decomposition(ok).unwrap();
    assert_eq!(g.subset_from_names(["b"]).unwrap(), Subset::singleton(1));
}
