//! The fuzz seed corpus replayed through every parser, plus arbitrary text:
//! parsers return errors, never panic.

use std::path::PathBuf;

use proptest::prelude::*;

use scenario_games::io::{
    parse_decomposition, parse_edge_list, parse_graph_json, parse_matrix, parse_matrix_json, parse_partition,
    parse_scenario, write_edge_list, write_matrix,
};
use scenario_games::GroundSet;

fn ground() -> GroundSet {
    GroundSet::new(["a", "b", "c", "d", "e", "f"]).unwrap()
}

fn feed(target: &str, text: &str) -> bool {
    match target {
        "parse_partition" => {
            let g = ground();
            match parse_partition(text, &g) {
                Ok(p) => {
                    assert_eq!(parse_partition(&p.display(&g).to_string(), &g).unwrap(), p);
                    true
                }
                Err(_) => false,
            }
        }
        "parse_edge_list" => match parse_edge_list(text) {
            Ok(g) => {
                assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap().edges(), g.edges());
                true
            }
            Err(_) => false,
        },
        "parse_matrix" => match parse_matrix(text) {
            Ok(rows) => {
                assert_eq!(parse_matrix(&write_matrix(&rows)).unwrap(), rows);
                true
            }
            Err(_) => false,
        },
        "parse_scenario" => parse_scenario(text).is_ok(),
        "parse_decomposition" => parse_decomposition(text).is_ok(),
        "parse_graph_json" => parse_graph_json(text).is_ok(),
        "parse_matrix_json" => parse_matrix_json(text).is_ok(),
        other => panic!("no parser for fuzz target {other}"),
    }
}

const TARGETS: [&str; 7] = [
    "parse_partition",
    "parse_edge_list",
    "parse_matrix",
    "parse_scenario",
    "parse_decomposition",
    "parse_graph_json",
    "parse_matrix_json",
];

#[test]
fn seed_corpus_replays() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    for target in TARGETS {
        let mut accepted = 0;
        let mut rejected = 0;
        for entry in std::fs::read_dir(root.join(target)).unwrap() {
            let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
            if feed(target, &text) {
                accepted += 1;
            } else {
                rejected += 1;
            }
        }
        assert!(
            accepted > 0 && rejected > 0,
            "{target}: {accepted} accepted, {rejected} rejected"
        );
    }
}

fn near_miss() -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop_oneof![
            Just("{"),
            Just("}"),
            Just(","),
            Just(" "),
            Just("\n"),
            Just("a"),
            Just("b"),
            Just("f"),
            Just("z"),
            Just("0"),
            Just("1"),
            Just("2"),
            Just("#"),
            Just("["),
            Just("]"),
            Just("\""),
            Just(":"),
            Just("\"edges\""),
            Just("\"rows\""),
            Just("\"vertices\""),
            Just("\"kind\""),
            Just("\"tdec\""),
            Just("\"instance\""),
            Just("\"k\""),
            Just("\"elements\""),
            Just("\"partitions\""),
            Just("\"simple\""),
        ],
        0..40,
    )
    .prop_map(|parts| parts.concat())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn arbitrary_text_never_panics(text in "\\PC{0,60}") {
        for target in TARGETS {
            feed(target, &text);
        }
    }

    #[test]
    fn near_miss_text_never_panics(text in near_miss()) {
        for target in TARGETS {
            feed(target, &text);
        }
    }
}
