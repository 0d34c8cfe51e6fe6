//! Brute-force cross-checks: exhaustive and seeded scenario corpora, small
//! graph enumeration, an independent exact-search-tree decider, and the
//! verification suites built on them.

mod equivalence;
mod exact;
mod generate;
mod graphs;
mod properties;
mod report;
mod transforms;

pub use equivalence::{
    equivalence_applies, equivalence_check, equivalence_suite, explore_suite, graph_name, instantiations,
    monotonicity_suite, EquivalenceOutcome, EquivalenceVerdicts, Instance,
};
pub use exact::exact_search_tree;
pub use generate::{
    corpus, exhaustive_scenarios, sampled_scenarios, weakly_submodular, CorpusEntry, DEFAULT_SAMPLES, DEFAULT_SEED,
    MAX_EXHAUSTIVE_SCENARIO_GROUND,
};
pub use graphs::{
    connected_small_graphs, enumerate_small_graphs, graphs_on_vertices, labeled_graphs, MAX_ENUM_EDGES,
    MAX_ENUM_VERTICES,
};
pub use properties::{matroid_tw_suite, props_suite, seeded_binary_matroids, widths_suite};
pub use report::{run_checks, Failure, SuiteReport};
pub use transforms::{
    conversions_suite, make_exact_cases, make_exact_suites, move_to_leaves_suite, MakeExactCase, MAX_GENERATED_NODES,
};
