//! Concrete scenarios from graphs, matroids and connectivity functions, and
//! the width parameters they decide.

mod connectivity;
mod graph;
mod matroid;
mod params;
mod vf;

pub use connectivity::{is_singleton_or_empty, part_f_k, part_f_k_with, q_f_k, ConnectivityFn, ConnectivityReport};
pub use graph::{
    boundary, carving_cut, cut_rank, delta, elimination_decomposition, gf2_rank, graphic_rank, treewidth_exact, Graph,
    GraphTreeDec,
};
pub use matroid::{
    exhaustive_leaf_decomposition, move_to_leaves, mtw_exhaustive, mtw_node_width, mtw_width, part_mtw_k, Matroid,
    MatroidKind, MatroidTreeDec,
};
pub use params::{
    bw, connectivity_fn, mtw_by_scenario, tw_by_scenario, tw_f, tw_graph, width_parameter, FnKind, WidthInput,
    WidthParam, WidthResult, WidthWitness,
};
pub use vf::{graph_tdec_to_vf, make_small, part_tw_k, vf_node_width, vf_tw, vf_width, VFTreeDec};

#[cfg(test)]
mod tests;
