//! File formats: scenario, graph, matrix and decomposition JSON, edge-list
//! and matrix text, and the `{a,b}{c}` partition syntax.

mod json;
mod text;

use std::path::Path;

pub use json::{
    bramble_json, element_map_json, explicit_from_json, explicit_to_json, graph_tdec_json, instance_scenario,
    leaf_labeling_json, parse_decomposition, parse_graph_json, parse_matrix_json, parse_scenario, scenario_to_json,
    search_tree_json, solution_json, strategy_json, to_pretty, width_json, ArcLabelJson, DecKind, Decomposition,
    DecompositionJson, ExplicitScenarioJson, GraphJson, InstanceJson, InstanceKind, LoadedScenario, MatrixJson,
    NodeLabelJson,
};
pub use text::{parse_edge_list, parse_matrix, parse_partition, write_edge_list, write_matrix};

use crate::error::{Error, Result};
use crate::subset::GroundSet;
use crate::width::{Graph, Matroid};

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// A graph in JSON or edge-list form.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if looks_like_json(text) {
        parse_graph_json(text)
    } else {
        parse_edge_list(text)
    }
}

/// A binary matroid in JSON or 0/1 text form; text columns are named
/// `0, 1, ...`.
pub fn parse_matroid(text: &str) -> Result<Matroid> {
    if looks_like_json(text) {
        parse_matrix_json(text)
    } else {
        let rows = parse_matrix(text)?;
        Matroid::binary(GroundSet::indexed(rows[0].len())?, &rows)
    }
}

#[cfg(test)]
mod tests;
