use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::decomposition::{LeafLabeling, SearchTree};
use crate::error::{Error, Result};
use crate::game::{Bramble, GameSolution, StrategyTree};
use crate::partition::Partition;
use crate::scenario::{ExplicitScenario, Scenario};
use crate::subset::{GroundSet, Subset};
use crate::tree::Tree;
use crate::width::{
    connectivity_fn, part_f_k, part_mtw_k, part_tw_k, q_f_k, FnKind, Graph, GraphTreeDec, Matroid, MatroidTreeDec,
    WidthInput, WidthResult, WidthWitness,
};

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.line(), e.column(), e.to_string())
}

fn subset_json(ground: &GroundSet, x: Subset) -> Vec<String> {
    ground.subset_names(x)
}

fn partition_json(ground: &GroundSet, p: &Partition) -> Vec<Vec<String>> {
    p.blocks().iter().map(|&b| ground.subset_names(b)).collect()
}

fn subset_from_json(ground: &GroundSet, names: &[String]) -> Result<Subset> {
    let mut x = Subset::EMPTY;
    for name in names {
        let i = ground.index_of(name)?;
        if x.contains(i) {
            return Err(Error::Validation(format!("element `{name}` listed twice")));
        }
        x = x.insert(i);
    }
    Ok(x)
}

fn partition_from_json(ground: &GroundSet, blocks: &[Vec<String>]) -> Result<Partition> {
    let blocks = blocks
        .iter()
        .map(|b| subset_from_json(ground, b))
        .collect::<Result<Vec<_>>>()?;
    Partition::from_blocks(ground.len(), blocks)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitScenarioJson {
    pub elements: Vec<String>,
    pub partitions: Vec<Vec<Vec<String>>>,
    pub simple: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    /// Optional explicit vertex order; isolated vertices must be listed here.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    /// Column names; defaults to `0, 1, ...`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    pub rows: Vec<Vec<u8>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    /// `Part_tw^k` on the edges of a graph.
    Tw,
    /// `Part_mtw^k` on a graphic or binary matroid.
    Mtw,
    /// `Part_f^k` for a connectivity function.
    F,
    /// `Q_f^k` for a connectivity function.
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceJson {
    pub instance: InstanceKind,
    #[serde(rename = "fn", default, skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixJson>,
    pub k: i64,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        let v = g.vertices();
        GraphJson {
            vertices: v.names().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|&(a, b)| [v.name(a).to_string(), v.name(b).to_string()])
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let mut names = self.vertices.clone();
        for [u, v] in &self.edges {
            for x in [u, v] {
                if !names.contains(x) {
                    names.push(x.clone());
                }
            }
        }
        let ground = GroundSet::new(names)?;
        let edges = self
            .edges
            .iter()
            .map(|[u, v]| Ok((ground.index_of(u)?, ground.index_of(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Graph::new(ground, edges)
    }
}

impl MatrixJson {
    pub fn to_matroid(&self) -> Result<Matroid> {
        let cols = self.rows.first().map_or(0, Vec::len);
        let ground = match &self.elements {
            Some(names) => GroundSet::new(names.clone())?,
            None => GroundSet::indexed(cols)?,
        };
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&b| match b {
                        0 => Ok(false),
                        1 => Ok(true),
                        other => Err(Error::Validation(format!("matrix entry {other} is not 0 or 1"))),
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<bool>>>>()?;
        Matroid::binary(ground, &rows)
    }
}

/// A scenario read from JSON, with its explicit form when it was given
/// explicitly.
#[derive(Clone, Debug)]
pub struct LoadedScenario {
    pub scenario: Scenario,
    pub explicit: Option<ExplicitScenario>,
}

pub fn explicit_from_json(j: &ExplicitScenarioJson) -> Result<ExplicitScenario> {
    let ground = GroundSet::new(j.elements.clone())?;
    let partitions = j
        .partitions
        .iter()
        .map(|p| partition_from_json(&ground, p))
        .collect::<Result<Vec<_>>>()?;
    let simples = j
        .simple
        .iter()
        .map(|x| subset_from_json(&ground, x))
        .collect::<Result<Vec<_>>>()?;
    ExplicitScenario::new(ground, partitions, simples)
}

pub fn explicit_to_json(s: &ExplicitScenario) -> ExplicitScenarioJson {
    ExplicitScenarioJson {
        elements: s.ground.names().to_vec(),
        partitions: s.partitions.iter().map(|p| partition_json(&s.ground, p)).collect(),
        simple: s.simples.iter().map(|&x| subset_json(&s.ground, x)).collect(),
    }
}

pub fn instance_scenario(j: &InstanceJson) -> Result<Scenario> {
    let input = match (&j.graph, &j.matrix) {
        (Some(g), None) => WidthInput::Graph(g.to_graph()?),
        (None, Some(m)) => WidthInput::Matroid(m.to_matroid()?),
        _ => {
            return Err(Error::Validation(
                "an instance needs exactly one of `graph` and `matrix`".into(),
            ))
        }
    };
    let function = || -> Result<FnKind> {
        j.function
            .as_deref()
            .ok_or_else(|| Error::Validation("this instance needs `fn`".into()))?
            .parse()
    };
    match j.instance {
        InstanceKind::Tw => match &input {
            WidthInput::Graph(g) => {
                let k = usize::try_from(j.k).map_err(|_| Error::Validation("k must be nonnegative".into()))?;
                part_tw_k(g, k)
            }
            WidthInput::Matroid(_) => Err(Error::Validation("a tw instance needs a graph".into())),
        },
        InstanceKind::Mtw => {
            let m = match &input {
                WidthInput::Graph(g) => Matroid::graphic(g)?,
                WidthInput::Matroid(m) => m.clone(),
            };
            Ok(part_mtw_k(&m, j.k))
        }
        InstanceKind::F => Ok(part_f_k(&connectivity_fn(&input, function()?)?, j.k)),
        InstanceKind::Q => Ok(q_f_k(&connectivity_fn(&input, function()?)?, j.k)),
    }
}

/// Reads either an explicit scenario or an instance description.
pub fn parse_scenario(text: &str) -> Result<LoadedScenario> {
    let value: Value = serde_json::from_str(text).map_err(json_error)?;
    if value.get("instance").is_some() {
        let j: InstanceJson = serde_json::from_value(value).map_err(|e| Error::Validation(format!("instance: {e}")))?;
        Ok(LoadedScenario {
            scenario: instance_scenario(&j)?,
            explicit: None,
        })
    } else {
        let j: ExplicitScenarioJson =
            serde_json::from_value(value).map_err(|e| Error::Validation(format!("scenario: {e}")))?;
        let explicit = explicit_from_json(&j)?;
        Ok(LoadedScenario {
            scenario: explicit.to_scenario(),
            explicit: Some(explicit),
        })
    }
}

pub fn scenario_to_json(s: &ExplicitScenario) -> String {
    serde_json::to_string_pretty(&explicit_to_json(s)).expect("plain data serializes")
}

pub fn parse_graph_json(text: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(text).map_err(json_error)?;
    j.to_graph()
}

pub fn parse_matrix_json(text: &str) -> Result<Matroid> {
    let j: MatrixJson = serde_json::from_str(text).map_err(json_error)?;
    j.to_matroid()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecKind {
    Tdec,
    Bdec,
    Searchtree,
}

impl DecKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DecKind::Tdec => "tdec",
            DecKind::Bdec => "bdec",
            DecKind::Searchtree => "searchtree",
        }
    }
}

impl std::str::FromStr for DecKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tdec" => Ok(DecKind::Tdec),
            "bdec" => Ok(DecKind::Bdec),
            "searchtree" => Ok(DecKind::Searchtree),
            other => Err(Error::Validation(format!("unknown decomposition kind `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeLabelJson {
    pub node: usize,
    pub set: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcLabelJson {
    pub from: usize,
    pub to: usize,
    pub set: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionJson {
    pub kind: DecKind,
    pub elements: Vec<String>,
    pub nodes: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<NodeLabelJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arc_labels: Vec<ArcLabelJson>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Leaves(LeafLabeling),
    Search(SearchTree),
}

fn tree_edges(t: &Tree) -> Vec<[usize; 2]> {
    t.edges().into_iter().map(|(a, b)| [a, b]).collect()
}

pub fn leaf_labeling_json(kind: DecKind, ground: &GroundSet, d: &LeafLabeling) -> DecompositionJson {
    DecompositionJson {
        kind,
        elements: ground.names().to_vec(),
        nodes: d.tree.len(),
        edges: tree_edges(&d.tree),
        labels: d
            .labels
            .iter()
            .map(|(&node, &x)| NodeLabelJson {
                node,
                set: subset_json(ground, x),
            })
            .collect(),
        arc_labels: Vec::new(),
    }
}

pub fn search_tree_json(ground: &GroundSet, st: &SearchTree) -> DecompositionJson {
    DecompositionJson {
        kind: DecKind::Searchtree,
        elements: ground.names().to_vec(),
        nodes: st.tree.len(),
        edges: tree_edges(&st.tree),
        labels: Vec::new(),
        arc_labels: st
            .labels
            .iter()
            .map(|(&(from, to), &x)| ArcLabelJson {
                from,
                to,
                set: subset_json(ground, x),
            })
            .collect(),
    }
}

/// Reads a decomposition file; the element list is returned for matching
/// against a scenario.
pub fn parse_decomposition(text: &str) -> Result<(DecKind, GroundSet, Decomposition)> {
    let j: DecompositionJson = serde_json::from_str(text).map_err(json_error)?;
    let ground = GroundSet::new(j.elements.clone())?;
    let edges: Vec<(usize, usize)> = j.edges.iter().map(|&[a, b]| (a, b)).collect();
    let tree = Tree::from_edges(j.nodes, &edges)?;
    let d = match j.kind {
        DecKind::Tdec | DecKind::Bdec => {
            if !j.arc_labels.is_empty() {
                return Err(Error::Validation("arc labels given for a leaf-labelled tree".into()));
            }
            let mut labels = BTreeMap::new();
            for l in &j.labels {
                if labels.insert(l.node, subset_from_json(&ground, &l.set)?).is_some() {
                    return Err(Error::Validation(format!("node {} labelled twice", l.node)));
                }
            }
            Decomposition::Leaves(LeafLabeling::new(tree, labels)?)
        }
        DecKind::Searchtree => {
            if !j.labels.is_empty() {
                return Err(Error::Validation("node labels given for a search tree".into()));
            }
            let mut labels = BTreeMap::new();
            for l in &j.arc_labels {
                if labels
                    .insert((l.from, l.to), subset_from_json(&ground, &l.set)?)
                    .is_some()
                {
                    return Err(Error::Validation(format!("arc ({},{}) labelled twice", l.from, l.to)));
                }
            }
            Decomposition::Search(SearchTree::new(tree, labels)?)
        }
    };
    Ok((j.kind, ground, d))
}

pub fn to_pretty(j: &impl Serialize) -> String {
    serde_json::to_string_pretty(j).expect("plain data serializes")
}

pub fn strategy_json(ground: &GroundSet, strat: &StrategyTree) -> Value {
    let nodes: Vec<Value> = strat
        .nodes
        .iter()
        .enumerate()
        .map(|(id, v)| {
            json!({
                "id": id,
                "partition": partition_json(ground, &v.partition),
                "space": subset_json(ground, v.space),
                "next": v.next.as_ref().map(|p| partition_json(ground, p)),
                "children": v.children,
            })
        })
        .collect();
    json!({ "monotone": strat.monotone, "nodes": nodes })
}

pub fn solution_json(ground: &GroundSet, sol: &GameSolution) -> Value {
    json!({
        "winner": sol.winner(),
        "monotone": sol.monotone(),
        "partitions": sol.partitions().len(),
        "winning_positions": sol.region_size(),
        "strategy": sol.strategy().map(|s| strategy_json(ground, &s)),
    })
}

pub fn bramble_json(ground: &GroundSet, b: Option<&Bramble>) -> Value {
    json!({
        "bramble": b.map(|b| b.sets.iter().map(|&x| subset_json(ground, x)).collect::<Vec<_>>()),
    })
}

pub fn graph_tdec_json(vertices: &GroundSet, d: &GraphTreeDec) -> Value {
    json!({
        "kind": "graph-tdec",
        "elements": vertices.names(),
        "nodes": d.tree.len(),
        "edges": tree_edges(&d.tree),
        "bags": d.bags.iter().enumerate().map(|(node, &b)| json!({
            "node": node,
            "set": subset_json(vertices, b),
        })).collect::<Vec<_>>(),
    })
}

pub fn element_map_json(ground: &GroundSet, d: &MatroidTreeDec) -> Value {
    json!({
        "kind": "element-map",
        "elements": ground.names(),
        "nodes": d.tree.len(),
        "edges": tree_edges(&d.tree),
        "map": d.iota.iter().enumerate().map(|(e, &node)| json!({
            "element": ground.name(e),
            "node": node,
        })).collect::<Vec<_>>(),
    })
}

pub fn width_json(r: &WidthResult) -> Value {
    let witness = match &r.witness {
        WidthWitness::Graph(d) => graph_tdec_json(&r.ground, d),
        WidthWitness::Matroid(d) => element_map_json(&r.ground, d),
        WidthWitness::Tree(d) => {
            serde_json::to_value(leaf_labeling_json(DecKind::Tdec, &r.ground, d)).expect("serializes")
        }
        WidthWitness::Branch(d) => {
            serde_json::to_value(leaf_labeling_json(DecKind::Bdec, &r.ground, d)).expect("serializes")
        }
    };
    json!({ "parameter": r.param.as_str(), "value": r.value, "witness": witness })
}
