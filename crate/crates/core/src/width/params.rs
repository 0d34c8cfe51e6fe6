use std::fmt;
use std::str::FromStr;

use crate::decomposition::{find_bdec, find_tdec, BranchDec, TreeDec};
use crate::error::{Error, Result};
use crate::game::{solve_with_limit, Player, DEFAULT_GAME_LIMIT};
use crate::scenario::{check_axioms, Scenario};
use crate::subset::{GroundSet, Subset};

use super::connectivity::{part_f_k, q_f_k, ConnectivityFn};
use super::graph::{treewidth_exact, Graph, GraphTreeDec};
use super::matroid::{mtw_exhaustive, part_mtw_k, Matroid, MatroidTreeDec};
use super::vf::{part_tw_k, vf_tw};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WidthParam {
    Tw,
    Mtw,
    VfTw,
    Bw,
    TwF,
    RankWidth,
    CarvingWidth,
}

impl WidthParam {
    pub fn as_str(self) -> &'static str {
        match self {
            WidthParam::Tw => "tw",
            WidthParam::Mtw => "mtw",
            WidthParam::VfTw => "vf-tw",
            WidthParam::Bw => "bw",
            WidthParam::TwF => "tw-f",
            WidthParam::RankWidth => "rank-width",
            WidthParam::CarvingWidth => "carving-width",
        }
    }
}

impl fmt::Display for WidthParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WidthParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "tw" => WidthParam::Tw,
            "mtw" => WidthParam::Mtw,
            "vf-tw" => WidthParam::VfTw,
            "bw" => WidthParam::Bw,
            "tw-f" => WidthParam::TwF,
            "rank-width" => WidthParam::RankWidth,
            "carving-width" => WidthParam::CarvingWidth,
            other => return Err(Error::Validation(format!("unknown width parameter `{other}`"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FnKind {
    Delta,
    CutRank,
    Carving,
    Lambda,
}

impl FromStr for FnKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "delta" => FnKind::Delta,
            "cutrank" => FnKind::CutRank,
            "carving" => FnKind::Carving,
            "lambda" => FnKind::Lambda,
            other => return Err(Error::Validation(format!("unknown connectivity function `{other}`"))),
        })
    }
}

#[derive(Clone, Debug)]
pub enum WidthInput {
    Graph(Graph),
    Matroid(Matroid),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WidthWitness {
    Graph(GraphTreeDec),
    Matroid(MatroidTreeDec),
    Tree(TreeDec),
    Branch(BranchDec),
}

#[derive(Clone, Debug)]
pub struct WidthResult {
    pub param: WidthParam,
    pub value: i64,
    /// Names of the elements the witness refers to.
    pub ground: GroundSet,
    pub witness: WidthWitness,
}

/// Builds the requested connectivity function on a graph or matroid.
pub fn connectivity_fn(input: &WidthInput, kind: FnKind) -> Result<ConnectivityFn> {
    match (input, kind) {
        (WidthInput::Graph(g), FnKind::Delta) => ConnectivityFn::delta(g),
        (WidthInput::Graph(g), FnKind::CutRank) => ConnectivityFn::cut_rank(g),
        (WidthInput::Graph(g), FnKind::Carving) => ConnectivityFn::carving(g),
        (WidthInput::Graph(g), FnKind::Lambda) => ConnectivityFn::lambda(&Matroid::graphic(g)?),
        (WidthInput::Matroid(m), FnKind::Lambda) => ConnectivityFn::lambda(m),
        (WidthInput::Matroid(_), _) => Err(Error::Validation("only lambda is defined on a matroid input".into())),
    }
}

/// Cross-checks the monotone game against a decomposition search at one
/// threshold. Only meaningful on genuine scenarios.
fn game_agrees(s: &Scenario, has_tdec: bool) -> Result<()> {
    if s.n() > DEFAULT_GAME_LIMIT {
        return Ok(());
    }
    let won = solve_with_limit(s, true, DEFAULT_GAME_LIMIT)?.winner() == Player::Captain;
    if won != has_tdec {
        return Err(Error::Validation(format!(
            "game verdict ({won}) and decomposition search ({has_tdec}) disagree"
        )));
    }
    Ok(())
}

/// Graph tree-width. The exact elimination search gives the value and a
/// decomposition; up to the game limit the boundary scenarios are swept as
/// an independent check.
pub fn tw_graph(g: &Graph) -> Result<WidthResult> {
    let (w, d) = treewidth_exact(g)?;
    if g.num_edges() > 0 && g.num_edges() <= DEFAULT_GAME_LIMIT {
        let by_scenario = tw_by_scenario(g)?.0;
        if by_scenario != w {
            return Err(Error::Validation(format!(
                "elimination search gives {w}, scenario sweep gives {by_scenario}"
            )));
        }
    }
    Ok(WidthResult {
        param: WidthParam::Tw,
        value: w as i64,
        ground: g.vertices().clone(),
        witness: WidthWitness::Graph(d),
    })
}

/// Tree-width through `(Part_tw^k, S_sing)`. A node of a tree decomposition
/// of `G` contains the boundary of its partition, so the least `k` with a
/// decomposition is `tw(G) + 1`. An edgeless graph has width 0.
pub fn tw_by_scenario(g: &Graph) -> Result<(usize, Option<TreeDec>)> {
    if g.num_edges() == 0 {
        return Ok((0, None));
    }
    for k in 2..=g.num_vertices() {
        let s = part_tw_k(g, k)?;
        let d = find_tdec(&s)?;
        game_agrees(&s, d.is_some())?;
        if let Some(d) = d {
            return Ok((k - 1, Some(d)));
        }
    }
    Err(Error::Validation(
        "no decomposition even with every vertex in the boundary".into(),
    ))
}

/// Leaf labels of a tree decomposition with singleton leaves, as an
/// element-to-node map.
fn leaf_map(d: &TreeDec, n: usize) -> MatroidTreeDec {
    let mut iota = vec![0; n];
    for (&leaf, x) in &d.labels {
        for e in x.iter() {
            iota[e] = leaf;
        }
    }
    MatroidTreeDec {
        tree: d.tree.clone(),
        iota,
    }
}

/// Matroid tree-width through `(Part_mtw^k, S_sing)` for `k ≥ 1`; width 0
/// is decided by direct search over decompositions.
pub fn mtw_by_scenario(m: &Matroid) -> Result<(i64, MatroidTreeDec)> {
    let (w0, d0) = mtw_exhaustive(m)?;
    if w0 <= 0 {
        return Ok((w0, d0));
    }
    for k in 1..=m.total_rank().max(1) as i64 {
        let s = part_mtw_k(m, k);
        let d = find_tdec(&s)?;
        game_agrees(&s, d.is_some())?;
        if let Some(d) = d {
            return Ok((k, leaf_map(&d, m.n())));
        }
    }
    Err(Error::Validation("no decomposition at width r(M)".into()))
}

/// `bw(f)`: least `k ≥ max f({a})` with a branch decomposition of `(Q_f^k, S_sing)`.
pub fn bw(f: &ConnectivityFn) -> Result<(i64, BranchDec)> {
    let top = Subset::all(f.n()).map(|x| f.eval(x)).max().unwrap_or(0);
    for k in f.max_singleton()..=top.max(f.max_singleton()) {
        if let Some(d) = find_bdec(&q_f_k(f, k))? {
            return Ok((k, d));
        }
    }
    Err(Error::Validation(
        "no branch decomposition at the largest cut value".into(),
    ))
}

/// `tw(f)`: least `k ≥ max f({a})` with a tree decomposition of
/// `(Part_f^k, S_sing)`. The game is consulted wherever the pair satisfies
/// the scenario axioms.
pub fn tw_f(f: &ConnectivityFn) -> Result<(i64, TreeDec)> {
    let top: i64 = (0..f.n()).map(|a| f.eval(Subset::singleton(a))).sum();
    for k in f.max_singleton()..=top.max(f.max_singleton()) {
        let s = part_f_k(f, k);
        let d = find_tdec(&s)?;
        if check_axioms(&s)?.holds() {
            game_agrees(&s, d.is_some())?;
        }
        if let Some(d) = d {
            return Ok((k, d));
        }
    }
    Err(Error::Validation(
        "no tree decomposition with the discrete partition feasible".into(),
    ))
}

/// Computes one width parameter.
pub fn width_parameter(param: WidthParam, input: &WidthInput, f: Option<FnKind>) -> Result<WidthResult> {
    let need_graph = |what: &str| -> Result<&Graph> {
        match input {
            WidthInput::Graph(g) => Ok(g),
            WidthInput::Matroid(_) => Err(Error::Validation(format!("{what} needs a graph"))),
        }
    };
    match param {
        WidthParam::Tw => tw_graph(need_graph("tw")?),
        WidthParam::Mtw => {
            let m = match input {
                WidthInput::Graph(g) => Matroid::graphic(g)?,
                WidthInput::Matroid(m) => m.clone(),
            };
            let (value, d) = mtw_by_scenario(&m)?;
            Ok(WidthResult {
                param,
                value,
                ground: m.ground().clone(),
                witness: WidthWitness::Matroid(d),
            })
        }
        WidthParam::VfTw => {
            let g = need_graph("vf-tw")?;
            let (value, d) = vf_tw(g)?;
            Ok(WidthResult {
                param,
                value,
                ground: g.edge_ground()?,
                witness: WidthWitness::Matroid(d),
            })
        }
        WidthParam::Bw | WidthParam::RankWidth | WidthParam::CarvingWidth => {
            let kind = match param {
                WidthParam::RankWidth => FnKind::CutRank,
                WidthParam::CarvingWidth => FnKind::Carving,
                _ => f.ok_or_else(|| Error::Validation("bw needs --fn".into()))?,
            };
            let func = connectivity_fn(input, kind)?;
            let (value, d) = bw(&func)?;
            Ok(WidthResult {
                param,
                value,
                ground: func.ground().clone(),
                witness: WidthWitness::Branch(d),
            })
        }
        WidthParam::TwF => {
            let kind = f.ok_or_else(|| Error::Validation("tw-f needs --fn".into()))?;
            let func = connectivity_fn(input, kind)?;
            let (value, d) = tw_f(&func)?;
            Ok(WidthResult {
                param,
                value,
                ground: func.ground().clone(),
                witness: WidthWitness::Tree(d),
            })
        }
    }
}
