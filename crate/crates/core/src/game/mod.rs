//! The captain-and-robber game and its monotone variant.
//!
//! A position is a captain partition `P ∈ 𝒫` together with the robber space
//! `X ∈ P`; which element of `X` the robber stands on never matters, since
//! he may move anywhere inside the block of `P ∨ P'` containing `X`. The
//! captain's announcement and the robber's reply form one transition, so the
//! game is solved as a plain AND-OR attractor.

mod bramble;

pub use bramble::{bramble_escape_check, exhaustive_escape_check, find_bramble, Bramble};

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decomposition::{validate_tdec, TreeDec};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scenario::Scenario;
use crate::subset::{GroundSet, Subset};
use crate::tree::Tree;

/// Default bound on the ground size for game solving.
pub const DEFAULT_GAME_LIMIT: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Captain,
    Robber,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    pub partition: Partition,
    pub robber: usize,
}

impl Position {
    pub fn space(&self) -> Subset {
        self.partition.block_of(self.robber)
    }
}

/// The block of `p ∨ q` containing `x`, grown by alternating closure.
pub fn reachable(p: &Partition, q: &Partition, x: Subset) -> Subset {
    let mut y = x;
    loop {
        let mut next = y;
        for &b in p.blocks().iter().chain(q.blocks()) {
            if b.intersects(next) {
                next = next.union(b);
            }
        }
        if next == y {
            return y;
        }
        y = next;
    }
}

/// `P'` refines `X`: every block of `P'` meeting `X` lies inside it.
pub fn refines_space(next: &Partition, x: Subset) -> bool {
    next.blocks().iter().all(|b| !b.intersects(x) || b.is_subset_of(x))
}

/// One robber reply: a new position and whether it is a capture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RobberMove {
    pub position: Position,
    pub captured: bool,
}

/// All positions the robber can reach when the captain moves to `next`.
pub fn legal_robber_moves(s: &Scenario, from: &Position, next: &Partition) -> Result<Vec<RobberMove>> {
    if !s.is_feasible(&from.partition) {
        return Err(Error::IllegalMove("current partition is not feasible".into()));
    }
    if !s.is_feasible(next) {
        return Err(Error::IllegalMove("announced partition is not feasible".into()));
    }
    let y = reachable(&from.partition, next, from.space());
    Ok(y.iter()
        .map(|r| {
            let captured = s.is_simple(next.block_of(r));
            RobberMove {
                position: Position {
                    partition: next.clone(),
                    robber: r,
                },
                captured,
            }
        })
        .collect())
}

/// Result of solving one variant of the game.
#[derive(Clone, Debug)]
pub struct GameSolution {
    monotone: bool,
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// `(partition index, robber space)` for every uncaptured position.
    states: Vec<(usize, Subset)>,
    state_index: HashMap<(usize, Subset), usize>,
    /// Attractor rank and chosen move of each captain-winning state.
    win: Vec<Option<(u32, usize)>>,
    simple: Vec<bool>,
    full: Subset,
    opening_capture: bool,
}

impl GameSolution {
    pub fn monotone(&self) -> bool {
        self.monotone
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn winner(&self) -> Player {
        let opening = self.index.get(&Partition::trivial(self.full.len())).copied();
        match opening {
            None => Player::Robber,
            Some(_) if self.opening_capture => Player::Captain,
            Some(i) => match self.state_win(i, self.full) {
                Some(_) => Player::Captain,
                None => Player::Robber,
            },
        }
    }

    fn state_win(&self, p: usize, x: Subset) -> Option<(u32, usize)> {
        self.state_index.get(&(p, x)).and_then(|&i| self.win[i])
    }

    fn is_simple(&self, x: Subset) -> bool {
        self.simple[x.mask() as usize]
    }

    /// Whether the captain, to move in `(p, x)`, can force a capture.
    pub fn is_winning(&self, p: &Partition, x: Subset) -> bool {
        self.index.get(p).is_some_and(|&i| self.state_win(i, x).is_some())
    }

    /// Attractor rank of a winning position: the number of captain moves the
    /// chosen strategy needs in the worst case.
    pub fn rank(&self, p: &Partition, x: Subset) -> Option<u32> {
        self.index.get(p).and_then(|&i| self.state_win(i, x)).map(|w| w.0)
    }

    /// The captain's strategy move in a winning position.
    pub fn captain_move(&self, p: &Partition, x: Subset) -> Option<&Partition> {
        let i = *self.index.get(p)?;
        self.state_win(i, x).map(|(_, j)| &self.partitions[j])
    }

    /// Legality of `next` as a captain move from a position with robber space `x`.
    pub fn is_legal(&self, next: &Partition, x: Subset) -> bool {
        self.index.contains_key(next) && (!self.monotone || refines_space(next, x))
    }

    /// Robber spaces reachable after the captain announces `next`.
    pub fn replies(&self, p: &Partition, x: Subset, next: &Partition) -> Vec<Subset> {
        let y = reachable(p, next, x);
        next.blocks().iter().copied().filter(|b| b.is_subset_of(y)).collect()
    }

    /// The robber's best reply: an escape outside the captain's winning
    /// region if there is one, otherwise the slowest capture.
    pub fn robber_reply(&self, p: &Partition, x: Subset, next: &Partition) -> Option<Subset> {
        let j = *self.index.get(next)?;
        self.replies(p, x, next).into_iter().max_by_key(|&b| {
            if self.is_simple(b) {
                (0u8, 0u32)
            } else {
                match self.state_win(j, b) {
                    None => (2, 0),
                    Some((r, _)) => (1, r),
                }
            }
        })
    }

    pub fn is_capture(&self, x: Subset) -> bool {
        self.is_simple(x)
    }

    /// Number of captain-winning positions.
    pub fn region_size(&self) -> usize {
        self.win.iter().filter(|w| w.is_some()).count()
    }

    /// The winning region as `(partition, robber space, rank)` triples.
    pub fn region(&self) -> Vec<(Partition, Subset, u32)> {
        self.states
            .iter()
            .zip(&self.win)
            .filter_map(|(&(p, x), w)| w.map(|(r, _)| (self.partitions[p].clone(), x, r)))
            .collect()
    }

    /// Extracts the captain's winning strategy from the opening position.
    pub fn strategy(&self) -> Option<StrategyTree> {
        if self.winner() != Player::Captain {
            return None;
        }
        let root_p = Partition::trivial(self.full.len());
        let mut nodes = vec![StrategyNode {
            partition: root_p.clone(),
            space: self.full,
            next: None,
            children: vec![],
        }];
        if self.opening_capture {
            return Some(StrategyTree {
                monotone: self.monotone,
                nodes,
            });
        }
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            let (p, x) = (nodes[v].partition.clone(), nodes[v].space);
            let i = self.index[&p];
            let (_, j) = self.state_win(i, x).expect("strategy stays in the winning region");
            let next = self.partitions[j].clone();
            nodes[v].next = Some(next.clone());
            for b in self.replies(&p, x, &next) {
                let c = nodes.len();
                nodes.push(StrategyNode {
                    partition: next.clone(),
                    space: b,
                    next: None,
                    children: vec![],
                });
                nodes[v].children.push(c);
                if !self.is_simple(b) {
                    stack.push(c);
                }
            }
        }
        Some(StrategyTree {
            monotone: self.monotone,
            nodes,
        })
    }
}

/// Solves the game (or its monotone variant) on `s` for ground sets of at
/// most [`DEFAULT_GAME_LIMIT`] elements.
pub fn solve(s: &Scenario, monotone: bool) -> Result<GameSolution> {
    solve_with_limit(s, monotone, DEFAULT_GAME_LIMIT)
}

pub fn solve_with_limit(s: &Scenario, monotone: bool, limit: usize) -> Result<GameSolution> {
    if s.n() > limit {
        return Err(Error::LimitExceeded { n: s.n(), limit });
    }
    let partitions = s.feasible_partitions()?;
    let index: HashMap<Partition, usize> = partitions.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let simple: Vec<bool> = Subset::all(s.n()).map(|x| s.is_simple(x)).collect();
    let mut states = Vec::new();
    for (i, p) in partitions.iter().enumerate() {
        for &b in p.blocks() {
            if !simple[b.mask() as usize] {
                states.push((i, b));
            }
        }
    }
    let state_index: HashMap<(usize, Subset), usize> = states.iter().enumerate().map(|(k, &st)| (st, k)).collect();
    let mut win: Vec<Option<(u32, usize)>> = vec![None; states.len()];

    let mut rank = 0u32;
    loop {
        rank += 1;
        let snapshot = &win;
        let found: Vec<(usize, usize)> = states
            .par_iter()
            .enumerate()
            .filter(|&(k, _)| snapshot[k].is_none())
            .filter_map(|(k, &(i, x))| {
                let p = &partitions[i];
                (0..partitions.len())
                    .find(|&j| {
                        let next = &partitions[j];
                        if monotone && !refines_space(next, x) {
                            return false;
                        }
                        let y = reachable(p, next, x);
                        next.blocks().iter().filter(|b| b.is_subset_of(y)).all(|&b| {
                            simple[b.mask() as usize]
                                || state_index.get(&(j, b)).is_some_and(|&t| snapshot[t].is_some())
                        })
                    })
                    .map(|j| (k, j))
            })
            .collect();
        if found.is_empty() {
            break;
        }
        for (k, j) in found {
            win[k] = Some((rank, j));
        }
    }
    Ok(GameSolution {
        monotone,
        partitions,
        index,
        states,
        state_index,
        win,
        simple,
        full: s.full(),
        opening_capture: s.is_simple(s.full()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyNode {
    /// The partition standing when this node is reached.
    pub partition: Partition,
    /// The robber space in that partition.
    pub space: Subset,
    /// The captain's next partition; `None` at captures.
    pub next: Option<Partition>,
    pub children: Vec<usize>,
}

/// A captain strategy: node 0 is the opening position `({A}, A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyTree {
    pub monotone: bool,
    pub nodes: Vec<StrategyNode>,
}

impl StrategyTree {
    pub fn leaves(&self) -> impl Iterator<Item = &StrategyNode> {
        self.nodes.iter().filter(|v| v.children.is_empty())
    }

    /// Replays every robber line against the strategy; true iff each one
    /// ends in a capture and every move is legal.
    pub fn replay(&self, s: &Scenario) -> bool {
        self.nodes.iter().all(|v| match &v.next {
            None => s.is_simple(v.space),
            Some(next) => {
                if !s.is_feasible(next) || (self.monotone && !refines_space(next, v.space)) {
                    return false;
                }
                let y = reachable(&v.partition, next, v.space);
                let mut expect: Vec<Subset> = next.blocks().iter().copied().filter(|b| b.is_subset_of(y)).collect();
                let mut got: Vec<Subset> = v.children.iter().map(|&c| self.nodes[c].space).collect();
                expect.sort();
                got.sort();
                expect == got && v.children.iter().all(|&c| self.nodes[c].partition == *next)
            }
        })
    }

    pub fn to_dot(&self, ground: &GroundSet, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n");
        for (i, v) in self.nodes.iter().enumerate() {
            let shape = if v.children.is_empty() { "box" } else { "ellipse" };
            let label = match &v.next {
                Some(p) => format!("{} -> {}", ground.format_subset(v.space), p.display(ground)),
                None => ground.format_subset(v.space),
            };
            out.push_str(&format!("  n{i} [shape={shape}, label=\"{label}\"];\n"));
            for &c in &v.children {
                out.push_str(&format!("  n{i} -> n{c};\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Turns a monotone winning strategy into a tree decomposition: a strategy
/// node with space `X` and move `P'` becomes a tree node whose components are
/// `X^c` and the blocks of `P'` inside `X`.
pub fn strategy_to_tdec(s: &Scenario, strat: &StrategyTree) -> Result<TreeDec> {
    if !strat.monotone {
        return Err(Error::Precondition("strategy is not monotone".into()));
    }
    if !strat.replay(s) {
        return Err(Error::Precondition("strategy is not winning".into()));
    }
    let root = &strat.nodes[0];
    let d = if root.children.is_empty() {
        if s.is_simple(Subset::EMPTY) {
            let tree = Tree::from_edges(2, &[(0, 1)])?;
            TreeDec::new(tree, BTreeMap::from([(0, root.space), (1, Subset::EMPTY)]))?
        } else {
            TreeDec::new(Tree::single(), BTreeMap::from([(0, root.space)]))?
        }
    } else {
        let edges: Vec<(usize, usize)> = strat
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(i, v)| v.children.iter().map(move |&c| (i, c)))
            .collect();
        let tree = Tree::from_edges(strat.nodes.len(), &edges)?;
        let labels = strat
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, v)| v.children.is_empty())
            .map(|(i, v)| (i, v.space))
            .collect();
        TreeDec::new(tree, labels)?
    };
    let report = validate_tdec(s, &d);
    if !report.is_valid() {
        return Err(Error::Validation(format!(
            "strategy tree did not yield a tree decomposition: {:?}",
            report.violations
        )));
    }
    Ok(d)
}

#[cfg(test)]
mod tests;
