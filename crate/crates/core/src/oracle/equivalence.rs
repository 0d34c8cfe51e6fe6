use serde::Serialize;
use serde_json::{json, Value};

use crate::decomposition::{find_tdec, search_tree_to_tdec, validate_search_tree, validate_tdec};
use crate::error::{Error, Result};
use crate::game::{
    exhaustive_escape_check, find_bramble, solve, solve_with_limit, strategy_to_tdec, Player, DEFAULT_GAME_LIMIT,
};
use crate::io::{bramble_json, explicit_to_json, leaf_labeling_json, search_tree_json, DecKind};
use crate::scenario::{check_axioms, check_weak_submodularity, Scenario};
use crate::subset::Subset;
use crate::width::{connectivity_fn, part_f_k, part_mtw_k, part_tw_k, FnKind, Graph, Matroid, WidthInput};

use super::exact::exact_search_tree;
use super::generate::CorpusEntry;
use super::graphs::enumerate_small_graphs;
use super::report::{run_checks, SuiteReport};

/// The five statements characterising tree decomposable scenarios.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdicts {
    pub exact_search_tree: bool,
    pub tree_decomposition: bool,
    pub monotone_captain_wins: bool,
    pub captain_wins: bool,
    pub no_bramble: bool,
}

impl EquivalenceVerdicts {
    pub fn as_array(&self) -> [bool; 5] {
        [
            self.exact_search_tree,
            self.tree_decomposition,
            self.monotone_captain_wins,
            self.captain_wins,
            self.no_bramble,
        ]
    }

    pub fn agree(&self) -> bool {
        let a = self.as_array();
        a.iter().all(|&v| v == a[0])
    }
}

#[derive(Clone, Debug)]
pub struct EquivalenceOutcome {
    pub verdicts: EquivalenceVerdicts,
    /// Invalid witnesses; empty when every witness revalidated.
    pub problems: Vec<String>,
    pub witnesses: Value,
}

impl EquivalenceOutcome {
    pub fn ok(&self) -> bool {
        self.verdicts.agree() && self.problems.is_empty()
    }
}

/// Checks the precondition: a weakly submodular scenario with `⋃𝒮 = A`.
pub fn equivalence_applies(s: &Scenario) -> Result<bool> {
    Ok(check_axioms(s)?.holds() && s.simple_union() == s.full() && check_weak_submodularity(s)?.holds)
}

/// Evaluates the five statements independently and revalidates every
/// witness they produce.
pub fn equivalence_check(s: &Scenario) -> Result<EquivalenceOutcome> {
    if !equivalence_applies(s)? {
        return Err(Error::Precondition(
            "needs a weakly submodular scenario whose simple sets cover the ground set".into(),
        ));
    }
    let g = s.ground();
    let mut problems = Vec::new();
    let mut witnesses = serde_json::Map::new();

    let exact = exact_search_tree(s)?;
    if let Some(st) = &exact {
        witnesses.insert("exact_search_tree".into(), json!(search_tree_json(g, st)));
        if !validate_search_tree(s, st, true, true).is_valid(true, true) {
            problems.push("exact search tree witness does not validate".into());
        } else {
            let d = search_tree_to_tdec(s, st)?;
            if !validate_tdec(s, &d).is_valid() {
                problems.push("tree decomposition read off the exact search tree is invalid".into());
            }
        }
    }

    let tdec = find_tdec(s)?;
    if let Some(d) = &tdec {
        witnesses.insert("tdec".into(), json!(leaf_labeling_json(DecKind::Tdec, g, d)));
        if !validate_tdec(s, d).is_valid() {
            problems.push("tree decomposition does not validate".into());
        }
    }

    let mono = solve(s, true)?;
    if mono.winner() == Player::Captain {
        match mono.strategy() {
            Some(strat) => {
                if !strat.replay(s) {
                    problems.push("monotone strategy fails on replay".into());
                }
                match strategy_to_tdec(s, &strat) {
                    Ok(d) if validate_tdec(s, &d).is_valid() => {}
                    Ok(_) => problems.push("strategy tree decomposition is invalid".into()),
                    Err(e) => problems.push(format!("strategy to decomposition: {e}")),
                }
            }
            None => problems.push("captain wins but no strategy was extracted".into()),
        }
    }
    let general = solve(s, false)?;

    let bramble = find_bramble(s)?;
    witnesses.insert("bramble".into(), bramble_json(g, bramble.as_ref())["bramble"].clone());
    if let Some(b) = &bramble {
        if let Err(e) = b.check(s) {
            problems.push(format!("bramble invalid: {e}"));
        } else if !exhaustive_escape_check(s, b)? {
            problems.push("bramble strategy is caught".into());
        }
    }

    let verdicts = EquivalenceVerdicts {
        exact_search_tree: exact.is_some(),
        tree_decomposition: tdec.is_some(),
        monotone_captain_wins: mono.winner() == Player::Captain,
        captain_wins: general.winner() == Player::Captain,
        no_bramble: bramble.is_none(),
    };
    Ok(EquivalenceOutcome {
        verdicts,
        problems,
        witnesses: Value::Object(witnesses),
    })
}

fn dump(s: &Scenario, extra: Value) -> Result<Value> {
    Ok(json!({ "scenario": explicit_to_json(&s.materialize()?), "result": extra }))
}

/// The five-way equivalence over a corpus.
pub fn equivalence_suite(corpus: &[CorpusEntry]) -> SuiteReport {
    run_checks(
        "equivalence",
        corpus,
        |e| e.origin.clone(),
        |e| {
            let s = e.scenario.to_scenario();
            let out = equivalence_check(&s)?;
            if out.ok() {
                return Ok(None);
            }
            let message = if out.verdicts.agree() {
                out.problems.join("; ")
            } else {
                format!("verdicts disagree: {:?}", out.verdicts.as_array())
            };
            Ok(Some((
                message,
                dump(
                    &s,
                    json!({ "verdicts": out.verdicts, "problems": out.problems, "witnesses": out.witnesses }),
                )?,
            )))
        },
    )
}

/// A named scenario built from a graph or matroid.
pub struct Instance {
    pub name: String,
    pub scenario: Scenario,
}

/// `Part_tw^k`, `Part_f^k` for `δ`, `λ`, cut-rank and carving cut, and
/// `Part_mtw^k` on every graph with at most `max_edges` edges, for every `k`
/// from the smallest meaningful value up to where every partition is
/// feasible. Vertex-ground instances on more than `limit` elements are
/// skipped.
pub fn instantiations(max_edges: usize, limit: usize) -> Result<(Vec<Instance>, usize)> {
    let mut out = Vec::new();
    let mut skipped = 0;
    for g in enumerate_small_graphs(max_edges)? {
        let gname = graph_name(&g);
        for k in 1..=g.num_vertices() {
            out.push(Instance {
                name: format!("Part_tw^{k} {gname}"),
                scenario: part_tw_k(&g, k)?,
            });
        }
        let input = WidthInput::Graph(g.clone());
        for kind in [FnKind::Delta, FnKind::Lambda, FnKind::CutRank, FnKind::Carving] {
            let f = connectivity_fn(&input, kind)?;
            if f.n() > limit {
                skipped += 1;
                continue;
            }
            let top: i64 = (0..f.n()).map(|a| f.eval(Subset::singleton(a))).sum();
            for k in 0..=top {
                out.push(Instance {
                    name: format!("Part_{}^{k} {gname}", f.name()),
                    scenario: part_f_k(&f, k),
                });
            }
        }
        let m = Matroid::graphic(&g)?;
        for k in 0..=m.total_rank() as i64 {
            out.push(Instance {
                name: format!("Part_mtw^{k} {gname}"),
                scenario: part_mtw_k(&m, k),
            });
        }
    }
    Ok((out, skipped))
}

pub fn graph_name(g: &Graph) -> String {
    let v = g.vertices();
    let edges: Vec<String> = g
        .edges()
        .iter()
        .map(|&(a, b)| format!("{}{}", v.name(a), v.name(b)))
        .collect();
    format!("[{}]", edges.join(" "))
}

fn monotone_agrees(s: &Scenario, limit: usize) -> Result<Option<(String, Value)>> {
    let mono = solve_with_limit(s, true, limit)?.winner();
    let general = solve_with_limit(s, false, limit)?.winner();
    if mono == general {
        return Ok(None);
    }
    Ok(Some((
        format!("monotone game: {mono:?}, general game: {general:?}"),
        dump(s, json!({ "monotone": mono, "general": general }))?,
    )))
}

/// Monotone and general verdicts agree on the corpus and on every
/// instantiation that satisfies the scenario axioms. Games are solved on
/// grounds of at most `limit` elements.
pub fn monotonicity_suite(corpus: &[CorpusEntry], max_edges: usize, limit: usize) -> Result<SuiteReport> {
    let mut report = run_checks(
        "monotonicity",
        corpus,
        |e| e.origin.clone(),
        |e| monotone_agrees(&e.scenario.to_scenario(), limit),
    );
    let (instances, skipped) = instantiations(max_edges, limit)?;
    let mut genuine = Vec::new();
    let mut not_scenarios = 0;
    for inst in instances {
        if check_axioms(&inst.scenario)?.holds() {
            genuine.push(inst);
        } else {
            not_scenarios += 1;
        }
    }
    let inst_report = run_checks(
        "monotonicity",
        &genuine,
        |i| i.name.clone(),
        |i| monotone_agrees(&i.scenario, limit),
    );
    report.notes.push(format!(
        "{} corpus scenarios, {} instantiations ({} pairs failing SC1-SC3 skipped, {} functions on more than {} elements skipped)",
        corpus.len(),
        genuine.len(),
        not_scenarios,
        skipped,
        limit
    ));
    report.merge(inst_report);
    Ok(report)
}

/// Compares the two game variants on scenarios that are not weakly
/// submodular. Disagreements are listed as notes; the report never fails.
pub fn explore_suite(max_n: usize) -> Result<SuiteReport> {
    let mut pool = Vec::new();
    for n in 1..=max_n.min(super::generate::MAX_EXHAUSTIVE_SCENARIO_GROUND) {
        for s in super::generate::exhaustive_scenarios(n)? {
            if !check_weak_submodularity(&s.to_scenario())?.holds {
                pool.push(s);
            }
        }
    }
    let found = run_checks(
        "explore",
        &pool,
        |s| format!("n={}", s.ground.len()),
        |s| monotone_agrees(&s.to_scenario(), DEFAULT_GAME_LIMIT),
    );
    let mut report = SuiteReport::new("explore");
    report.checked = found.checked;
    report.notes.push(format!(
        "{} scenarios that are not weakly submodular, {} where the monotone and general games disagree",
        found.checked,
        found.failures.len()
    ));
    for f in found.failures.iter().take(10) {
        report
            .notes
            .push(format!("{}: {} {}", f.origin, f.message, f.dump["scenario"]));
    }
    Ok(report)
}
