use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::Result;
use crate::io::{explicit_to_json, GraphJson};
use crate::partition::enumerate_partitions;
use crate::scenario::{check_axioms, check_weak_submodularity, Scenario};
use crate::subset::{GroundSet, Subset};
use crate::width::{
    bw, connectivity_fn, graph_tdec_to_vf, mtw_exhaustive, part_f_k, part_tw_k, treewidth_exact, tw_by_scenario, tw_f,
    vf_tw, vf_width, width_parameter, ConnectivityFn, FnKind, Graph, Matroid, WidthInput, WidthParam,
};

use super::equivalence::graph_name;
use super::graphs::{connected_small_graphs, enumerate_small_graphs, graphs_on_vertices};
use super::report::{run_checks, SuiteReport};

type Check = Result<Option<(String, Value)>>;

fn graph_dump(g: &Graph) -> Value {
    json!({ "graph": GraphJson::from_graph(g) })
}

/// Random binary matrices with `cols` columns and up to four rows.
pub fn seeded_binary_matroids(cols: usize, count: usize, seed: u64) -> Result<Vec<Matroid>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (cols as u64) << 32);
    let ground = GroundSet::new((0..cols).map(|i| format!("e{i}")))?;
    (0..count)
        .map(|_| {
            let rows = rng.gen_range(1..=4);
            let m: Vec<Vec<bool>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_bool(0.5)).collect())
                .collect();
            Matroid::binary(ground.clone(), &m)
        })
        .collect()
}

/// A connectivity function together with a description of where it came from.
pub struct NamedFn {
    pub origin: String,
    pub f: ConnectivityFn,
}

fn graph_fns(graphs: &[Graph], kinds: &[FnKind]) -> Result<Vec<NamedFn>> {
    let mut out = Vec::new();
    for g in graphs {
        let input = WidthInput::Graph(g.clone());
        for &kind in kinds {
            let f = connectivity_fn(&input, kind)?;
            out.push(NamedFn {
                origin: format!("{} on {}", f.name(), graph_name(g)),
                f,
            });
        }
    }
    Ok(out)
}

fn vertex_graphs(max_vertices: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        out.extend(graphs_on_vertices(n)?);
    }
    Ok(out)
}

fn matroid_name(m: &Matroid, i: usize) -> String {
    format!("binary matroid #{i} on {} elements", m.n())
}

/// Symmetry, submodularity and `f(∅) = 0` for every function on grounds of
/// at most `max_n` elements.
fn connectivity_axioms(max_n: usize, seed: u64) -> Result<SuiteReport> {
    let mut fns = graph_fns(&enumerate_small_graphs(max_n)?, &[FnKind::Delta, FnKind::Lambda])?;
    fns.extend(graph_fns(&vertex_graphs(max_n)?, &[FnKind::CutRank, FnKind::Carving])?);
    for cols in 1..=max_n {
        for (i, m) in seeded_binary_matroids(cols, 40, seed)?.into_iter().enumerate() {
            fns.push(NamedFn {
                origin: matroid_name(&m, i),
                f: ConnectivityFn::lambda(&m)?,
            });
        }
    }
    Ok(run_checks(
        "props",
        &fns,
        |nf| nf.origin.clone(),
        |nf| -> Check {
            let r = nf.f.check_axioms();
            Ok((!r.holds()).then(|| {
                (
                    format!("{} is not a connectivity function: {r:?}", nf.f.name()),
                    Value::Null,
                )
            }))
        },
    ))
}

struct NamedScenario {
    origin: String,
    scenario: Scenario,
}

/// `Part_tw^k` and `Part_f^k` on grounds of at most `max_n` elements.
fn threshold_scenarios(max_n: usize) -> Result<Vec<NamedScenario>> {
    let mut out = Vec::new();
    for g in enumerate_small_graphs(max_n)? {
        for k in 1..=g.num_vertices() {
            out.push(NamedScenario {
                origin: format!("Part_tw^{k} {}", graph_name(&g)),
                scenario: part_tw_k(&g, k)?,
            });
        }
    }
    let mut fns = graph_fns(&enumerate_small_graphs(max_n)?, &[FnKind::Delta, FnKind::Lambda])?;
    fns.extend(graph_fns(&vertex_graphs(max_n)?, &[FnKind::CutRank, FnKind::Carving])?);
    for nf in fns {
        let top: i64 = (0..nf.f.n()).map(|a| nf.f.eval(Subset::singleton(a))).sum();
        for k in 0..=top {
            out.push(NamedScenario {
                origin: format!("k={k} {}", nf.origin),
                scenario: part_f_k(&nf.f, k),
            });
        }
    }
    Ok(out)
}

/// Coarsening closure and weak submodularity of threshold families.
fn threshold_properties(max_n: usize) -> Result<SuiteReport> {
    let items = threshold_scenarios(max_n)?;
    Ok(run_checks(
        "props",
        &items,
        |s| s.origin.clone(),
        |s| -> Check {
            let sc = &s.scenario;
            let mut problems = Vec::new();
            if !check_axioms(sc)?.sc1 {
                problems.push("not closed under coarsening".to_string());
            }
            if let Some(w) = check_weak_submodularity(sc)?.witness {
                problems.push(format!("not weakly submodular at {w:?}"));
            }
            if problems.is_empty() {
                return Ok(None);
            }
            Ok(Some((
                problems.join("; "),
                json!({ "scenario": explicit_to_json(&sc.materialize()?) }),
            )))
        },
    ))
}

/// `w(P) = r(M) − Σ_X (r(X) − λ(X))` on every partition.
fn width_identity(max_n: usize, seed: u64) -> Result<SuiteReport> {
    let mut ms: Vec<(String, Matroid)> = Vec::new();
    for g in enumerate_small_graphs(max_n)? {
        ms.push((format!("M({})", graph_name(&g)), Matroid::graphic(&g)?));
    }
    for cols in 1..=max_n {
        for (i, m) in seeded_binary_matroids(cols, 40, seed)?.into_iter().enumerate() {
            ms.push((matroid_name(&m, i), m));
        }
    }
    Ok(run_checks(
        "props",
        &ms,
        |(name, _)| name.clone(),
        |(_, m)| -> Check {
            let r = m.total_rank() as i64;
            for p in enumerate_partitions(m.n(), m.n())? {
                let rhs = r - p
                    .blocks()
                    .iter()
                    .map(|&x| m.rank(x) as i64 - m.lambda(x) as i64)
                    .sum::<i64>();
                let lhs = m.partition_width(&p);
                if lhs != rhs {
                    return Ok(Some((
                        format!("w({p:?}) = {lhs} but the identity gives {rhs}"),
                        Value::Null,
                    )));
                }
            }
            Ok(None)
        },
    ))
}

/// Connectivity axioms on grounds up to `max_n` (at most six), and threshold
/// scenario properties and the partition-width identity up to
/// `min(max_n, 5)`.
pub fn props_suite(max_n: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("props");
    let small = max_n.min(5);
    for (label, part) in [
        ("connectivity axioms", connectivity_axioms(max_n.min(6), seed)?),
        ("threshold families", threshold_properties(small)?),
        ("partition-width identity", width_identity(small, seed)?),
    ] {
        report.notes.push(format!("{label}: {} checked", part.checked));
        report.merge(part);
    }
    Ok(report)
}

/// `mtw(M(G)) = VF-tw(G) = tw(G)` on connected graphs, each by its own
/// exhaustive search, and converting an optimal graph decomposition to a
/// VF decomposition never exceeds `tw(G)`.
pub fn matroid_tw_suite(max_edges: usize) -> Result<SuiteReport> {
    let graphs = connected_small_graphs(max_edges)?;
    Ok(run_checks("matroid-tw", &graphs, graph_name, |g| -> Check {
        let (tw, d) = treewidth_exact(g)?;
        let (mtw, _) = mtw_exhaustive(&Matroid::graphic(g)?)?;
        let (vf, _) = vf_tw(g)?;
        let converted = vf_width(g, &graph_tdec_to_vf(g, &d)?);
        let tw = tw as i64;
        if mtw == tw && vf == tw && converted <= tw {
            return Ok(None);
        }
        Ok(Some((
            format!("tw {tw}, mtw {mtw}, VF-tw {vf}, converted VF width {converted}"),
            graph_dump(g),
        )))
    }))
}

fn expect(report: &mut SuiteReport, origin: String, got: i64, want: i64, dump: Value) {
    report.checked += 1;
    if got != want {
        report.failures.push(super::report::Failure {
            index: report.checked - 1,
            origin,
            message: format!("expected {want}, got {got}"),
            dump,
        });
    }
}

/// Known width values and the factor-three sandwich `bw ≤ tw_f ≤ 3·bw`.
pub fn widths_suite(max_n: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("widths");
    let mut fixed: Vec<(String, Graph, i64)> = Vec::new();
    for n in 2..=6 {
        fixed.push((format!("P{n}"), Graph::path(n), 1));
    }
    for n in 3..=6 {
        fixed.push((format!("C{n}"), Graph::cycle(n), 2));
    }
    fixed.push(("K4".into(), Graph::complete(4), 3));
    for (name, g, want) in fixed {
        let (tw, d) = treewidth_exact(&g)?;
        let valid = d.validate(&g).is_ok() && d.width() == tw;
        expect(&mut report, format!("tw({name})"), tw as i64, want, graph_dump(&g));
        expect(
            &mut report,
            format!("tw({name}) decomposition"),
            valid as i64,
            1,
            graph_dump(&g),
        );
        if g.num_edges() <= crate::game::DEFAULT_GAME_LIMIT {
            let (k, _) = tw_by_scenario(&g)?;
            expect(
                &mut report,
                format!("tw({name}) by scenario"),
                k as i64,
                want,
                graph_dump(&g),
            );
        }
    }
    for n in 2..=5 {
        let g = Graph::complete(n);
        let r = width_parameter(WidthParam::RankWidth, &WidthInput::Graph(g.clone()), None)?;
        expect(&mut report, format!("rank-width(K{n})"), r.value, 1, graph_dump(&g));
    }

    let small = max_n.min(5);
    let mut fns = graph_fns(&enumerate_small_graphs(small)?, &[FnKind::Delta])?;
    fns.extend(graph_fns(&vertex_graphs(small)?, &[FnKind::CutRank, FnKind::Carving])?);
    let sandwich = run_checks(
        "widths",
        &fns,
        |nf| nf.origin.clone(),
        |nf| -> Check {
            let (b, _) = bw(&nf.f)?;
            let (t, _) = tw_f(&nf.f)?;
            Ok((!(b <= t && t <= 3 * b)).then(|| (format!("bw {b}, tw {t}"), Value::Null)))
        },
    );
    report
        .notes
        .push(format!("factor-three sandwich: {} functions", sandwich.checked));
    report.merge(sandwich);
    Ok(report)
}
