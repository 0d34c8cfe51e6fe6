//! The `scgame` command line.

mod play;

use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::decomposition::{
    bdec_to_tdec_cubed, find_bdec, find_tdec, make_exact, search_tree_to_tdec, tdec_to_bdec, tdec_to_search_tree,
    validate_bdec, validate_search_tree, validate_tdec, LeafLabeling, SearchTree,
};
use crate::error::{Error, Result};
use crate::game::{find_bramble, solve_with_limit, Player, DEFAULT_GAME_LIMIT};
use crate::io::{
    bramble_json, leaf_labeling_json, parse_decomposition, parse_graph, parse_matroid, parse_scenario, read_file,
    search_tree_json, solution_json, to_pretty, width_json, DecKind, Decomposition,
};
use crate::oracle::{self, SuiteReport};
use crate::scenario::{check_axioms, check_weak_submodularity, AxiomViolation, Scenario};
use crate::subset::{GroundSet, Subset};
use crate::width::{width_parameter, FnKind, WidthInput, WidthParam};

pub use play::{play, PlayOutcome};

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

/// Environment variable bounding every enumeration over the ground set.
pub const MAX_N_ENV: &str = "SCWIDTH_MAX_N";

#[derive(Debug, Parser)]
#[command(name = "scgame", version, about = "Captain-and-robber games on partition scenarios")]
pub struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write a DOT rendering of the resulting tree to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub dot: Option<PathBuf>,

    /// Largest ground set any command enumerates over.
    #[arg(long = "limit", global = true, env = MAX_N_ENV, default_value_t = DEFAULT_GAME_LIMIT)]
    pub limit: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Equivalence,
    Monotonicity,
    Props,
    MatroidTw,
    Widths,
    MakeExact,
    Potential,
    Conversions,
    Explore,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check SC1-SC3, weak submodularity and whether the simple sets cover A.
    CheckScenario { file: PathBuf },
    /// Decide the winner and print the captain's strategy when there is one.
    Solve {
        #[arg(long)]
        monotone: bool,
        file: PathBuf,
    },
    /// Find a tree decomposition.
    Tdec { file: PathBuf },
    /// Find a branch decomposition.
    Bdec { file: PathBuf },
    /// Find a bramble avoiding the simple sets.
    Bramble { file: PathBuf },
    /// Convert between tree decompositions, branch decompositions and search trees.
    Convert {
        #[arg(long)]
        from: DecKind,
        #[arg(long)]
        to: DecKind,
        /// The scenario the decomposition belongs to.
        #[arg(long)]
        scenario: PathBuf,
        file: PathBuf,
    },
    /// Compute a width parameter of a graph (edge list or JSON) or binary matrix.
    Width {
        #[arg(long)]
        param: WidthParam,
        #[arg(long = "fn")]
        function: Option<FnKind>,
        /// Read the input as a 0/1 matrix rather than a graph.
        #[arg(long)]
        matrix: bool,
        file: PathBuf,
    },
    /// Run a brute-force verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest scenario ground set in the corpus (exhaustive up to 4, sampled at 5).
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = oracle::DEFAULT_SEED)]
        seed: u64,
        /// Number of sampled scenarios on five elements.
        #[arg(long, default_value_t = oracle::DEFAULT_SAMPLES)]
        samples: usize,
        /// Write one JSON bundle per failure into this directory.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
    /// Play as the captain against the optimal robber.
    Play {
        #[arg(long)]
        monotone: bool,
        file: PathBuf,
    },
}

/// What a command produced: text for humans, JSON for `--json`, an optional
/// DOT rendering, and the exit code.
struct Output {
    text: String,
    json: Value,
    dot: Option<String>,
    code: i32,
}

impl Output {
    fn new(text: impl Into<String>, json: Value, code: i32) -> Self {
        Output {
            text: text.into(),
            json,
            dot: None,
            code,
        }
    }

    fn with_dot(mut self, dot: Option<String>) -> Self {
        self.dot = dot;
        self
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::LimitExceeded { .. } | Error::GroundTooLarge { .. } => EXIT_LIMIT,
        _ => EXIT_INPUT,
    }
}

fn load_scenario(path: &Path, limit: usize) -> Result<Scenario> {
    Ok(parse_scenario(&read_file(path)?)?.scenario.with_limit(limit))
}

fn check_limit(s: &Scenario, limit: usize) -> Result<()> {
    if s.n() > limit {
        return Err(Error::LimitExceeded { n: s.n(), limit });
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn describe(v: &AxiomViolation, g: &GroundSet) -> String {
    match v {
        AxiomViolation::Sc1 { feasible, missing } => format!(
            "SC1: {} is feasible but its coarsening {} is not",
            feasible.display(g),
            missing.display(g)
        ),
        AxiomViolation::Sc2 {
            simple,
            partition,
            block,
        } => format!(
            "SC2: block {} of {} lies inside the simple set {} but is not simple",
            g.format_subset(*block),
            partition.display(g),
            g.format_subset(*simple)
        ),
        AxiomViolation::Sc3 { simple } => format!(
            "SC3: the simple set {} does not give a feasible bipartition",
            g.format_subset(*simple)
        ),
    }
}

fn check_scenario(s: &Scenario) -> Result<Output> {
    let axioms = check_axioms(s)?;
    let weak = check_weak_submodularity(s)?;
    let covers = s.simple_union() == s.full();
    let g = s.ground();
    let mut text = format!(
        "SC1 {}\nSC2 {}\nSC3 {}\nweakly submodular {}\nsimple sets cover the ground set {}\n",
        yes_no(axioms.sc1),
        yes_no(axioms.sc2),
        yes_no(axioms.sc3),
        yes_no(weak.holds),
        yes_no(covers)
    );
    for v in axioms.violations.iter().take(5) {
        text.push_str(&format!("  {}\n", describe(v, g)));
    }
    if let Some((p, q, x, y)) = &weak.witness {
        text.push_str(&format!(
            "  no redirect for {} in {} and {} in {}\n",
            g.format_subset(*x),
            p.display(g),
            g.format_subset(*y),
            q.display(g)
        ));
    }
    let json = json!({
        "sc1": axioms.sc1,
        "sc2": axioms.sc2,
        "sc3": axioms.sc3,
        "weakly_submodular": weak.holds,
        "covers": covers,
        "violations": axioms.violations.iter().map(|v| describe(v, g)).collect::<Vec<_>>(),
    });
    Ok(Output::new(
        text,
        json,
        if axioms.holds() { EXIT_OK } else { EXIT_NEGATIVE },
    ))
}

fn solve_cmd(s: &Scenario, monotone: bool, limit: usize) -> Result<Output> {
    let sol = solve_with_limit(s, monotone, limit)?;
    let winner = sol.winner();
    let strat = sol.strategy();
    let variant = if monotone { "monotone game" } else { "game" };
    let text = format!(
        "{}: {} wins ({} feasible partitions, {} winning positions)\n",
        variant,
        match winner {
            Player::Captain => "captain",
            Player::Robber => "robber",
        },
        sol.partitions().len(),
        sol.region_size()
    );
    let dot = strat.as_ref().map(|t| t.to_dot(s.ground(), "strategy"));
    let code = if winner == Player::Captain {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Ok(Output::new(text, solution_json(s.ground(), &sol), code).with_dot(dot))
}

fn leaves_text(kind: &str, g: &GroundSet, d: &LeafLabeling) -> String {
    let mut text = format!("{kind} with {} nodes\n", d.tree.len());
    for (a, b) in d.tree.edges() {
        text.push_str(&format!("  {a} -- {b}\n"));
    }
    for (node, &x) in &d.labels {
        text.push_str(&format!("  leaf {node}: {}\n", g.format_subset(x)));
    }
    text
}

fn leaves_output(kind: DecKind, g: &GroundSet, d: Option<&LeafLabeling>) -> Output {
    match d {
        None => Output::new("none\n", Value::Null, EXIT_NEGATIVE),
        Some(d) => {
            let j = serde_json::to_value(leaf_labeling_json(kind, g, d)).expect("serializes");
            Output::new(leaves_text(kind.as_str(), g, d), j, EXIT_OK).with_dot(Some(d.to_dot(g, kind.as_str())))
        }
    }
}

fn search_output(g: &GroundSet, st: &SearchTree) -> Output {
    let mut text = format!("search tree with {} nodes\n", st.tree.len());
    for (&(a, b), &x) in &st.labels {
        text.push_str(&format!("  {a} -> {b}: {}\n", g.format_subset(x)));
    }
    let j = serde_json::to_value(search_tree_json(g, st)).expect("serializes");
    Output::new(text, j, EXIT_OK).with_dot(Some(st.to_dot(g, "searchtree")))
}

fn bramble_cmd(s: &Scenario) -> Result<Output> {
    let b = find_bramble(s)?;
    let g = s.ground();
    let text = match &b {
        None => "none\n".to_string(),
        Some(b) => {
            let sets: Vec<String> = b.sets.iter().map(|&x| g.format_subset(x)).collect();
            format!("bramble: {}\n", sets.join(" "))
        }
    };
    let code = if b.is_some() { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(Output::new(text, bramble_json(g, b.as_ref()), code))
}

fn invalid(what: &str, detail: impl std::fmt::Debug) -> Error {
    Error::Validation(format!("{what} does not validate: {detail:?}"))
}

/// Brings a search tree to an exact one, compatible with its own leaf labels.
fn exact_tree(s: &Scenario, st: &SearchTree) -> Result<SearchTree> {
    let family: Vec<Subset> = st.leaf_arcs().into_iter().map(|(a, b)| st.label(a, b)).collect();
    Ok(make_exact(s, st, &family)?.tree)
}

fn convert(s: &Scenario, from: DecKind, to: DecKind, d: Decomposition) -> Result<Output> {
    let g = s.ground().clone();
    // normalise the input to a tree decomposition of a scenario, keeping the
    // input itself when no conversion is asked for
    let (tdec, scenario) = match (from, d) {
        (DecKind::Tdec, Decomposition::Leaves(d)) => {
            let r = validate_tdec(s, &d);
            if !r.is_valid() {
                return Err(invalid("tree decomposition", r.violations));
            }
            if to == DecKind::Tdec {
                return Ok(leaves_output(DecKind::Tdec, &g, Some(&d)));
            }
            (d, s.clone())
        }
        (DecKind::Bdec, Decomposition::Leaves(d)) => {
            let r = validate_bdec(s, &d);
            if !r.is_valid() {
                return Err(invalid("branch decomposition", r.violations));
            }
            if to == DecKind::Bdec {
                return Ok(leaves_output(DecKind::Bdec, &g, Some(&d)));
            }
            let (t, cubed) = bdec_to_tdec_cubed(s, &d)?;
            (t, cubed)
        }
        (DecKind::Searchtree, Decomposition::Search(st)) => {
            let r = validate_search_tree(s, &st, false, true);
            if !r.is_valid(false, true) {
                return Err(invalid("search tree", r.violations));
            }
            let exact = exact_tree(s, &st)?;
            if to == DecKind::Searchtree {
                return Ok(search_output(&g, &exact));
            }
            (search_tree_to_tdec(s, &exact)?, s.clone())
        }
        _ => return Err(Error::Validation(format!("input is not a {}", from.as_str()))),
    };
    let mut out = match to {
        DecKind::Tdec => leaves_output(DecKind::Tdec, &g, Some(&tdec)),
        DecKind::Bdec => leaves_output(DecKind::Bdec, &g, Some(&tdec_to_bdec(&scenario, &tdec)?)),
        DecKind::Searchtree => search_output(&g, &tdec_to_search_tree(&scenario, &tdec)?),
    };
    if from == DecKind::Bdec {
        out.text.push_str(
            "(relative to the scenario whose partitions are the common coarsenings of three feasible bipartitions)\n",
        );
    }
    Ok(out)
}

fn width_cmd(param: WidthParam, function: Option<FnKind>, matrix: bool, text: &str) -> Result<Output> {
    let input = if matrix {
        WidthInput::Matroid(parse_matroid(text)?)
    } else {
        WidthInput::Graph(parse_graph(text)?)
    };
    let r = width_parameter(param, &input, function)?;
    Ok(Output::new(format!("{}\n", r.value), width_json(&r), EXIT_OK))
}

fn report_output(r: &SuiteReport, dump_dir: Option<&Path>) -> Result<Output> {
    let mut text = format!("{}\n", r.summary());
    for n in &r.notes {
        text.push_str(&format!("  {n}\n"));
    }
    for f in r.failures.iter().take(20) {
        text.push_str(&format!("  FAIL #{} ({}): {}\n", f.index, f.origin, f.message));
    }
    if let Some(dir) = dump_dir {
        let n = r.write_dumps(dir)?;
        text.push_str(&format!("  {n} counterexample bundles written to {}\n", dir.display()));
    }
    let code = if r.passed() { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(Output::new(text, r.to_json(), code))
}

/// Runs one suite over the default corpora.
pub fn run_suite(suite: Suite, max_n: usize, seed: u64, samples: usize, limit: usize) -> Result<SuiteReport> {
    let corpus = || oracle::corpus(max_n, samples, seed);
    Ok(match suite {
        Suite::Equivalence => oracle::equivalence_suite(&corpus()?),
        Suite::Monotonicity => oracle::monotonicity_suite(&corpus()?, max_n.min(oracle::MAX_ENUM_EDGES), limit)?,
        Suite::Props => oracle::props_suite(max_n.clamp(6, oracle::MAX_ENUM_VERTICES), seed)?,
        Suite::MatroidTw => oracle::matroid_tw_suite(max_n.min(oracle::MAX_ENUM_EDGES))?,
        Suite::Widths => oracle::widths_suite(max_n)?,
        Suite::MakeExact | Suite::Potential => {
            let cases = oracle::make_exact_cases(&corpus()?, 2, seed)?;
            let (validity, potential) = oracle::make_exact_suites(&cases);
            if suite == Suite::MakeExact {
                validity
            } else {
                potential
            }
        }
        Suite::Conversions => oracle::conversions_suite(&corpus()?),
        Suite::Explore => oracle::explore_suite(max_n)?,
    })
}

fn execute(cli: &Cli, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<Output> {
    let limit = cli.limit;
    match &cli.command {
        Command::CheckScenario { file } => check_scenario(&load_scenario(file, limit)?),
        Command::Solve { monotone, file } => solve_cmd(&load_scenario(file, limit)?, *monotone, limit),
        Command::Tdec { file } => {
            let s = load_scenario(file, limit)?;
            check_limit(&s, limit)?;
            Ok(leaves_output(DecKind::Tdec, s.ground(), find_tdec(&s)?.as_ref()))
        }
        Command::Bdec { file } => {
            let s = load_scenario(file, limit)?;
            check_limit(&s, limit)?;
            Ok(leaves_output(DecKind::Bdec, s.ground(), find_bdec(&s)?.as_ref()))
        }
        Command::Bramble { file } => {
            let s = load_scenario(file, limit)?;
            check_limit(&s, limit)?;
            bramble_cmd(&s)
        }
        Command::Convert {
            from,
            to,
            scenario,
            file,
        } => {
            let s = load_scenario(scenario, limit)?;
            check_limit(&s, limit)?;
            let (kind, ground, d) = parse_decomposition(&read_file(file)?)?;
            if kind != *from {
                return Err(Error::Validation(format!(
                    "file holds a {}, not a {}",
                    kind.as_str(),
                    from.as_str()
                )));
            }
            if ground.names() != s.ground().names() {
                return Err(Error::Validation(
                    "decomposition and scenario name different elements".into(),
                ));
            }
            convert(&s, *from, *to, d)
        }
        Command::Width {
            param,
            function,
            matrix,
            file,
        } => width_cmd(*param, *function, *matrix, &read_file(file)?),
        Command::Verify {
            suite,
            max_n,
            seed,
            samples,
            dump_dir,
        } => {
            let r = run_suite(*suite, *max_n, *seed, *samples, limit)?;
            report_output(&r, dump_dir.as_deref())
        }
        Command::Play { monotone, file } => {
            let s = load_scenario(file, limit)?;
            let outcome = play(&s, *monotone, limit, input, out)?;
            let code = match outcome {
                PlayOutcome::Captured => EXIT_OK,
                _ => EXIT_NEGATIVE,
            };
            Ok(Output::new("", json!({ "outcome": outcome }), code))
        }
    }
}

/// Runs a parsed command line against the given streams and returns the
/// exit code. Errors are reported on `err`.
pub fn run(cli: &Cli, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = execute(cli, input, out).and_then(|o| {
        if let Some(path) = &cli.dot {
            if let Some(dot) = &o.dot {
                std::fs::write(path, dot).map_err(|e| Error::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
            }
        }
        Ok(o)
    });
    match result {
        Ok(o) => {
            let written = if cli.json {
                writeln!(out, "{}", to_pretty(&o.json))
            } else {
                write!(out, "{}", o.text)
            };
            if written.is_err() {
                return EXIT_INPUT;
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
