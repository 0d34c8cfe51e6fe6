use std::collections::HashSet;
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{refines_space, solve_with_limit};
use crate::io::parse_partition;
use crate::partition::Partition;
use crate::scenario::Scenario;
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlayOutcome {
    Captured,
    Escaped,
    /// The human stopped before the game was decided.
    Abandoned,
}

fn io_error(e: std::io::Error) -> Error {
    Error::Io {
        path: "<terminal>".into(),
        message: e.to_string(),
    }
}

/// Interactive game: the human plays the captain, the engine answers with
/// the robber's optimal reply.
///
/// Illegal moves are rejected with the rule they break and the human is
/// asked again. The robber has escaped once a position repeats from which
/// the captain cannot force a capture. `hint` shows a winning move when one
/// exists and `quit` gives up.
pub fn play(
    s: &Scenario,
    monotone: bool,
    limit: usize,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<PlayOutcome> {
    let sol = solve_with_limit(s, monotone, limit)?;
    let g = s.ground();
    let mut p = Partition::trivial(s.n());
    let mut x: Subset = s.full();
    let say = |out: &mut dyn Write, msg: String| writeln!(out, "{msg}").map_err(io_error);

    say(
        out,
        format!(
            "You are the captain{}. Enter partitions as {{a,b}}{{c}}; `hint` or `quit`.",
            if monotone { " in the monotone game" } else { "" }
        ),
    )?;
    if sol.is_capture(x) {
        say(
            out,
            "The robber's space is simple: captured before the first move.".into(),
        )?;
        return Ok(PlayOutcome::Captured);
    }
    let mut seen: HashSet<(Partition, Subset)> = HashSet::from([(p.clone(), x)]);
    let mut winning = sol.is_winning(&p, x);
    loop {
        say(
            out,
            format!("Barrier {}; the robber is in {}.", p.display(g), g.format_subset(x)),
        )?;
        write!(out, "> ").map_err(io_error)?;
        out.flush().map_err(io_error)?;
        let mut line = String::new();
        if input.read_line(&mut line).map_err(io_error)? == 0 {
            say(out, "Input closed; the robber is still free.".into())?;
            return Ok(PlayOutcome::Abandoned);
        }
        let line = line.trim();
        match line {
            "" => continue,
            "quit" => return Ok(PlayOutcome::Abandoned),
            "hint" => {
                let msg = match sol.captain_move(&p, x) {
                    Some(m) => format!("A winning move: {}", m.display(g)),
                    None => "No move forces a capture from here.".to_string(),
                };
                say(out, msg)?;
                continue;
            }
            _ => {}
        }
        let next = match parse_partition(line, g) {
            Ok(q) => q,
            Err(e) => {
                say(out, format!("{e}"))?;
                continue;
            }
        };
        if !s.is_feasible(&next) {
            say(
                out,
                format!("Illegal: {} is not a feasible partition.", next.display(g)),
            )?;
            continue;
        }
        if monotone && !refines_space(&next, x) {
            say(
                out,
                format!(
                    "Illegal: {} does not split along the robber's space {} (monotonicity).",
                    next.display(g),
                    g.format_subset(x)
                ),
            )?;
            continue;
        }
        let reply = sol
            .robber_reply(&p, x, &next)
            .ok_or_else(|| Error::Validation("no robber reply to a legal move".into()))?;
        p = next;
        x = reply;
        if sol.is_capture(x) {
            say(out, format!("The robber runs to {}: captured.", g.format_subset(x)))?;
            return Ok(PlayOutcome::Captured);
        }
        let now_winning = sol.is_winning(&p, x);
        if winning && !now_winning {
            say(out, "That move lost the win: the robber can now evade forever.".into())?;
        }
        winning = now_winning;
        if !seen.insert((p.clone(), x)) && !winning {
            say(
                out,
                format!(
                    "Position repeated with the robber in {} and no winning move left: the robber escapes.",
                    g.format_subset(x)
                ),
            )?;
            return Ok(PlayOutcome::Escaped);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_edge_list;
    use crate::width::part_tw_k;

    fn triangle(k: usize) -> Scenario {
        part_tw_k(&parse_edge_list("a b\nb c\na c\n").unwrap(), k).unwrap()
    }

    fn run(s: &Scenario, monotone: bool, script: &str) -> (PlayOutcome, String) {
        let mut out = Vec::new();
        let r = play(s, monotone, 7, &mut script.as_bytes(), &mut out).unwrap();
        (r, String::from_utf8(out).unwrap())
    }

    #[test]
    fn splitting_the_triangle_captures() {
        let (r, _) = run(&triangle(3), true, "{a-b}{b-c}{a-c}\n");
        assert_eq!(r, PlayOutcome::Captured);
    }

    #[test]
    fn robber_escapes_a_narrow_captain() {
        let script = "{a-b}{b-c,a-c}\n".repeat(6);
        let (r, out) = run(&triangle(2), false, &script);
        assert_eq!(r, PlayOutcome::Escaped, "{out}");
    }

    #[test]
    fn illegal_moves_are_named_and_retried() {
        let (r, out) = run(&triangle(2), false, "{a-b}{b-c}{a-c}\n{a-b\nquit\n");
        assert_eq!(r, PlayOutcome::Abandoned);
        assert!(out.contains("not a feasible partition"), "{out}");
        assert_eq!(out.matches("> ").count(), 3);
    }

    #[test]
    fn hint_and_end_of_input() {
        let (r, out) = run(&triangle(3), false, "hint\n");
        assert_eq!(r, PlayOutcome::Abandoned);
        assert!(out.contains("A winning move"), "{out}");
        let (_, out) = run(&triangle(2), false, "hint\n");
        assert!(out.contains("No move forces a capture"), "{out}");
    }
}
