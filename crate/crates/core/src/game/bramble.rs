use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scenario::Scenario;
use crate::subset::Subset;

use super::reachable;

/// A pairwise intersecting family of nonempty sets meeting every feasible
/// partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bramble {
    pub sets: Vec<Subset>,
}

impl Bramble {
    /// The member that is a block of `p`, if any. At most one can be, since
    /// blocks are disjoint and members intersect.
    pub fn member_in(&self, p: &Partition) -> Option<Subset> {
        p.blocks().iter().copied().find(|b| self.sets.contains(b))
    }

    /// Checks the bramble conditions and avoidance of `𝒮`.
    pub fn check(&self, s: &Scenario) -> Result<()> {
        for (i, &x) in self.sets.iter().enumerate() {
            if x.is_empty() {
                return Err(Error::Validation("bramble contains the empty set".into()));
            }
            if s.is_simple(x) {
                return Err(Error::Validation(format!("bramble member {x:?} is simple")));
            }
            if let Some(y) = self.sets[..i].iter().find(|y| !y.intersects(x)) {
                return Err(Error::Validation(format!(
                    "bramble members {y:?} and {x:?} are disjoint"
                )));
            }
        }
        for p in s.feasible_partitions()? {
            if !p.blocks().iter().any(|b| self.sets.contains(b)) {
                return Err(Error::Validation(format!("partition {p:?} misses the bramble")));
            }
        }
        Ok(())
    }
}

/// Searches for a bramble avoiding `𝒮` as a choice of one non-simple block
/// per feasible partition, all chosen blocks pairwise intersecting.
///
/// With `𝒫 = ∅` the empty family is returned: it meets every feasible
/// partition vacuously.
pub fn find_bramble(s: &Scenario) -> Result<Option<Bramble>> {
    let mut ps = s.feasible_partitions()?;
    ps.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then_with(|| a.cmp(b)));
    let candidates: Vec<Vec<Subset>> = ps
        .iter()
        .map(|p| p.blocks().iter().copied().filter(|&b| !s.is_simple(b)).collect())
        .collect();
    let mut chosen: Vec<Subset> = Vec::new();
    if choose(&candidates, 0, &mut chosen) {
        let mut sets = chosen;
        sets.sort();
        sets.dedup();
        Ok(Some(Bramble { sets }))
    } else {
        Ok(None)
    }
}

fn compatible(x: Subset, chosen: &[Subset]) -> bool {
    chosen.iter().all(|c| c.intersects(x))
}

fn choose(candidates: &[Vec<Subset>], i: usize, chosen: &mut Vec<Subset>) -> bool {
    let Some(options) = candidates.get(i) else {
        return true;
    };
    // a block that contains an earlier choice adds no new constraint
    if let Some(&x) = options.iter().find(|x| chosen.iter().any(|c| c.is_subset_of(**x))) {
        chosen.push(x);
        let ok = choose(candidates, i + 1, chosen);
        if !ok {
            chosen.pop();
        }
        return ok;
    }
    for &x in options {
        if !compatible(x, chosen) {
            continue;
        }
        chosen.push(x);
        let alive = candidates[i + 1..]
            .iter()
            .all(|opts| opts.iter().any(|&y| compatible(y, chosen)));
        if alive && choose(candidates, i + 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Plays the bramble strategy against each captain play: after every
/// announced partition the robber moves to its bramble block. True iff no
/// play captures him.
pub fn bramble_escape_check(s: &Scenario, b: &Bramble, plays: &[Vec<Partition>]) -> Result<bool> {
    b.check(s)?;
    let opening = Partition::trivial(s.n());
    if !s.is_feasible(&opening) {
        return Ok(true);
    }
    for play in plays {
        let mut p = opening.clone();
        let mut x = match b.member_in(&p) {
            Some(x) => x,
            None => return Ok(false),
        };
        for next in play {
            if !s.is_feasible(next) {
                return Err(Error::IllegalMove(format!("{next:?} is not feasible")));
            }
            let Some(x2) = b.member_in(next) else {
                return Ok(false);
            };
            if !x2.is_subset_of(reachable(&p, next, x)) || s.is_simple(x2) {
                return Ok(false);
            }
            p = next.clone();
            x = x2;
        }
    }
    Ok(true)
}

/// The robber's bramble strategy depends only on the current partition, so
/// checking every single transition `P → P'` covers plays of every length.
pub fn exhaustive_escape_check(s: &Scenario, b: &Bramble) -> Result<bool> {
    let ps = s.feasible_partitions()?;
    let plays: Vec<Vec<Partition>> = ps
        .iter()
        .flat_map(|p| ps.iter().map(move |q| vec![p.clone(), q.clone()]))
        .collect();
    bramble_escape_check(s, b, &plays)
}
