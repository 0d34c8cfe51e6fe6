use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, Partition};
use crate::scenario::{check_weak_submodularity, ExplicitScenario};
use crate::subset::{GroundSet, Subset};

/// Largest ground set enumerated exhaustively.
pub const MAX_EXHAUSTIVE_SCENARIO_GROUND: usize = 4;

/// Default number of sampled scenarios per ground size.
pub const DEFAULT_SAMPLES: usize = 200;

pub const DEFAULT_SEED: u64 = 20_100_531;

/// A generated scenario with its position in the corpus and where it came
/// from.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub index: usize,
    pub origin: String,
    pub scenario: ExplicitScenario,
}

fn bipartition(n: usize, x: Subset) -> Partition {
    Partition::bipartition(n, x)
}

/// All pairs `(𝒫, 𝒮)` on `n ≤ 4` elements with `𝒫` closed under
/// coarsening, `∅ ∈ 𝒮`, `⋃𝒮 = A`, and SC2 and SC3 holding. Weak
/// submodularity is not imposed here.
pub fn exhaustive_scenarios(n: usize) -> Result<Vec<ExplicitScenario>> {
    if n > MAX_EXHAUSTIVE_SCENARIO_GROUND {
        return Err(Error::LimitExceeded {
            n,
            limit: MAX_EXHAUSTIVE_SCENARIO_GROUND,
        });
    }
    let ground = GroundSet::indexed(n)?;
    let parts: Vec<Partition> = enumerate_partitions(n, n)?.collect();
    let m = parts.len();
    let up: Vec<u32> = parts
        .iter()
        .map(|p| {
            (0..m)
                .filter(|&j| parts[j].is_coarser_than(p).unwrap_or(false))
                .fold(0u32, |acc, j| acc | 1 << j)
        })
        .collect();
    let trivial = parts
        .iter()
        .position(Partition::is_trivial)
        .expect("{A} is a partition");
    let full = Subset::full(n);
    let mut out = Vec::new();
    for mask in 0u32..1 << m {
        if mask >> trivial & 1 == 0 || (0..m).any(|i| mask >> i & 1 == 1 && up[i] & mask != up[i]) {
            continue;
        }
        let feasible: Vec<&Partition> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| &parts[i]).collect();
        let candidates: Vec<Subset> = Subset::all(n)
            .filter(|&x| !x.is_empty() && feasible.contains(&&bipartition(n, x)))
            .collect();
        let blocks: BTreeSet<Subset> = feasible.iter().flat_map(|p| p.blocks().iter().copied()).collect();
        for choice in 0u32..1 << candidates.len() {
            let simples: Vec<Subset> = std::iter::once(Subset::EMPTY)
                .chain(
                    (0..candidates.len())
                        .filter(|i| choice >> i & 1 == 1)
                        .map(|i| candidates[i]),
                )
                .collect();
            if simples.iter().fold(Subset::EMPTY, |a, &b| a.union(b)) != full {
                continue;
            }
            let sc2 = blocks
                .iter()
                .all(|&b| simples.contains(&b) || !simples.iter().any(|&s| b.is_subset_of(s)));
            if sc2 {
                out.push(ExplicitScenario::new(
                    ground.clone(),
                    feasible.iter().map(|&p| p.clone()),
                    simples,
                )?);
            }
        }
    }
    Ok(out)
}

/// Keeps the scenarios whose partition family is weakly submodular.
pub fn weakly_submodular(scenarios: Vec<ExplicitScenario>) -> Result<Vec<ExplicitScenario>> {
    let verdicts: Vec<Result<bool>> = scenarios
        .par_iter()
        .map(|s| Ok(check_weak_submodularity(&s.to_scenario())?.holds))
        .collect();
    let mut out = Vec::new();
    for (s, v) in scenarios.into_iter().zip(verdicts) {
        if v? {
            out.push(s);
        }
    }
    Ok(out)
}

fn random_partition(n: usize, rng: &mut ChaCha8Rng) -> Partition {
    let mut labels = vec![0usize; n];
    let mut top = 0;
    for l in labels.iter_mut().skip(1) {
        *l = rng.gen_range(0..=top + 1);
        top = top.max(*l);
    }
    let mut blocks = vec![Subset::EMPTY; top + 1];
    for (i, &l) in labels.iter().enumerate() {
        blocks[l] = blocks[l].insert(i);
    }
    Partition::from_blocks(n, blocks).expect("labels give a partition")
}

/// One random scenario: random simple sets covering `A` and random
/// generators, closed under SC1–SC3.
fn random_scenario(n: usize, ground: &GroundSet, all: &[Partition], rng: &mut ChaCha8Rng) -> Result<ExplicitScenario> {
    let full = Subset::full(n);
    let mut simples: BTreeSet<Subset> = BTreeSet::from([Subset::EMPTY]);
    let mut covered = Subset::EMPTY;
    while covered != full {
        let size = rng.gen_range(1..=n.min(3));
        let mut elems: Vec<usize> = (0..n).collect();
        elems.shuffle(rng);
        let x = Subset::from_elements(elems.into_iter().take(size));
        simples.insert(x);
        covered = covered.union(x);
    }
    let mut generators: Vec<Partition> = (0..rng.gen_range(0..=3)).map(|_| random_partition(n, rng)).collect();
    loop {
        generators.extend(simples.iter().map(|&x| bipartition(n, x)));
        let feasible: Vec<&Partition> = all
            .iter()
            .filter(|q| generators.iter().any(|g| q.is_coarser_than(g).unwrap_or(false)))
            .collect();
        let missing: Vec<Subset> = feasible
            .iter()
            .flat_map(|p| p.blocks().iter().copied())
            .filter(|b| !simples.contains(b) && simples.iter().any(|s| b.is_subset_of(*s)))
            .collect();
        if missing.is_empty() {
            return ExplicitScenario::new(ground.clone(), feasible.into_iter().cloned(), simples);
        }
        simples.extend(missing);
    }
}

/// `count` distinct weakly submodular scenarios on `n` elements with
/// `∅ ∈ 𝒮` and `⋃𝒮 = A`, drawn with a fixed seed.
pub fn sampled_scenarios(n: usize, count: usize, seed: u64) -> Result<Vec<ExplicitScenario>> {
    let ground = GroundSet::indexed(n)?;
    let all: Vec<Partition> = enumerate_partitions(n, 8)?.collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: HashSet<(Vec<Partition>, Vec<Subset>)> = HashSet::new();
    let mut out = Vec::new();
    let max_attempts = 200 * count.max(1);
    for _ in 0..max_attempts {
        if out.len() == count {
            break;
        }
        let s = random_scenario(n, &ground, &all, &mut rng)?;
        let key = (
            s.partitions.iter().cloned().collect::<Vec<_>>(),
            s.simples.iter().copied().collect::<Vec<_>>(),
        );
        if seen.contains(&key) {
            continue;
        }
        seen.insert(key);
        if check_weak_submodularity(&s.to_scenario())?.holds {
            out.push(s);
        }
    }
    if out.len() < count {
        return Err(Error::Validation(format!(
            "only {} of {count} weakly submodular scenarios found",
            out.len()
        )));
    }
    Ok(out)
}

/// The weakly submodular corpus: every scenario on `1..=min(max_n, 4)`
/// elements and, when `max_n ≥ 5`, `samples` seeded draws on five elements.
pub fn corpus(max_n: usize, samples: usize, seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for n in 1..=max_n.min(MAX_EXHAUSTIVE_SCENARIO_GROUND) {
        for s in weakly_submodular(exhaustive_scenarios(n)?)? {
            out.push((format!("exhaustive n={n}"), s));
        }
    }
    if max_n >= 5 && samples > 0 {
        for s in sampled_scenarios(5, samples, seed)? {
            out.push((format!("sampled n=5 seed={seed}"), s));
        }
    }
    Ok(out
        .into_iter()
        .enumerate()
        .map(|(index, (origin, scenario))| CorpusEntry {
            index,
            origin,
            scenario,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::check_axioms;

    #[test]
    fn small_counts() {
        // n = 1: 𝒫 = {{A}}, 𝒮 ∈ {{∅, A}}
        assert_eq!(exhaustive_scenarios(1).unwrap().len(), 1);
        for s in exhaustive_scenarios(3).unwrap() {
            let sc = s.to_scenario();
            assert!(check_axioms(&sc).unwrap().holds());
            assert_eq!(sc.simple_union(), sc.full());
        }
    }

    #[test]
    fn samples_are_scenarios() {
        let a = sampled_scenarios(5, 10, 7).unwrap();
        let b = sampled_scenarios(5, 10, 7).unwrap();
        assert_eq!(a, b);
        for s in &a {
            let sc = s.to_scenario();
            assert!(check_axioms(&sc).unwrap().holds());
            assert!(check_weak_submodularity(&sc).unwrap().holds);
            assert_eq!(sc.simple_union(), sc.full());
        }
    }
}
