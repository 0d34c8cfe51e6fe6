use super::*;
use crate::partition::enumerate_partitions;
use crate::scenario::{ExplicitScenario, ScenarioKind};

fn sub(e: &[usize]) -> Subset {
    Subset::from_elements(e.iter().copied())
}

fn part(n: usize, blocks: &[&[usize]]) -> Partition {
    Partition::from_blocks(n, blocks.iter().map(|b| sub(b))).unwrap()
}

fn explicit(n: usize, ps: Vec<Partition>, ss: Vec<Subset>) -> Scenario {
    ExplicitScenario::new(GroundSet::indexed(n).unwrap(), ps, ss)
        .unwrap()
        .to_scenario()
}

fn singletons(n: usize) -> Vec<Subset> {
    std::iter::once(Subset::EMPTY)
        .chain((0..n).map(Subset::singleton))
        .collect()
}

fn everything(n: usize) -> Scenario {
    explicit(n, enumerate_partitions(n, 10).unwrap().collect(), singletons(n))
}

#[test]
fn no_feasible_partition_means_robber() {
    let s = explicit(3, vec![], vec![]);
    for monotone in [false, true] {
        assert_eq!(solve(&s, monotone).unwrap().winner(), Player::Robber);
    }
    assert_eq!(find_bramble(&s).unwrap(), Some(Bramble { sets: vec![] }));
}

#[test]
fn uncovered_element_means_robber() {
    let all: Vec<Partition> = enumerate_partitions(3, 10).unwrap().collect();
    let s = explicit(3, all, vec![sub(&[0]), sub(&[1])]);
    assert_eq!(solve(&s, false).unwrap().winner(), Player::Robber);
    assert_eq!(solve(&s, true).unwrap().winner(), Player::Robber);
    assert!(find_bramble(&s).unwrap().is_some());
}

#[test]
fn discrete_move_wins_at_once() {
    let s = everything(3);
    for monotone in [false, true] {
        let sol = solve(&s, monotone).unwrap();
        assert_eq!(sol.winner(), Player::Captain);
        let strat = sol.strategy().unwrap();
        assert!(strat.replay(&s));
        assert_eq!(strat.nodes[0].next, Some(Partition::discrete(3)));
        assert_eq!(strat.leaves().count(), 3);
    }
    let strat = solve(&s, true).unwrap().strategy().unwrap();
    let d = strategy_to_tdec(&s, &strat).unwrap();
    assert_eq!(d.tree.len(), 4);
    assert_eq!(d.tree.internal_nodes(), vec![0]);
    assert_eq!(find_bramble(&s).unwrap(), None);
}

#[test]
fn only_trivial_partition_gives_trivial_bramble() {
    let s = explicit(2, vec![Partition::trivial(2)], vec![]);
    assert_eq!(solve(&s, false).unwrap().winner(), Player::Robber);
    let b = find_bramble(&s).unwrap().unwrap();
    assert_eq!(b.sets, vec![sub(&[0, 1])]);
    assert!(exhaustive_escape_check(&s, &b).unwrap());
}

#[test]
fn simple_ground_set_is_captured_at_the_opening() {
    let s = explicit(2, vec![Partition::trivial(2)], vec![sub(&[0, 1]), Subset::EMPTY]);
    let sol = solve(&s, true).unwrap();
    assert_eq!(sol.winner(), Player::Captain);
    let d = strategy_to_tdec(&s, &sol.strategy().unwrap()).unwrap();
    assert_eq!(d.tree.len(), 2);
    assert_eq!(
        d.labels.values().copied().collect::<Vec<_>>(),
        vec![sub(&[0, 1]), Subset::EMPTY]
    );

    let s = explicit(2, vec![Partition::trivial(2)], vec![sub(&[0, 1])]);
    let d = strategy_to_tdec(&s, &solve(&s, true).unwrap().strategy().unwrap()).unwrap();
    assert_eq!(d.tree.len(), 1);
}

#[test]
fn robber_crosses_merged_barriers() {
    let s = everything(3);
    let from = Position {
        partition: part(3, &[&[0], &[1, 2]]),
        robber: 0,
    };
    let next = part(3, &[&[0, 1], &[2]]);
    let moves = legal_robber_moves(&s, &from, &next).unwrap();
    let spots: Vec<usize> = moves.iter().map(|m| m.position.robber).collect();
    assert_eq!(spots, vec![0, 1, 2]);
    assert!(moves.iter().all(|m| m.captured == (m.position.robber == 2)));

    let stay = legal_robber_moves(&s, &from, &from.partition).unwrap();
    assert_eq!(stay.len(), 1);

    let bad = explicit(3, vec![Partition::trivial(3)], vec![]);
    let from = Position {
        partition: Partition::trivial(3),
        robber: 1,
    };
    assert!(legal_robber_moves(&bad, &from, &Partition::discrete(3)).is_err());
}

#[test]
fn disjoint_bramble_sets_are_rejected() {
    let s = explicit(2, vec![Partition::trivial(2)], vec![]);
    let b = Bramble {
        sets: vec![sub(&[0, 1]), sub(&[0]), sub(&[1])],
    };
    assert!(matches!(b.check(&s), Err(Error::Validation(_))));
    assert!(bramble_escape_check(&s, &b, &[]).is_err());
}

#[test]
fn monotone_strategy_grows_a_decomposition() {
    // captain must split {0,1,2,3} in two steps: only {A}, bipartitions
    // {01|23}, and their refinements by singletons inside one side are feasible
    let n = 4;
    let gens = vec![part(n, &[&[0, 1], &[2], &[3]]), part(n, &[&[0], &[1], &[2, 3]])];
    let ps = crate::scenario::up_closure(n, &gens, 10).unwrap();
    let base = explicit(n, ps.into_iter().collect(), singletons(n));
    let s = base.with_partitions(ScenarioKind::Explicit, {
        let b = base.clone();
        move |p| b.is_feasible(p)
    });
    let sol = solve(&s, true).unwrap();
    assert_eq!(sol.winner(), Player::Captain);
    let strat = sol.strategy().unwrap();
    assert!(strat.replay(&s));
    let d = strategy_to_tdec(&s, &strat).unwrap();
    assert!(validate_tdec(&s, &d).is_valid());
    assert_eq!(d.tree.leaves().len(), 4);
    assert_eq!(solve(&s, false).unwrap().winner(), Player::Captain);
}
