use std::collections::BTreeSet;

use braidfan::posets::{
    all_pairs, all_partitions, all_perms, chain_element, chain_of, e_set, fubini, gamma, inverse, join, meet,
    pair_of_chain, OrderedSetPartition, PermPair,
};
use braidfan::rat::sub;

/// `s <= t`: `t` merges consecutive blocks of `s`.
fn below(s: &OrderedSetPartition, t: &OrderedSetPartition) -> bool {
    (1..=s.n).all(|x| (1..=s.n).all(|y| s.block_of(x) > s.block_of(y) || t.block_of(x) <= t.block_of(y)))
}

fn bar_set(t: &OrderedSetPartition, order: &[usize]) -> BTreeSet<usize> {
    (1..order.len()).filter(|&i| t.block_of(order[i - 1]) != t.block_of(order[i])).collect()
}

#[test]
fn chains_and_pairs_are_inverse() {
    for d in 1..=3 {
        for p in all_pairs(d) {
            let c = chain_of(&p);
            assert_eq!(pair_of_chain(&c).unwrap(), p);
            assert_eq!(chain_of(&pair_of_chain(&c).unwrap()), c);
        }
    }
}

#[test]
fn chain_steps_add_gamma_rays() {
    for d in 1..=3 {
        for p in all_pairs(d) {
            let tinv = inverse(&p.tau);
            for r in 1..=d {
                let diff = sub(&chain_element(&p, r - 1).raw(), &chain_element(&p, r).raw());
                let (raw, _) = e_set(&gamma(&p.pi, tinv[r - 1]).unwrap()).unwrap();
                assert_eq!(diff, raw, "{p:?} r={r}");
            }
        }
    }
}

#[test]
fn partition_counts_match_fubini() {
    let by_recurrence = [1u128, 1, 3, 13, 75, 541, 4683];
    for d in 0..=5 {
        assert_eq!(all_partitions(d, false).len() as u128, fubini(d + 1));
        assert_eq!(fubini(d + 1), by_recurrence[d + 1]);
    }
}

#[test]
fn intervals_are_boolean() {
    for d in 1..=3 {
        let all = all_partitions(d, false);
        for pi in all_perms(d + 1) {
            let order = inverse(&pi);
            let bottom = OrderedSetPartition::singletons(&order);
            let interval: Vec<&OrderedSetPartition> = all.iter().filter(|t| below(&bottom, t)).collect();
            assert_eq!(interval.len(), 1 << d);
            let bars: Vec<BTreeSet<usize>> = interval.iter().map(|t| bar_set(t, &order)).collect();
            assert_eq!(bars.iter().collect::<BTreeSet<_>>().len(), 1 << d);
            for (i, s) in interval.iter().enumerate() {
                for (j, t) in interval.iter().enumerate() {
                    assert_eq!(below(s, t), bars[j].is_subset(&bars[i]));
                    let up: BTreeSet<usize> = bars[i].intersection(&bars[j]).copied().collect();
                    let down: BTreeSet<usize> = bars[i].union(&bars[j]).copied().collect();
                    assert_eq!(bar_set(&join(s, t).unwrap(), &order), up);
                    assert_eq!(bar_set(&meet(s, t).unwrap(), &order), down);
                }
            }
        }
    }
}

#[test]
fn incomparable_intervals_are_rejected() {
    let s = OrderedSetPartition::parse("1|2|3", None).unwrap();
    let t = OrderedSetPartition::parse("2|1|3", None).unwrap();
    assert!(join(&s, &t).is_err());
}

#[test]
fn worked_chain() {
    let p = PermPair::new(vec![3, 2, 4, 1], vec![2, 3, 1]).unwrap();
    let labels: Vec<String> = chain_of(&p).elements.iter().map(|t| t.to_string()).collect();
    let expected: Vec<String> = ["4|2|1|3", "4|2|13", "24|13", "1234"]
        .iter()
        .map(|s| OrderedSetPartition::parse(s, None).unwrap().to_string())
        .collect();
    assert_eq!(labels, expected);
}
