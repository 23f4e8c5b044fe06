use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::enumerate::canonical_ops_up_to;
use crate::tree::{enumerate_trees, tree_to_op};

fn op(s: &str) -> PathOp {
    PathOp::parse(s).unwrap()
}

#[test]
fn level_one_small() {
    let t = generate(1, 4).unwrap();
    assert_eq!(t.contains(&op("12"), false), Membership::Member);
    assert_eq!(
        t.witness(&op("12")),
        Some(Witness::Join {
            lhs: "1".into(),
            lhs_cuts: CutTuple::empty(),
            rhs: "1".into(),
            rhs_cuts: CutTuple::empty(),
        })
    );
    assert_eq!(t.contains(&op("12345"), false), Membership::Unknown);
}

#[test]
fn level_two_examples() {
    let t = generate(2, 9).unwrap();
    assert!(t.contains(&op("12|21"), false).is_member());
    assert!(t.contains(&op("21|12"), false).is_member());
    assert_eq!(t.contains(&op("11"), false), Membership::NotMember);
    assert_eq!(t.contains(&op("1|1|1|323"), false), Membership::NotMember);
    assert!(t.contains(&PathOp::eta(2).unwrap(), false).is_member());
    for n in 0..=3 {
        assert!(t.contains(&PathOp::identity(n), false).is_member());
    }
}

#[test]
fn errors() {
    assert_eq!(generate(0, 3), Err(HatError::LevelTooSmall));
    assert_eq!(generate(4, 2), Err(HatError::BudgetTooSmall { m: 4, budget: 2, needed: 3 }));
}

#[test]
fn level_one_is_concatenation_of_identities() {
    // blocks `c|c|…|c` have odd length, so representatives of length L are
    // compositions of L into odd parts
    let t = generate(1, 9).unwrap();
    let mut by_len = vec![0usize; 10];
    for r in t.representatives() {
        by_len[r.len()] += 1;
    }
    let mut fib = vec![1usize, 1];
    for n in 2..10 {
        fib.push(fib[n - 1] + fib[n - 2]);
    }
    assert_eq!(by_len[0], 1);
    for l in 1..10 {
        assert_eq!(by_len[l], fib[l - 1], "length {l}");
    }
}

#[test]
fn replay_and_filtration() {
    for m in 1..=3 {
        let t = generate(m, 7).unwrap();
        for (rep, orbit) in t.orbits() {
            assert_eq!(t.replay(&orbit.carrier).unwrap(), orbit.carrier);
            assert_eq!(t.replay(rep).unwrap(), *rep);
            assert!(rep.in_filtration(m), "{rep} at m={m}");
        }
        let mut n = 0;
        t.for_each_member(|o| {
            n += 1;
            assert!(t.contains(o, false).is_member());
        });
        assert_eq!(n, t.entry_count());
    }
}

#[test]
fn permuted_witnesses_replay() {
    let t = generate(2, 7).unwrap();
    let x = op("21|12");
    assert!(matches!(t.witness(&x), Some(Witness::Perm { .. })));
    assert_eq!(t.replay(&x).unwrap(), x);
}

#[test]
fn budget_monotone_and_stable() {
    for m in 1..=3 {
        let small: BTreeSet<PathOp> = generate(m, 6).unwrap().representatives().cloned().collect();
        let mut big = generate(m, 7).unwrap();
        let bigset: BTreeSet<PathOp> = big.representatives().cloned().collect();
        assert!(small.is_subset(&bigset));
        assert_eq!(big.close(), 0);
    }
}

#[test]
fn counts_have_single_nullary_row() {
    let t = generate(3, 7).unwrap();
    let rows = t.counts();
    let nullary: Vec<&CountRow> = rows.iter().filter(|r| r.colours == 0).collect();
    assert_eq!(nullary.len(), 1);
    assert_eq!(nullary[0].count, 1);
    assert_eq!(rows.iter().map(|r| r.count).sum::<usize>(), t.entry_count());
}

#[test]
fn level_two_is_white_trees() {
    let t = generate(2, 8).unwrap();
    let reps: BTreeSet<PathOp> = t.representatives().cloned().collect();
    let white: BTreeSet<PathOp> =
        enumerate_trees(8, false).iter().filter(|t| t.is_all_white()).map(|t| tree_to_op(t).unwrap()).collect();
    assert_eq!(reps, white);
}

#[test]
fn join_closure_agrees_with_tables() {
    for m in 1..=3 {
        let t = generate(m, 9).unwrap();
        assert_eq!(t.stats().gamma_only, 0);
        let oracle = JoinClosure::new(m).unwrap();
        for z in canonical_ops_up_to(7) {
            assert_eq!(oracle.membership(&z), t.contains(&z, true), "{z} at m={m}");
        }
    }
}

#[test]
fn witness_text_round_trips() {
    let t = generate(2, 7).unwrap();
    let mut n = 0;
    t.for_each_member(|o| {
        let w = t.witness(o).unwrap();
        let text = alloc::format!("{w}");
        assert_eq!(text.parse::<Witness>().unwrap(), w, "{text}");
        n += 1;
    });
    assert!(n > 10);
    assert_eq!("eta".parse::<Witness>().unwrap(), Witness::Eta);
    assert!("join [1] (1".parse::<Witness>().is_err());
    assert!("gamma".parse::<Witness>().is_err());
    for o in [Origin::Seed, Origin::Join, Origin::Gamma] {
        assert_eq!(Origin::from_name(o.as_str()), Some(o));
    }
}
