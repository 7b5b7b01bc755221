mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use hnpfact::blocks::{self, BlockMonoid, GroupSubset};
use hnpfact::factorize::{self, AtomicMonoid, Catenary};
use hnpfact::towers::comb_cover_prefixes;
use hnpfact::FinAbGroup;
use proptest::prelude::*;

use common::*;

fn block_monoid(orders: &[u32]) -> BlockMonoid {
    let orders: Vec<i64> = orders.iter().map(|&n| n as i64).collect();
    let g = FinAbGroup::new(&orders).unwrap();
    BlockMonoid::new(Arc::new(GroupSubset::nonzero(g))).unwrap()
}

#[test]
fn atoms_match_oracle_on_small_groups() {
    for orders in [
        vec![2],
        vec![5],
        vec![6],
        vec![2, 2],
        vec![2, 4],
        vec![3, 3],
    ] {
        let m = block_monoid(&orders);
        let (d, oracle) = minimal_zero_sums(&orders);
        let ours: BTreeSet<Vec<u32>> = m.atoms().iter().cloned().collect();
        assert_eq!(ours, oracle, "{orders:?}");
        assert_eq!(blocks::davenport(m.subset().group()), d, "{orders:?}");
    }
}

#[test]
fn cyclic_davenport_is_the_order() {
    for n in 1..=9u32 {
        assert_eq!(minimal_zero_sums(&[n]).0, n);
    }
}

#[test]
fn naive_catenary_small_cases() {
    assert_eq!(naive_catenary(&[vec![0, 0, 0], vec![1, 2]]), 3);
    assert_eq!(naive_catenary(&[vec![0]]), 0);
    assert_eq!(multiset_distance(&[0, 1, 1], &[1, 2]), 2);
}

fn group_strategy() -> impl Strategy<Value = Vec<u32>> {
    prop_oneof![
        (3u32..=6).prop_map(|n| vec![n]),
        Just(vec![2, 2]),
        Just(vec![2, 3]),
        Just(vec![2, 4]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lengths_and_catenary_match_splitter(
        orders in group_strategy(),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..5),
    ) {
        let m = block_monoid(&orders);
        let atoms = m.atoms();
        let mut a = vec![0u32; m.rank()];
        for p in &picks {
            for (x, u) in a.iter_mut().zip(&atoms[p.index(atoms.len())]) {
                *x += u;
            }
        }
        let naive = naive_factorizations(atoms, &a);
        let zs = factorize::factorizations(&m, &a).unwrap();
        prop_assert_eq!(zs.len(), naive.len());
        let lengths: BTreeSet<u32> = naive.iter().map(|z| z.len() as u32).collect();
        let ours = factorize::length_set(&m, &a).unwrap();
        prop_assert_eq!(ours.as_set(), &lengths);
        prop_assert_eq!(
            factorize::catenary(&m, &a).unwrap(),
            Catenary::Finite(naive_catenary(&naive))
        );
    }

    #[test]
    fn comb_agrees_with_brute_force(
        n in 1u32..=6,
        raw in prop::collection::vec((0i64..6, 0u32..=6), 1..=3),
    ) {
        let progs: Vec<(i64, u32)> = raw.into_iter().map(|(a, k)| (a, k.min(n))).collect();
        let covering = covers(n, &progs);
        prop_assert_eq!(brute_prefixes(n, &progs).is_some(), covering);
        match comb_cover_prefixes(n, &progs) {
            Ok(m) => {
                prop_assert!(covering);
                prop_assert!(partitions(n, &progs, &m));
                prop_assert_eq!(m.iter().sum::<u32>(), n);
            }
            Err(_) => prop_assert!(!covering),
        }
    }
}
