mod common;

use std::sync::OnceLock;

use grpiso::catalog::{self, catalog, find};
use grpiso::group::{direct_product, element_order};
use grpiso::wl::{
    initial_coloring, refine_step, stable_coloring, stable_joint, wl_distinguishes, Mode, Rounds,
    Version, WLConfig,
};
use grpiso::{Exec, GroupTable, Perm};
use proptest::prelude::*;

use common::rng;

fn small_groups() -> &'static [GroupTable] {
    static GROUPS: OnceLock<Vec<GroupTable>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        catalog()
            .into_iter()
            .filter(|e| e.order() <= 16)
            .map(|e| e.table().clone())
            .collect()
    })
}

fn version() -> impl Strategy<Value = Version> {
    prop_oneof![Just(Version::I), Just(Version::II)]
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Counting), Just(Mode::CountFree)]
}

#[test]
fn one_dimensional_colors_are_element_orders() {
    for g in small_groups() {
        let c = initial_coloring(g, &WLConfig::new(1, Version::II, Mode::Counting)).unwrap();
        for x in 0..g.n() {
            for y in 0..g.n() {
                let same_color = c.color(&[x]) == c.color(&[y]);
                assert_eq!(same_color, element_order(g, x) == element_order(g, y));
            }
        }
    }
}

#[test]
fn klein_needs_sixteen_rounds_at_most() {
    let v4 = catalog::abelian(&[2, 2]);
    let (_, rounds) = stable_coloring(&v4, &WLConfig::new(2, Version::I, Mode::Counting)).unwrap();
    assert!(rounds <= 16);
}

#[test]
fn counting_stabilizes_within_n_rounds() {
    for g in small_groups() {
        let (_, rounds) = stable_coloring(g, &WLConfig::new(1, Version::II, Mode::Counting)).unwrap();
        assert!(rounds <= g.n());
    }
}

#[test]
fn s3_squared_and_z6_s3_are_told_apart() {
    let a = find("S3xS3").unwrap();
    let b = direct_product(&catalog::cyclic(6), &catalog::symmetric(3));
    let d = wl_distinguishes(a.table(), &b, &WLConfig::new(3, Version::II, Mode::Counting)).unwrap();
    assert!(d.distinguished);
    assert!(d.witness_color.is_some());
}

#[test]
fn z4_and_klein_in_both_modes() {
    let z4 = catalog::cyclic(4);
    let v4 = catalog::abelian(&[2, 2]);
    for mode in [Mode::Counting, Mode::CountFree] {
        let config = WLConfig::new(2, Version::II, mode).with_rounds(Rounds::Max(0));
        let d = wl_distinguishes(&z4, &v4, &config).unwrap();
        assert!(d.distinguished);
        assert_eq!(d.round, 0);
    }
}

#[test]
fn parallel_and_sequential_colorings_agree() {
    let g = find("Z2xA4").unwrap();
    let seq = WLConfig::new(2, Version::II, Mode::Counting).with_exec(Exec::Sequential);
    let par = seq.with_exec(Exec::Parallel);
    let (a, ra) = stable_coloring(g.table(), &seq).unwrap();
    let (b, rb) = stable_coloring(g.table(), &par).unwrap();
    assert_eq!(ra, rb);
    assert_eq!(a.colors(), b.colors());
}

fn group_perm() -> impl Strategy<Value = (GroupTable, Perm)> {
    (0..small_groups().len(), any::<u64>()).prop_map(|(i, seed)| {
        let g = small_groups()[i].clone();
        let p = Perm::random(g.n(), &mut rng(seed));
        (g, p)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn each_round_refines_the_last((g, _) in group_perm(), k in 1usize..=2, v in version(), m in mode()) {
        let mut c = initial_coloring(&g, &WLConfig::new(k, v, m)).unwrap();
        for _ in 0..4 {
            let next = refine_step(&c, m);
            prop_assert!(next.refines(&c));
            c = next;
        }
    }

    #[test]
    fn relabeling_is_never_distinguished((g, p) in group_perm(), k in 1usize..=2, v in version(), m in mode()) {
        let h = g.relabel(&p);
        let d = wl_distinguishes(&g, &h, &WLConfig::new(k, v, m)).unwrap();
        prop_assert!(!d.distinguished);
        let (a, _) = stable_coloring(&g, &WLConfig::new(k, v, m)).unwrap();
        let (b, _) = stable_coloring(&h, &WLConfig::new(k, v, m)).unwrap();
        prop_assert_eq!(a.histogram(), b.histogram());
        // colors are carried along the relabeling
        let mut t = vec![0; k];
        let mut pt = vec![0; k];
        for idx in 0..g.n().pow(k as u32) {
            grpiso::wl::tuple_at(g.n(), k, idx, &mut t);
            for (dst, &x) in pt.iter_mut().zip(&t) {
                *dst = p.apply(x);
            }
            prop_assert_eq!(a.color(&t), b.color(&pt));
        }
    }

    #[test]
    fn counting_refines_count_free((g, _) in group_perm(), k in 1usize..=2, v in version()) {
        let start = initial_coloring(&g, &WLConfig::new(k, v, Mode::Counting)).unwrap();
        let mut counting = start.clone();
        let mut free = start;
        for _ in 0..3 {
            counting = refine_step(&counting, Mode::Counting);
            free = refine_step(&free, Mode::CountFree);
            prop_assert!(counting.refines(&free));
        }
    }

    #[test]
    fn version_two_refines_version_one((g, _) in group_perm(), k in 1usize..=2, m in mode()) {
        let one = initial_coloring(&g, &WLConfig::new(k, Version::I, m)).unwrap();
        let two = initial_coloring(&g, &WLConfig::new(k, Version::II, m)).unwrap();
        prop_assert!(two.refines(&one));
        let (one, _) = stable_coloring(&g, &WLConfig::new(k, Version::I, m)).unwrap();
        let (two, _) = stable_coloring(&g, &WLConfig::new(k, Version::II, m)).unwrap();
        prop_assert!(two.refines(&one));
    }

    #[test]
    fn stable_coloring_is_a_fixed_point((g, _) in group_perm(), k in 1usize..=2, v in version(), m in mode()) {
        let (c, _) = stable_coloring(&g, &WLConfig::new(k, v, m)).unwrap();
        prop_assert!(refine_step(&c, m).same_partition(&c));
    }

    #[test]
    fn joint_coloring_matches_separate_partitions((g, p) in group_perm(), v in version(), m in mode()) {
        let h = g.relabel(&p);
        let (joint, _) = stable_joint(&[&g, &h], &WLConfig::new(2, v, m)).unwrap();
        let (alone, _) = stable_coloring(&g, &WLConfig::new(2, v, m)).unwrap();
        prop_assert!(joint[0].same_partition(&alone));
    }
}
