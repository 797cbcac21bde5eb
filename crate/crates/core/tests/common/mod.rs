#![allow(dead_code)]

use std::time::Duration;

use grpiso::catalog::BaseGroup;
use grpiso::group::subgroup_table;
use grpiso::oracle::brute_iso_group;
use grpiso::{GroupTable, Perm, SubgroupSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const BUDGET: Duration = Duration::from_secs(30);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn relabeled(g: &GroupTable, rng: &mut ChaCha8Rng) -> GroupTable {
    g.relabel(&Perm::random(g.n(), rng))
}

pub fn iso(g: &GroupTable, h: &GroupTable) -> bool {
    brute_iso_group(g, h, BUDGET)
        .expect("oracle within budget")
        .is_some()
}

/// Matches decomposed factors against the expected indecomposable factors
/// one by one, by order and brute-force isomorphism.
pub fn factors_match(g: &GroupTable, factors: &[SubgroupSet], expected: &[BaseGroup]) -> bool {
    let mut want: Vec<(usize, GroupTable)> = expected
        .iter()
        .filter(|b| b.order() > 1)
        .map(|b| (b.order(), b.build()))
        .collect();
    if want.len() != factors.len() {
        return false;
    }
    for f in factors {
        let sub = subgroup_table(g, f).group;
        let Some(i) = want
            .iter()
            .position(|(o, h)| *o == sub.n() && iso(&sub, h))
        else {
            return false;
        };
        want.swap_remove(i);
    }
    true
}
