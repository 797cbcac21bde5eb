//! Direct complements of normal subgroups and the split-off of cyclic
//! direct factors.

use crate::decompose::abelian::abelian_basis;
use crate::error::{Error, Result};
use crate::group::{
    center, centralizer, closure, commutator_subgroup, is_normal, join, prime_of_power, quotient,
    subgroup_table, SubgroupSet,
};
use crate::table::GroupTable;

/// Whether `G = A x B` for normal `a` (checked by the caller) and subgroup
/// `b`.
fn is_direct_complement(g: &GroupTable, a: &SubgroupSet, b: &SubgroupSet) -> bool {
    a.len() * b.len() == g.n()
        && a.intersection(b).is_trivial()
        && a.iter().all(|x| b.iter().all(|y| g.mul(x, y) == g.mul(y, x)))
}

/// The complement when `G/A` is Abelian: central lifts of a basis of `G/A`
/// with exactly the coset orders.
fn divide_abelian_quotient(g: &GroupTable, a: &SubgroupSet) -> Option<SubgroupSet> {
    let q = quotient(g, a).expect("caller checked normality");
    let basis = abelian_basis(&q.group).expect("quotient is Abelian");
    let z = center(g);
    let mut reps = Vec::with_capacity(basis.len());
    for c in basis {
        let m = crate::group::element_order(&q.group, c);
        let rep = z
            .iter()
            .find(|&x| q.coset_of[x] == c && crate::group::element_order(g, x) == m)?;
        reps.push(rep);
    }
    let b = closure(g, &reps);
    is_direct_complement(g, a, &b).then_some(b)
}

/// Some `B` with `G = A x B`, or `None` if `a` has no direct complement.
pub fn group_division(g: &GroupTable, a: &SubgroupSet) -> Result<Option<SubgroupSet>> {
    if !is_normal(g, a) {
        return Err(Error::NotNormal);
    }
    if a.is_whole() {
        return Ok(Some(SubgroupSet::trivial(g)));
    }
    if a.is_trivial() {
        return Ok(Some(SubgroupSet::whole(g)));
    }
    let q = quotient(g, a)?;
    if q.group.is_abelian() {
        return Ok(divide_abelian_quotient(g, a));
    }
    let whole = SubgroupSet::whole(g);
    let ca = centralizer(g, &a.elements());
    let t = commutator_subgroup(g, &ca, &whole);
    if !a.intersection(&t).is_trivial() || !is_normal(g, &t) {
        return Ok(None);
    }
    let qt = quotient(g, &t)?;
    let at = SubgroupSet::from_elements(qt.group.n(), a.iter().map(|x| qt.coset_of[x]));
    let at = closure(&qt.group, &at.elements());
    if !quotient(&qt.group, &at)?.group.is_abelian() {
        return Ok(None);
    }
    let Some(bq) = divide_abelian_quotient(&qt.group, &at) else {
        return Ok(None);
    };
    let lifts: Vec<usize> = crate::group::subgroup_generators(&qt.group, &bq)
        .into_iter()
        .map(|c| qt.reps[c])
        .collect();
    let c = join(g, &t, &closure(g, &lifts));
    Ok(is_direct_complement(g, a, &c).then_some(c))
}

/// `G = A x <b_1> x ... x <b_k>` with `A` free of Abelian direct factors and
/// each `b_i` of prime-power order.
#[derive(Clone, Debug)]
pub struct SemiAbelian {
    pub a: SubgroupSet,
    pub bs: Vec<usize>,
}

/// Splits cyclic direct factors off `s` (a subgroup of `g`) one at a time.
/// A cyclic direct factor is central, so candidates are central elements of
/// prime-power order, tried in ascending index.
pub fn semi_abelian_decomposition_of(g: &GroupTable, s: &SubgroupSet) -> SemiAbelian {
    let mut cur = s.clone();
    let mut bs = Vec::new();
    'outer: loop {
        let sub = subgroup_table(g, &cur);
        let h = &sub.group;
        if h.is_abelian() {
            let basis = abelian_basis(h).expect("checked Abelian");
            bs.extend(basis.into_iter().map(|x| sub.to_global(x)));
            return SemiAbelian {
                a: SubgroupSet::trivial(g),
                bs,
            };
        }
        let z = center(h);
        let mut tried = SubgroupSet::trivial(h);
        for b in z.iter() {
            if tried.contains(b) {
                continue;
            }
            let cb = closure(h, &[b]);
            if prime_of_power(cb.len()).is_none() {
                continue;
            }
            if let Some(c) = group_division(h, &cb).expect("central subgroups are normal") {
                bs.push(sub.to_global(b));
                cur = sub.lift(&c);
                continue 'outer;
            }
            tried = SubgroupSet::from_elements(h.n(), tried.iter().chain(cb.iter().filter(|&x| {
                crate::group::element_order(h, x) == cb.len()
            })));
        }
        return SemiAbelian { a: cur, bs };
    }
}

pub fn semi_abelian_decomposition(g: &GroupTable) -> SemiAbelian {
    semi_abelian_decomposition_of(g, &SubgroupSet::whole(g))
}
