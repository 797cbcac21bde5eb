//! Subgroups as bitsets and the elementary group computations the rest of
//! the crate is built on.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::table::{group_from_associative, validate_quasigroup, GroupTable, MulTable};

/// A subgroup of some ambient group, stored as a membership bitset.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubgroupSet {
    members: FixedBitSet,
}

impl SubgroupSet {
    pub fn trivial(g: &GroupTable) -> Self {
        Self::from_elements(g.n(), [g.identity()])
    }

    pub fn whole(g: &GroupTable) -> Self {
        let mut members = FixedBitSet::with_capacity(g.n());
        members.insert_range(..);
        SubgroupSet { members }
    }

    /// Wraps a set known to be a subgroup; no closure check.
    pub(crate) fn from_elements(n: usize, elems: impl IntoIterator<Item = usize>) -> Self {
        let mut members = FixedBitSet::with_capacity(n);
        for x in elems {
            members.insert(x);
        }
        SubgroupSet { members }
    }

    pub fn ambient_order(&self) -> usize {
        self.members.len()
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.len() == self.members.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn elements(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &SubgroupSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &SubgroupSet) -> SubgroupSet {
        SubgroupSet {
            members: &self.members & &other.members,
        }
    }

    pub(crate) fn bits(&self) -> &FixedBitSet {
        &self.members
    }
}

/// Breadth-first closure from the identity under right multiplication by
/// `gens`, in first-visit order.
fn bfs_closure(g: &GroupTable, gens: &[usize], seen: &mut FixedBitSet) -> Vec<usize> {
    seen.clear();
    let e = g.identity();
    seen.insert(e);
    let mut order = vec![e];
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !seen.put(y) {
                order.push(y);
            }
        }
    }
    order
}

/// An irredundant generating list for `<gens>`: elements of `gens` taken in
/// the given order, skipping those already generated.
pub fn reduce_generators(g: &GroupTable, gens: &[usize]) -> Vec<usize> {
    let mut seen = FixedBitSet::with_capacity(g.n());
    bfs_closure(g, &[], &mut seen);
    let mut reduced = Vec::new();
    for &x in gens {
        if !seen.contains(x) {
            reduced.push(x);
            bfs_closure(g, &reduced, &mut seen);
        }
    }
    reduced
}

/// The subgroup generated by `gens`.
pub fn closure(g: &GroupTable, gens: &[usize]) -> SubgroupSet {
    let reduced = reduce_generators(g, gens);
    let mut seen = FixedBitSet::with_capacity(g.n());
    bfs_closure(g, &reduced, &mut seen);
    SubgroupSet { members: seen }
}

/// Elements of `<gens>` in breadth-first word order (shortest word first,
/// generators expanded in the order given).
pub fn word_order(g: &GroupTable, gens: &[usize]) -> Vec<usize> {
    let mut seen = FixedBitSet::with_capacity(g.n());
    bfs_closure(g, gens, &mut seen)
}

/// An irredundant generating list of a subgroup, scanning members upward.
pub fn subgroup_generators(g: &GroupTable, s: &SubgroupSet) -> Vec<usize> {
    reduce_generators(g, &s.elements())
}

/// The subgroup generated by two subgroups.
pub fn join(g: &GroupTable, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
    let mut gens = subgroup_generators(g, a);
    gens.extend(subgroup_generators(g, b));
    closure(g, &gens)
}

pub fn centralizer(g: &GroupTable, s: &[usize]) -> SubgroupSet {
    let gens = reduce_generators(g, s);
    SubgroupSet::from_elements(
        g.n(),
        (0..g.n()).filter(|&x| gens.iter().all(|&y| g.mul(x, y) == g.mul(y, x))),
    )
}

pub fn center(g: &GroupTable) -> SubgroupSet {
    let all: Vec<usize> = (0..g.n()).collect();
    centralizer(g, &all)
}

/// `[X, Y]`, the subgroup generated by all commutators `[x, y]`.
pub fn commutator_subgroup(g: &GroupTable, x: &SubgroupSet, y: &SubgroupSet) -> SubgroupSet {
    let mut comms = FixedBitSet::with_capacity(g.n());
    for a in x.iter() {
        for b in y.iter() {
            comms.insert(g.commutator(a, b));
        }
    }
    let comms: Vec<usize> = comms.ones().collect();
    closure(g, &comms)
}

pub fn derived_subgroup(g: &GroupTable) -> SubgroupSet {
    let whole = SubgroupSet::whole(g);
    commutator_subgroup(g, &whole, &whole)
}

/// Conjugacy classes, each ascending, ordered by least element.
pub fn conjugacy_classes(g: &GroupTable) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut assigned = FixedBitSet::with_capacity(n);
    let mut classes = Vec::new();
    for x in 0..n {
        if assigned.contains(x) {
            continue;
        }
        let mut class = FixedBitSet::with_capacity(n);
        for h in 0..n {
            class.insert(g.conj(h, x));
        }
        assigned.union_with(&class);
        classes.push(class.ones().collect());
    }
    classes
}

pub fn element_order(g: &GroupTable, x: usize) -> usize {
    let e = g.identity();
    let mut y = x;
    let mut k = 1;
    while y != e {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

pub fn element_orders(g: &GroupTable) -> Vec<usize> {
    (0..g.n()).map(|x| element_order(g, x)).collect()
}

pub fn is_normal(g: &GroupTable, s: &SubgroupSet) -> bool {
    let all: Vec<usize> = (0..g.n()).collect();
    let ggens = reduce_generators(g, &all);
    let sgens = subgroup_generators(g, s);
    ggens
        .iter()
        .all(|&x| sgens.iter().all(|&y| s.contains(g.conj(x, y))))
}

/// A quotient group with the coset of every ambient element.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: GroupTable,
    /// Ambient element -> coset index.
    pub coset_of: Vec<usize>,
    /// Coset index -> least ambient element of the coset.
    pub reps: Vec<usize>,
}

pub fn quotient(g: &GroupTable, nsub: &SubgroupSet) -> Result<Quotient> {
    if !is_normal(g, nsub) {
        return Err(Error::NotNormal);
    }
    let n = g.n();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let nelems = nsub.elements();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &h in &nelems {
            coset_of[g.mul(x, h)] = id;
        }
    }
    let m = reps.len();
    let t = MulTable::from_fn(m, |a, b| coset_of[g.mul(reps[a], reps[b])]);
    let q = validate_quasigroup(t).expect("quotient of a group is a Latin square");
    let group = group_from_associative(q).expect("quotient of a group is a group");
    Ok(Quotient {
        group,
        coset_of,
        reps,
    })
}

/// `G1 x G2` with `(a, b)` at index `a * |G2| + b`.
pub fn direct_product(g1: &GroupTable, g2: &GroupTable) -> GroupTable {
    let n2 = g2.n();
    let t = MulTable::from_fn(g1.n() * n2, |x, y| {
        g1.mul(x / n2, y / n2) * n2 + g2.mul(x % n2, y % n2)
    });
    let q = validate_quasigroup(t).expect("product of groups is a Latin square");
    group_from_associative(q).expect("product of groups is a group")
}

/// A subgroup realized as a group table of its own.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: GroupTable,
    /// Local index -> ambient element (ascending).
    pub embed: Vec<usize>,
    local: Vec<u32>,
}

impl Subgroup {
    pub fn to_global(&self, x: usize) -> usize {
        self.embed[x]
    }

    /// Local index of an ambient element, if it belongs to the subgroup.
    pub fn to_local(&self, x: usize) -> Option<usize> {
        match self.local[x] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    /// Lifts a subgroup of the local group to the ambient group.
    pub fn lift(&self, s: &SubgroupSet) -> SubgroupSet {
        SubgroupSet::from_elements(self.local.len(), s.iter().map(|x| self.embed[x]))
    }

    /// Pulls an ambient subgroup contained in this one down to local indices.
    pub fn restrict(&self, s: &SubgroupSet) -> SubgroupSet {
        SubgroupSet::from_elements(
            self.embed.len(),
            s.iter().map(|x| self.to_local(x).expect("subgroup not contained")),
        )
    }
}

pub fn subgroup_table(g: &GroupTable, s: &SubgroupSet) -> Subgroup {
    let embed = s.elements();
    let mut local = vec![u32::MAX; g.n()];
    for (i, &x) in embed.iter().enumerate() {
        local[x] = i as u32;
    }
    let t = MulTable::from_fn(embed.len(), |a, b| local[g.mul(embed[a], embed[b])] as usize);
    let q = validate_quasigroup(t).expect("subgroup is closed");
    let group = group_from_associative(q).expect("subgroup is a group");
    Subgroup {
        group,
        embed,
        local,
    }
}

pub fn is_perfect(g: &GroupTable) -> bool {
    derived_subgroup(g).is_whole()
}

pub fn is_centerless(g: &GroupTable) -> bool {
    center(g).is_trivial()
}

/// `|G / [G, G]|`.
pub fn abelianization_order(g: &GroupTable) -> usize {
    g.n() / derived_subgroup(g).len()
}

/// Prime factorization as `(p, e)` pairs, ascending.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// If `n` is a prime power `p^e` with `e >= 1`, returns `p`.
pub fn prime_of_power(n: usize) -> Option<usize> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}
