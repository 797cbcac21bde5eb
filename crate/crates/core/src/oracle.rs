//! Brute-force reference answers: isomorphism by backtracking over
//! generator images, and exhaustive normal-subgroup and direct-factor
//! searches.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{closure, conjugacy_classes, element_orders, is_normal, join, subgroup_table, SubgroupSet};
use crate::perm::Perm;
use crate::table::{GroupTable, QuasigroupTable};

struct Deadline {
    end: Instant,
    ticks: u32,
}

impl Deadline {
    fn new(budget: Duration) -> Self {
        Deadline {
            end: Instant::now() + budget,
            ticks: 0,
        }
    }

    fn check(&mut self) -> Result<()> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(1024) && Instant::now() > self.end {
            return Err(Error::BudgetExceeded("brute-force search ran out of time".into()));
        }
        Ok(())
    }
}

fn class_sizes(g: &GroupTable) -> Vec<usize> {
    let mut size = vec![0; g.n()];
    for c in conjugacy_classes(g) {
        for &x in &c {
            size[x] = c.len();
        }
    }
    size
}

/// Elements added greedily, highest order first, while they enlarge the
/// span.
fn greedy_generators(g: &GroupTable, orders: &[usize]) -> Vec<usize> {
    let mut elems: Vec<usize> = (0..g.n()).collect();
    elems.sort_by_key(|&x| (std::cmp::Reverse(orders[x]), x));
    let mut gens = Vec::new();
    let mut span = SubgroupSet::trivial(g);
    for x in elems {
        if !span.contains(x) {
            gens.push(x);
            span = closure(g, &gens);
            if span.is_whole() {
                break;
            }
        }
    }
    gens
}

/// Extends `gens[i] -> imgs[i]` along the Cayley graph. Returns the map if
/// it is consistent and injective on the generated subgroup.
fn extend_map(g: &GroupTable, h: &GroupTable, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    let n = g.n();
    let mut f = vec![usize::MAX; n];
    let mut used = FixedBitSet::with_capacity(n);
    f[g.identity()] = h.identity();
    used.insert(h.identity());
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = g.mul(x, s);
            let fy = h.mul(f[x], t);
            if f[y] == usize::MAX {
                if used.put(fy) {
                    return None;
                }
                f[y] = fy;
                queue.push(y);
            } else if f[y] != fy {
                return None;
            }
        }
    }
    Some(f)
}

/// An isomorphism `g -> h`, found by backtracking over images of a
/// generating tuple restricted to elements with matching order and class
/// size.
pub fn brute_iso_group(g: &GroupTable, h: &GroupTable, budget: Duration) -> Result<Option<Perm>> {
    if g.n() != h.n() {
        return Ok(None);
    }
    let (og, oh) = (element_orders(g), element_orders(h));
    let (cg, ch) = (class_sizes(g), class_sizes(h));
    let mut kg: Vec<(usize, usize)> = og.iter().copied().zip(cg.iter().copied()).collect();
    let mut kh: Vec<(usize, usize)> = oh.iter().copied().zip(ch.iter().copied()).collect();
    kg.sort_unstable();
    kh.sort_unstable();
    if kg != kh {
        return Ok(None);
    }
    let gens = greedy_generators(g, &og);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| (0..h.n()).filter(|&y| oh[y] == og[x] && ch[y] == cg[x]).collect())
        .collect();
    let mut deadline = Deadline::new(budget);
    let mut imgs = Vec::with_capacity(gens.len());
    fn go(
        g: &GroupTable,
        h: &GroupTable,
        gens: &[usize],
        candidates: &[Vec<usize>],
        imgs: &mut Vec<usize>,
        deadline: &mut Deadline,
    ) -> Result<Option<Vec<usize>>> {
        let i = imgs.len();
        if i == gens.len() {
            return Ok(extend_map(g, h, gens, imgs));
        }
        for &y in &candidates[i] {
            deadline.check()?;
            imgs.push(y);
            if extend_map(g, h, &gens[..=i], imgs).is_some() {
                if let Some(f) = go(g, h, gens, candidates, imgs, deadline)? {
                    return Ok(Some(f));
                }
            }
            imgs.pop();
        }
        Ok(None)
    }
    Ok(go(g, h, &gens, &candidates, &mut imgs, &mut deadline)?
        .map(|f| Perm::from_images(f).expect("injective on a generating set")))
}

/// Cycle type of a translation, an isomorphism invariant of the element.
fn cycle_type(f: impl Fn(usize) -> usize, n: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = f(x);
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

fn element_keys(q: &QuasigroupTable) -> Vec<(bool, Vec<usize>, Vec<usize>)> {
    let n = q.n();
    (0..n)
        .map(|x| {
            (
                q.mul(x, x) == x,
                cycle_type(|y| q.mul(x, y), n),
                cycle_type(|y| q.mul(y, x), n),
            )
        })
        .collect()
}

/// Partial map that closes itself under the operation.
struct Partial<'a> {
    q1: &'a QuasigroupTable,
    q2: &'a QuasigroupTable,
    f: Vec<usize>,
    used: Vec<bool>,
    domain: Vec<usize>,
}

impl Partial<'_> {
    /// Sets `f(x) = y` and propagates products; false on contradiction.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let mut pending = vec![(x, y)];
        while let Some((x, y)) = pending.pop() {
            if self.f[x] != usize::MAX {
                if self.f[x] != y {
                    return false;
                }
                continue;
            }
            if self.used[y] {
                return false;
            }
            self.f[x] = y;
            self.used[y] = true;
            self.domain.push(x);
            for i in 0..self.domain.len() {
                let a = self.domain[i];
                let fa = self.f[a];
                pending.push((self.q1.mul(a, x), self.q2.mul(fa, y)));
                pending.push((self.q1.mul(x, a), self.q2.mul(y, fa)));
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        while self.domain.len() > len {
            let x = self.domain.pop().unwrap();
            self.used[self.f[x]] = false;
            self.f[x] = usize::MAX;
        }
    }
}

/// An isomorphism `q1 -> q2` by depth-first search over partial bijections
/// closed under the operation, pruned by translation cycle types.
pub fn brute_iso_quasigroup(q1: &QuasigroupTable, q2: &QuasigroupTable, budget: Duration) -> Result<Option<Perm>> {
    let n = q1.n();
    if n != q2.n() {
        return Ok(None);
    }
    let (k1, k2) = (element_keys(q1), element_keys(q2));
    let mut s1 = k1.clone();
    let mut s2 = k2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(None);
    }
    let mut p = Partial {
        q1,
        q2,
        f: vec![usize::MAX; n],
        used: vec![false; n],
        domain: Vec::new(),
    };
    let mut deadline = Deadline::new(budget);
    fn go(p: &mut Partial, k1: &[(bool, Vec<usize>, Vec<usize>)], k2: &[(bool, Vec<usize>, Vec<usize>)], deadline: &mut Deadline) -> Result<bool> {
        let n = p.f.len();
        let Some(x) = (0..n).find(|&x| p.f[x] == usize::MAX) else {
            return Ok(true);
        };
        let mark = p.domain.len();
        for y in 0..n {
            if p.used[y] || k1[x] != k2[y] {
                continue;
            }
            deadline.check()?;
            if p.assign(x, y) && go(p, k1, k2, deadline)? {
                return Ok(true);
            }
            p.undo_to(mark);
        }
        Ok(false)
    }
    if go(&mut p, &k1, &k2, &mut deadline)? {
        Ok(Some(Perm::from_images(p.f).expect("complete bijection")))
    } else {
        Ok(None)
    }
}

/// All normal subgroups, as joins of normal closures of single elements.
pub fn normal_subgroups(g: &GroupTable) -> Vec<SubgroupSet> {
    let classes = conjugacy_classes(g);
    let minimal: Vec<SubgroupSet> = classes.iter().map(|c| closure(g, c)).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = vec![SubgroupSet::trivial(g)];
    seen.insert(out[0].elements());
    let mut head = 0;
    while head < out.len() {
        let cur = out[head].clone();
        head += 1;
        for m in &minimal {
            if m.is_subset(&cur) {
                continue;
            }
            let j = join(g, &cur, m);
            if seen.insert(j.elements()) {
                out.push(j);
            }
        }
    }
    out.sort_by_key(|s| (s.len(), s.elements()));
    out
}

fn is_direct_pair(g: &GroupTable, a: &SubgroupSet, b: &SubgroupSet) -> bool {
    a.len() * b.len() == g.n()
        && a.intersection(b).is_trivial()
        && a.iter().all(|x| b.iter().all(|y| g.mul(x, y) == g.mul(y, x)))
}

/// Every normal `B` with `G = A x B`.
pub fn all_complements(g: &GroupTable, a: &SubgroupSet) -> Vec<SubgroupSet> {
    normal_subgroups(g)
        .into_iter()
        .filter(|b| is_direct_pair(g, a, b))
        .collect()
}

/// Whether no proper nontrivial normal subgroup has a direct complement.
pub fn is_indecomposable_exhaustive(g: &GroupTable) -> bool {
    let normals = normal_subgroups(g);
    g.n() > 1
        && !normals.iter().any(|a| {
            !a.is_trivial() && !a.is_whole() && normals.iter().any(|b| is_direct_pair(g, a, b))
        })
}

/// Every fully-refined decomposition, each as a list of factors sorted by
/// elements.
pub fn all_decompositions(g: &GroupTable) -> Vec<Vec<SubgroupSet>> {
    if g.n() == 1 {
        return vec![Vec::new()];
    }
    let normals = normal_subgroups(g);
    let mut found: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    for a in &normals {
        if a.is_trivial() {
            continue;
        }
        let sub_a = subgroup_table(g, a);
        if !is_indecomposable_exhaustive(&sub_a.group) {
            continue;
        }
        for b in normals.iter().filter(|b| is_direct_pair(g, a, b)) {
            let sub_b = subgroup_table(g, b);
            for rest in all_decompositions(&sub_b.group) {
                let mut factors: Vec<Vec<usize>> = vec![a.elements()];
                factors.extend(rest.iter().map(|f| sub_b.lift(f).elements()));
                factors.sort();
                found.insert(factors);
            }
        }
    }
    found
        .into_iter()
        .map(|fs| {
            fs.into_iter()
                .map(|e| {
                    let s = closure(g, &e);
                    debug_assert!(is_normal(g, &s));
                    s
                })
                .collect()
        })
        .collect()
}
