//! Canonical labelings of groups generated by few elements and of direct
//! products of such groups.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::decompose::decompose_bounded;
use crate::error::{Error, Result};
use crate::group::{closure, subgroup_table, word_order};
use crate::par::{self, Exec};
use crate::perm::Perm;
use crate::table::{GroupTable, MulTable};
use crate::wl::{tuple_at, MarkedForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalLabeling {
    /// Element -> canonical label.
    pub labels: Perm,
    pub table: MulTable,
    /// The individualized tuple, in input labels.
    pub generating_tuple: Vec<usize>,
    /// Orders of the factors in the order they were concatenated.
    pub factor_orders: Vec<usize>,
}

/// A generating tuple of length at most `d`, found by depth-first search
/// over tuples in lexicographic order that skips elements already generated
/// and subgroups already explored at the same depth.
pub fn is_d_generated(g: &GroupTable, d: usize) -> Option<Vec<usize>> {
    fn search(
        g: &GroupTable,
        d: usize,
        prefix: &mut Vec<usize>,
        span: FixedBitSet,
        memo: &mut [HashSet<FixedBitSet>],
    ) -> bool {
        if span.count_ones(..) == g.n() {
            return true;
        }
        let depth = prefix.len();
        if depth == d || !memo[depth].insert(span.clone()) {
            return false;
        }
        for x in 0..g.n() {
            if span.contains(x) {
                continue;
            }
            prefix.push(x);
            let next = closure(g, prefix);
            if search(g, d, prefix, next.bits().clone(), memo) {
                return true;
            }
            prefix.pop();
        }
        false
    }
    let mut memo = vec![HashSet::new(); d + 1];
    let mut prefix = Vec::new();
    let mut span = FixedBitSet::with_capacity(g.n());
    span.insert(g.identity());
    search(g, d, &mut prefix, span, &mut memo).then_some(prefix)
}

/// The generating `d`-tuple with the least marked form, with that form.
///
/// Tuples are scanned in lexicographic order in chunks, each keeping its
/// own running minimum so most tuples are abandoned after a few entries.
pub fn min_generating_tuple(g: &GroupTable, d: usize, exec: Exec) -> Option<(MarkedForm, Vec<usize>)> {
    const CHUNK: usize = 4096;
    let n = g.n();
    let total = n.checked_pow(d as u32)?;
    let chunks = total.div_ceil(CHUNK);
    let best = par::map_range(exec, 0..chunks, |c| {
        let mut index = vec![u32::MAX; n];
        let mut t = vec![0; d];
        let mut best: Option<(MarkedForm, usize)> = None;
        for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
            tuple_at(n, d, idx, &mut t);
            if let Some(f) = MarkedForm::below(g, &t, best.as_ref().map(|b| &b.0), &mut index) {
                if f.subgroup_order() == n {
                    best = Some((f, idx));
                }
            }
        }
        best
    })
    .into_iter()
    .flatten()
    .min()?;
    let mut t = vec![0; d];
    tuple_at(n, d, best.1, &mut t);
    Some((best.0, t))
}

/// Colors of elements after individualizing `tuple` (each element marked
/// with the positions it occupies) and refining by the colors of right
/// neighbours `x t_j` and `x t_j^-1` until the partition is stable.
fn refine_elements(g: &GroupTable, tuple: &[usize]) -> Vec<u32> {
    let n = g.n();
    let inv: Vec<usize> = tuple.iter().map(|&t| g.inv(t)).collect();
    let mut sigs: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (j, &t) in tuple.iter().enumerate() {
        sigs[t].push(j as u32);
    }
    let mut colors = rank(&sigs);
    let mut classes = count(&colors);
    loop {
        let sigs: Vec<Vec<u32>> = (0..n)
            .map(|x| {
                let mut s = Vec::with_capacity(1 + 2 * tuple.len());
                s.push(colors[x]);
                s.extend(tuple.iter().map(|&t| colors[g.mul(x, t)]));
                s.extend(inv.iter().map(|&t| colors[g.mul(x, t)]));
                s
            })
            .collect();
        let next = rank(&sigs);
        let c = count(&next);
        if c == classes {
            return colors;
        }
        colors = next;
        classes = c;
    }
}

fn rank(sigs: &[Vec<u32>]) -> Vec<u32> {
    let mut distinct: Vec<&Vec<u32>> = sigs.iter().collect();
    distinct.sort();
    distinct.dedup();
    sigs.iter()
        .map(|s| distinct.binary_search(&s).unwrap() as u32)
        .collect()
}

fn count(colors: &[u32]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m as usize + 1)
}

/// Labels from a discrete refinement, or breadth-first word order over the
/// tuple if the refinement left ties.
fn label_by_tuple(g: &GroupTable, tuple: &[usize]) -> Perm {
    let colors = refine_elements(g, tuple);
    if count(&colors) == g.n() {
        return Perm::from_images(colors.iter().map(|&c| c as usize).collect())
            .expect("discrete coloring is a bijection");
    }
    let order = word_order(g, tuple);
    let mut labels = vec![0; g.n()];
    for (i, &x) in order.iter().enumerate() {
        labels[x] = i;
    }
    Perm::from_images(labels).expect("tuple generates the group")
}

fn labeling(g: &GroupTable, tuple: Vec<usize>, factor_orders: Vec<usize>) -> CanonicalLabeling {
    let labels = label_by_tuple(g, &tuple);
    let table = g.table().relabel(&labels);
    CanonicalLabeling {
        labels,
        table,
        generating_tuple: tuple,
        factor_orders,
    }
}

pub fn canonize_bounded_gen(g: &GroupTable, d: usize) -> Result<CanonicalLabeling> {
    canonize_bounded_gen_with(g, d, Exec::default())
}

pub fn canonize_bounded_gen_with(g: &GroupTable, d: usize, exec: Exec) -> Result<CanonicalLabeling> {
    if g.n() == 1 {
        return Ok(labeling(g, vec![g.identity(); d], vec![1]));
    }
    if d == 0 || is_d_generated(g, d).is_none() {
        return Err(Error::NotDGenerated { d });
    }
    let (_, tuple) = min_generating_tuple(g, d, exec).ok_or(Error::NotDGenerated { d })?;
    Ok(labeling(g, tuple, vec![g.n()]))
}

pub fn canonize_direct_product(g: &GroupTable, d: usize) -> Result<CanonicalLabeling> {
    canonize_direct_product_with(g, d, Exec::default())
}

/// Decomposes `g`, takes the least generating `d`-tuple of every factor,
/// sorts the factors by (form, order), and individualizes the concatenated
/// tuples in `g`.
pub fn canonize_direct_product_with(g: &GroupTable, d: usize, exec: Exec) -> Result<CanonicalLabeling> {
    if g.n() == 1 {
        return Ok(labeling(g, Vec::new(), Vec::new()));
    }
    let dec = decompose_bounded(g, d)?;
    let mut parts: Vec<(MarkedForm, usize, Vec<usize>)> = dec
        .factors
        .iter()
        .map(|f| {
            let sub = subgroup_table(g, f);
            let (form, t) = min_generating_tuple(&sub.group, d, exec).expect("factor is d-generated");
            let t = t.into_iter().map(|x| sub.to_global(x)).collect();
            (form, f.len(), t)
        })
        .collect();
    parts.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
    let orders = parts.iter().map(|p| p.1).collect();
    let tuple = parts.into_iter().flat_map(|p| p.2).collect();
    Ok(labeling(g, tuple, orders))
}
