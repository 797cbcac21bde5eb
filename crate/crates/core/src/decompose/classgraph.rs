//! The graph on irreducible conjugacy classes.

use fixedbitset::FixedBitSet;
use petgraph::unionfind::UnionFind;

use crate::group::{center, conjugacy_classes};
use crate::par::{self, Exec};
use crate::table::GroupTable;

#[derive(Clone, Debug)]
pub struct ClassGraph {
    /// Irreducible non-central conjugacy classes, ordered by least element.
    pub classes: Vec<Vec<usize>>,
    /// `edges[i]` lists the classes that do not commute with class `i`.
    pub edges: Vec<Vec<usize>>,
    /// Connected components as lists of class indices, ordered by least
    /// member.
    pub components: Vec<Vec<usize>>,
}

impl ClassGraph {
    /// All elements of the classes in the given components.
    pub fn elements_of(&self, components: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut out: Vec<usize> = components
            .into_iter()
            .flat_map(|c| self.components[c].iter())
            .flat_map(|&v| self.classes[v].iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

fn classes_commute(g: &GroupTable, a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|&x| b.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
}

pub fn class_graph(g: &GroupTable) -> ClassGraph {
    class_graph_with(g, Exec::default())
}

pub fn class_graph_with(g: &GroupTable, exec: Exec) -> ClassGraph {
    let n = g.n();
    let z = center(g);
    let all = conjugacy_classes(g);
    let mut class_of = vec![0usize; n];
    for (i, c) in all.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    let noncentral: Vec<usize> = (0..all.len()).filter(|&i| !z.contains(all[i][0])).collect();
    let m = noncentral.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    // For each commuting pair of non-central classes whose product is a
    // single class of the full size, that class is reducible.
    let hits: Vec<Option<usize>> = par::map_slice(exec, &pairs, |&(i, j)| {
        let (ca, cb) = (&all[noncentral[i]], &all[noncentral[j]]);
        let size = ca.len() * cb.len();
        let target = class_of[g.mul(ca[0], cb[0])];
        if all[target].len() != size || !classes_commute(g, ca, cb) {
            return None;
        }
        let mut seen = FixedBitSet::with_capacity(n);
        for &x in ca {
            for &y in cb {
                let p = g.mul(x, y);
                if class_of[p] != target || seen.put(p) {
                    return None;
                }
            }
        }
        Some(target)
    });
    let mut reducible = vec![false; all.len()];
    for t in hits.into_iter().flatten() {
        reducible[t] = true;
    }
    let classes: Vec<Vec<usize>> = noncentral
        .iter()
        .filter(|&&i| !reducible[i])
        .map(|&i| all[i].clone())
        .collect();
    let v = classes.len();
    let adjacency: Vec<Vec<usize>> = par::map_range(exec, 0..v, |i| {
        (0..v)
            .filter(|&j| j != i && !classes_commute(g, &classes[i], &classes[j]))
            .collect()
    });
    let mut uf = UnionFind::<usize>::new(v);
    for (i, adj) in adjacency.iter().enumerate() {
        for &j in adj {
            uf.union(i, j);
        }
    }
    let labels = uf.into_labeling();
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; v];
    for (i, &r) in labels.iter().enumerate() {
        if slot[r] == usize::MAX {
            slot[r] = components.len();
            components.push(Vec::new());
        }
        components[slot[r]].push(i);
    }
    ClassGraph {
        classes,
        edges: adjacency,
        components,
    }
}
