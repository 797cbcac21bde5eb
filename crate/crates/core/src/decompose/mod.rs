//! Fully-refined direct product decompositions.

mod abelian;
mod classgraph;
mod division;

use num_integer::Integer;

pub use abelian::{abelian_basis, abelian_basis_of, is_splitting};
pub use classgraph::{class_graph, class_graph_with, ClassGraph};
pub use division::{
    group_division, semi_abelian_decomposition, semi_abelian_decomposition_of, SemiAbelian,
};

use crate::error::{Error, Result};
use crate::group::{
    abelianization_order, center, centralizer, closure, is_normal, is_centerless, is_perfect,
    subgroup_generators, subgroup_table, SubgroupSet,
};
use crate::par::Exec;
use crate::table::GroupTable;

const MAX_COMPONENTS: usize = 30;

/// Directly indecomposable normal subgroups whose direct product is the
/// group, with an irredundant generating list per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub factors: Vec<SubgroupSet>,
    pub generators: Vec<Vec<usize>>,
}

impl Decomposition {
    pub fn orders(&self) -> Vec<usize> {
        self.factors.iter().map(SubgroupSet::len).collect()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Checks that the factors commute pairwise and that multiplication
    /// `F_1 x ... x F_k -> G` is a bijection.
    pub fn verify(&self, g: &GroupTable) -> bool {
        let n = g.n();
        for (i, a) in self.factors.iter().enumerate() {
            for b in &self.factors[i + 1..] {
                if !a.iter().all(|x| b.iter().all(|y| g.mul(x, y) == g.mul(y, x))) {
                    return false;
                }
            }
        }
        let mut product = vec![g.identity()];
        let mut seen = fixedbitset::FixedBitSet::with_capacity(n);
        for f in &self.factors {
            seen.clear();
            let mut next = Vec::with_capacity(product.len() * f.len());
            for &p in &product {
                for x in f.iter() {
                    let y = g.mul(p, x);
                    if seen.put(y) {
                        return false;
                    }
                    next.push(y);
                }
            }
            product = next;
        }
        product.len() == n
    }
}

fn decompose_rec(g: &GroupTable, exec: Exec) -> Vec<SubgroupSet> {
    let n = g.n();
    if n == 1 {
        return Vec::new();
    }
    if g.is_abelian() {
        return abelian_basis(g)
            .expect("checked Abelian")
            .into_iter()
            .map(|b| closure(g, &[b]))
            .collect();
    }
    let cg = class_graph_with(g, exec);
    let t = cg.components.len();
    assert!(1usize << t <= n, "class graph has {t} components for order {n}");
    assert!(t <= MAX_COMPONENTS);
    for size in 1..=t {
        for subset in combinations(t, size) {
            let rest = (0..t).filter(|c| !subset.contains(c));
            let x = cg.elements_of(rest);
            let z1 = centralizer(g, &x);
            let h1 = semi_abelian_decomposition_of(g, &z1).a;
            if h1.is_trivial() || h1.is_whole() || !is_normal(g, &h1) {
                continue;
            }
            if let Some(y1) = group_division(g, &h1).expect("checked normal") {
                let mut out = decompose_sub(g, &h1, exec);
                out.extend(decompose_sub(g, &y1, exec));
                return out;
            }
        }
    }
    vec![SubgroupSet::whole(g)]
}

fn decompose_sub(g: &GroupTable, s: &SubgroupSet, exec: Exec) -> Vec<SubgroupSet> {
    let sub = subgroup_table(g, s);
    decompose_rec(&sub.group, exec)
        .iter()
        .map(|f| sub.lift(f))
        .collect()
}

/// `k`-subsets of `0..t` in lexicographic order.
fn combinations(t: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > t {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < t - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub fn decompose(g: &GroupTable) -> Decomposition {
    decompose_with(g, Exec::default())
}

pub fn decompose_with(g: &GroupTable, exec: Exec) -> Decomposition {
    let factors = decompose_rec(g, exec);
    let generators = factors.iter().map(|f| subgroup_generators(g, f)).collect();
    let d = Decomposition {
        factors,
        generators,
    };
    assert!(d.verify(g), "decomposition failed verification");
    d
}

fn factor_invariants(g: &GroupTable, f: &SubgroupSet) -> (usize, usize) {
    let sub = subgroup_table(g, f);
    (abelianization_order(&sub.group), center(&sub.group).len())
}

/// Whether every pair of factors has coprime abelianization and center
/// orders, which forces the decomposition to be the only fully-refined one.
pub fn decomposition_is_unique(g: &GroupTable, d: &Decomposition) -> bool {
    let inv: Vec<(usize, usize)> = d.factors.iter().map(|f| factor_invariants(g, f)).collect();
    (0..inv.len()).all(|i| (0..inv.len()).all(|j| i == j || inv[i].0.gcd(&inv[j].1) == 1))
}

/// Whether factor `i` appears setwise in every fully-refined decomposition,
/// by the same coprimality test restricted to pairs involving `i`.
pub fn factor_is_canonical(g: &GroupTable, d: &Decomposition, i: usize) -> bool {
    let inv: Vec<(usize, usize)> = d.factors.iter().map(|f| factor_invariants(g, f)).collect();
    (0..inv.len())
        .filter(|&j| j != i)
        .all(|j| inv[i].0.gcd(&inv[j].1) == 1 && inv[j].0.gcd(&inv[i].1) == 1)
}

/// Whether every indecomposable factor is generated by at most `d` elements
/// and is perfect or centerless.
pub fn in_class_c(g: &GroupTable, d: usize) -> bool {
    decompose(g).factors.iter().all(|f| {
        let sub = subgroup_table(g, f).group;
        crate::canon::is_d_generated(&sub, d).is_some() && (is_perfect(&sub) || is_centerless(&sub))
    })
}

/// Like [`decompose`] but refuses groups with a factor needing more than `d`
/// generators.
pub fn decompose_bounded(g: &GroupTable, d: usize) -> Result<Decomposition> {
    let dec = decompose(g);
    for (i, f) in dec.factors.iter().enumerate() {
        let sub = subgroup_table(g, f).group;
        if crate::canon::is_d_generated(&sub, d).is_none() {
            return Err(Error::FactorNotDGenerated {
                factor: i,
                order: f.len(),
                d,
            });
        }
    }
    Ok(dec)
}
