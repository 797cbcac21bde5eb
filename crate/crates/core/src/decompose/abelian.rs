//! Bases of Abelian groups.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{element_order, factorize, SubgroupSet};
use crate::table::GroupTable;

/// Whether `x` splits per the `p`-power test: no `y` has `|x y^p| < |x|`.
/// Only meaningful inside an Abelian `p`-group.
pub fn is_splitting(g: &GroupTable, x: usize, p: usize) -> bool {
    let ox = element_order(g, x);
    (0..g.n()).all(|y| element_order(g, g.mul(x, g.pow(y, p as u64))) >= ox)
}

fn order_modulo(g: &GroupTable, x: usize, span: &FixedBitSet) -> usize {
    let mut y = x;
    let mut k = 1;
    while !span.contains(y) {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

/// A basis of an Abelian subgroup `s`: elements of prime-power order whose
/// cyclic groups multiply directly to `s`.
///
/// Within each Sylow subgroup, elements are picked greedily: the next one
/// has maximal order modulo the span so far and the same order as an
/// element, so its cyclic group meets the span trivially. Primes ascend and
/// orders are non-increasing within a prime.
pub fn abelian_basis_of(g: &GroupTable, s: &SubgroupSet) -> Result<Vec<usize>> {
    let elems = s.elements();
    for &a in &elems {
        for &b in &elems {
            if g.mul(a, b) != g.mul(b, a) {
                return Err(Error::NotAbelian);
            }
        }
    }
    let e = g.identity();
    let orders: Vec<usize> = elems.iter().map(|&x| element_order(g, x)).collect();
    let mut basis = Vec::new();
    for (p, _) in factorize(s.len()) {
        let sylow: Vec<(usize, usize)> = elems
            .iter()
            .zip(&orders)
            .filter(|&(_, &o)| factorize(o).iter().all(|&(q, _)| q == p))
            .map(|(&x, &o)| (x, o))
            .collect();
        let mut span = FixedBitSet::with_capacity(g.n());
        span.insert(e);
        let mut span_len = 1;
        while span_len < sylow.len() {
            let mut best: Option<(usize, usize)> = None;
            for &(x, o) in &sylow {
                if span.contains(x) {
                    continue;
                }
                let m = order_modulo(g, x, &span);
                if m == o && best.is_none_or(|(_, bm)| m > bm) {
                    best = Some((x, m));
                }
            }
            let (x, m) = best.expect("a maximal-order coset has a lift of equal order");
            let old: Vec<usize> = span.ones().collect();
            let mut xi = x;
            for _ in 1..m {
                for &y in &old {
                    span.insert(g.mul(y, xi));
                }
                xi = g.mul(xi, x);
            }
            span_len *= m;
            basis.push(x);
        }
    }
    Ok(basis)
}

pub fn abelian_basis(g: &GroupTable) -> Result<Vec<usize>> {
    abelian_basis_of(g, &SubgroupSet::whole(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{abelian, cyclic, element_of, symmetric};
    use crate::group::closure;

    fn orders(g: &GroupTable, b: &[usize]) -> Vec<usize> {
        let mut o: Vec<usize> = b.iter().map(|&x| element_order(g, x)).collect();
        o.sort();
        o
    }

    #[test]
    fn bases() {
        let g = abelian(&[4, 2]);
        let b = abelian_basis(&g).unwrap();
        assert_eq!(orders(&g, &b), vec![2, 4]);
        assert!(closure(&g, &b).is_whole());
        let z7 = cyclic(7);
        assert_eq!(orders(&z7, &abelian_basis(&z7).unwrap()), vec![7]);
        let z12 = cyclic(12);
        assert_eq!(orders(&z12, &abelian_basis(&z12).unwrap()), vec![3, 4]);
        let g = abelian(&[4, 4, 2, 3, 9]);
        let b = abelian_basis(&g).unwrap();
        assert_eq!(orders(&g, &b), vec![2, 3, 4, 4, 9]);
        assert!(closure(&g, &b).is_whole());
        assert_eq!(abelian_basis(&cyclic(1)).unwrap(), Vec::<usize>::new());
        assert!(matches!(abelian_basis(&symmetric(3)), Err(Error::NotAbelian)));
    }

    #[test]
    fn klein_diagonal_splits() {
        let g = abelian(&[2, 2]);
        assert!(is_splitting(&g, element_of(&[2, 2], &[1, 1]), 2));
        let z4 = cyclic(4);
        assert!(!is_splitting(&z4, 2, 2));
    }
}
