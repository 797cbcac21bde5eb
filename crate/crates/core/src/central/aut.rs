//! Automorphisms of finite Abelian groups.

use std::collections::{HashSet, VecDeque};

use crate::decompose::abelian_basis;
use crate::error::{Error, Result};
use crate::group::{element_order, prime_of_power};
use crate::perm::Perm;
use crate::permgroup::PermGroup;
use crate::table::GroupTable;

/// An Abelian group with a basis sorted by (prime, order), and coordinates
/// of every element in that basis.
#[derive(Clone, Debug)]
pub struct Coordinates {
    pub basis: Vec<usize>,
    pub orders: Vec<usize>,
    /// `elements[i]` is the element whose coordinate vector has mixed-radix
    /// index `i`, first coordinate most significant.
    pub elements: Vec<usize>,
    /// Element -> mixed-radix index of its coordinates.
    pub index: Vec<usize>,
}

impl Coordinates {
    pub fn new(g: &GroupTable) -> Result<Self> {
        let mut basis = abelian_basis(g)?;
        basis.sort_by_key(|&b| {
            let o = element_order(g, b);
            (prime_of_power(o), o)
        });
        let orders: Vec<usize> = basis.iter().map(|&b| element_order(g, b)).collect();
        let n = g.n();
        let mut elements = vec![g.identity()];
        for (&b, &o) in basis.iter().zip(&orders) {
            let mut next = Vec::with_capacity(elements.len() * o);
            for &x in &elements {
                let mut y = x;
                for _ in 0..o {
                    next.push(y);
                    y = g.mul(y, b);
                }
            }
            elements = next;
        }
        debug_assert_eq!(elements.len(), n);
        let mut index = vec![0; n];
        for (i, &x) in elements.iter().enumerate() {
            index[x] = i;
        }
        Ok(Coordinates {
            basis,
            orders,
            elements,
            index,
        })
    }

    pub fn coords(&self, x: usize) -> Vec<usize> {
        crate::catalog::coordinates(&self.orders, self.index[x])
    }

    /// The endomorphism sending basis element `i` to `images[i]`, as a map
    /// on elements. Only a permutation when the images form a basis of the
    /// same shape.
    pub fn extend(&self, g: &GroupTable, images: &[usize]) -> Option<Perm> {
        let map: Vec<usize> = (0..g.n())
            .map(|x| {
                self.coords(x)
                    .iter()
                    .zip(images)
                    .fold(g.identity(), |acc, (&a, &img)| g.mul(acc, g.pow(img, a as u64)))
            })
            .collect();
        Perm::from_images(map).ok()
    }
}

fn mult_order(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 {
        x = x * g % m;
        k += 1;
    }
    k
}

/// Generators of the unit group modulo `p^e`.
fn unit_generators(p: usize, e: u32) -> Vec<u64> {
    let m = (p as u64).pow(e);
    if p == 2 {
        return match e {
            0 | 1 => Vec::new(),
            2 => vec![3],
            _ => vec![m - 1, 5],
        };
    }
    let phi = m / p as u64 * (p as u64 - 1);
    let root = (2..m)
        .find(|&g| g % p as u64 != 0 && mult_order(g, m) == phi)
        .expect("odd prime powers have primitive roots");
    vec![root]
}

/// Generators of `Aut(A)` for Abelian `A`: per Sylow subgroup, unit scalings
/// of single basis elements, transvections `b_i -> b_i + l b_j` with `l`
/// the least multiplier keeping the order of `b_i`, and swaps of basis
/// elements of equal order.
pub fn aut_abelian_generators(a: &GroupTable) -> Result<PermGroup> {
    let c = Coordinates::new(a)?;
    let k = c.basis.len();
    let mut gens = Vec::new();
    let primes: Vec<usize> = c.orders.iter().map(|&o| prime_of_power(o).unwrap()).collect();
    let exps: Vec<u32> = c
        .orders
        .iter()
        .zip(&primes)
        .map(|(&o, &p)| o.ilog(p))
        .collect();
    let mut push = |images: Vec<usize>| {
        let g = c.extend(a, &images).expect("elementary automorphism");
        if !g.is_identity() && !gens.contains(&g) {
            gens.push(g);
        }
    };
    for i in 0..k {
        for u in unit_generators(primes[i], exps[i]) {
            let mut images = c.basis.clone();
            images[i] = a.pow(c.basis[i], u);
            push(images);
        }
        for j in 0..k {
            if i == j || primes[i] != primes[j] {
                continue;
            }
            let lambda = if exps[j] <= exps[i] {
                1
            } else {
                primes[i].pow(exps[j] - exps[i])
            };
            let mut images = c.basis.clone();
            images[i] = a.mul(c.basis[i], a.pow(c.basis[j], lambda as u64));
            push(images);
            if j > i && c.orders[i] == c.orders[j] {
                let mut images = c.basis.clone();
                images.swap(i, j);
                push(images);
            }
        }
    }
    Ok(PermGroup::new(a.n(), gens))
}

/// Every element of the group generated by `gens`, or `BudgetExceeded` once
/// more than `cap` have been found.
pub fn enumerate_group(gens: &PermGroup, cap: u64) -> Result<Vec<Perm>> {
    let id = Perm::identity(gens.degree());
    let mut seen = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in gens.generators() {
            let y = x.then(s);
            if seen.insert(y.clone()) {
                if out.len() as u64 >= cap {
                    return Err(Error::BudgetExceeded(format!(
                        "automorphism group exceeds {cap} elements"
                    )));
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// Whether `f` is an automorphism of `a`.
pub fn is_automorphism(a: &GroupTable, f: &Perm) -> bool {
    f.degree() == a.n()
        && (0..a.n()).all(|x| (0..a.n()).all(|y| f.apply(a.mul(x, y)) == a.mul(f.apply(x), f.apply(y))))
}
