//! A deterministic catalog of small groups and their direct products, plus
//! constructors for Abelian and central-quasigroup fixtures.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::group::{self, direct_product};
use crate::perm::Perm;
use crate::table::{validate_group, GroupTable, MulTable};

pub fn cyclic(n: usize) -> GroupTable {
    validate_group(MulTable::from_fn(n, |a, b| (a + b) % n)).expect("cyclic group")
}

/// `Z_{m_1} x ... x Z_{m_r}` in mixed radix, first factor most significant.
/// The identity is 0 and `element_of` / `coordinates` convert.
pub fn abelian(orders: &[usize]) -> GroupTable {
    let n: usize = orders.iter().product();
    let t = MulTable::from_fn(n, |a, b| {
        let (ca, cb) = (coordinates(orders, a), coordinates(orders, b));
        let sum: Vec<usize> = ca
            .iter()
            .zip(&cb)
            .zip(orders)
            .map(|((x, y), m)| (x + y) % m)
            .collect();
        element_of(orders, &sum)
    });
    validate_group(t).expect("Abelian group")
}

pub fn coordinates(orders: &[usize], mut x: usize) -> Vec<usize> {
    let mut out = vec![0; orders.len()];
    for (slot, &m) in out.iter_mut().zip(orders).rev() {
        *slot = x % m;
        x /= m;
    }
    out
}

pub fn element_of(orders: &[usize], coords: &[usize]) -> usize {
    coords
        .iter()
        .zip(orders)
        .fold(0, |acc, (&c, &m)| acc * m + c % m)
}

/// Dihedral group of order `2k`: `r^i s^j` at index `j * k + i`.
pub fn dihedral(k: usize) -> GroupTable {
    let t = MulTable::from_fn(2 * k, |a, b| {
        let (i1, j1) = (a % k, a / k);
        let (i2, j2) = (b % k, b / k);
        let i = if j1 == 0 { (i1 + i2) % k } else { (i1 + k - i2) % k };
        ((j1 + j2) % 2) * k + i
    });
    validate_group(t).expect("dihedral group")
}

/// The group generated by `gens`, elements listed in breadth-first order
/// from the identity.
pub fn perm_group_table(degree: usize, gens: &[Perm]) -> GroupTable {
    let id = Perm::identity(degree);
    let mut elems = vec![id.clone()];
    let mut index: HashMap<Perm, usize> = HashMap::from([(id, 0)]);
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head].clone();
        head += 1;
        for s in gens {
            let y = x.then(s);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
    }
    let t = MulTable::from_fn(elems.len(), |a, b| index[&elems[a].then(&elems[b])]);
    validate_group(t).expect("permutation group")
}

pub fn symmetric(k: usize) -> GroupTable {
    if k < 2 {
        return cyclic(1);
    }
    let cycle: Vec<usize> = (0..k).collect();
    perm_group_table(
        k,
        &[
            Perm::from_cycles(k, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(k, &[&cycle]).unwrap(),
        ],
    )
}

pub fn alternating(k: usize) -> GroupTable {
    if k < 3 {
        return cyclic(1);
    }
    let gens: Vec<Perm> = (2..k)
        .map(|i| Perm::from_cycles(k, &[&[0, 1, i]]).unwrap())
        .collect();
    perm_group_table(k, &gens)
}

pub fn quaternion() -> GroupTable {
    perm_group_table(
        8,
        &[
            Perm::from_cycles(8, &[&[0, 1, 3, 6], &[2, 5, 7, 4]]).unwrap(),
            Perm::from_cycles(8, &[&[0, 2, 3, 7], &[1, 4, 6, 5]]).unwrap(),
        ],
    )
}

/// Building blocks of the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseGroup {
    Cyclic(usize),
    Elementary(usize, u32),
    Z4xZ2,
    Dihedral(usize),
    S3,
    S4,
    A4,
    A5,
    Q8,
}

impl BaseGroup {
    pub fn order(self) -> usize {
        match self {
            BaseGroup::Cyclic(n) => n,
            BaseGroup::Elementary(p, k) => p.pow(k),
            BaseGroup::Z4xZ2 | BaseGroup::Q8 => 8,
            BaseGroup::Dihedral(k) => 2 * k,
            BaseGroup::S3 => 6,
            BaseGroup::S4 => 24,
            BaseGroup::A4 => 12,
            BaseGroup::A5 => 60,
        }
    }

    pub fn build(self) -> GroupTable {
        match self {
            BaseGroup::Cyclic(n) => cyclic(n),
            BaseGroup::Elementary(p, k) => abelian(&vec![p; k as usize]),
            BaseGroup::Z4xZ2 => abelian(&[4, 2]),
            BaseGroup::Dihedral(k) => dihedral(k),
            BaseGroup::S3 => symmetric(3),
            BaseGroup::S4 => symmetric(4),
            BaseGroup::A4 => alternating(4),
            BaseGroup::A5 => alternating(5),
            BaseGroup::Q8 => quaternion(),
        }
    }

    /// The indecomposable direct factors, up to isomorphism.
    pub fn indecomposable_factors(self) -> Vec<BaseGroup> {
        match self {
            BaseGroup::Cyclic(n) => group::factorize(n)
                .into_iter()
                .map(|(p, e)| BaseGroup::Cyclic(p.pow(e)))
                .collect(),
            BaseGroup::Elementary(p, k) => vec![BaseGroup::Cyclic(p); k as usize],
            BaseGroup::Z4xZ2 => vec![BaseGroup::Cyclic(4), BaseGroup::Cyclic(2)],
            BaseGroup::Dihedral(k) if k % 4 == 2 => {
                vec![BaseGroup::Dihedral(k / 2), BaseGroup::Cyclic(2)]
            }
            b => vec![b],
        }
    }

    /// Every base group that is directly indecomposable.
    pub fn is_indecomposable(self) -> bool {
        match self {
            BaseGroup::Cyclic(n) => n == 1 || group::prime_of_power(n).is_some(),
            BaseGroup::Elementary(_, k) => k <= 1,
            BaseGroup::Z4xZ2 => false,
            // D_k = D_{k/2} x Z_2 when k/2 is odd
            BaseGroup::Dihedral(k) => !(k % 4 == 2 && k > 2),
            _ => true,
        }
    }
}

impl fmt::Display for BaseGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseGroup::Cyclic(n) => write!(f, "Z{n}"),
            BaseGroup::Elementary(p, k) => write!(f, "Z{p}^{k}"),
            BaseGroup::Z4xZ2 => write!(f, "Z4xZ2"),
            BaseGroup::Dihedral(k) => write!(f, "D{k}"),
            BaseGroup::S3 => write!(f, "S3"),
            BaseGroup::S4 => write!(f, "S4"),
            BaseGroup::A4 => write!(f, "A4"),
            BaseGroup::A5 => write!(f, "A5"),
            BaseGroup::Q8 => write!(f, "Q8"),
        }
    }
}

/// Structural facts re-derived from the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metadata {
    pub order: usize,
    pub abelian: bool,
    pub perfect: bool,
    pub centerless: bool,
    pub generators: Vec<usize>,
}

impl Metadata {
    pub fn derive(g: &GroupTable) -> Self {
        let all: Vec<usize> = (0..g.n()).collect();
        Metadata {
            order: g.n(),
            abelian: g.is_abelian(),
            perfect: group::is_perfect(g),
            centerless: group::is_centerless(g),
            generators: group::reduce_generators(g, &all),
        }
    }
}

/// A catalog group: a direct product of base groups. The table and metadata
/// are built on first use.
#[derive(Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub factors: Vec<BaseGroup>,
    table: OnceLock<GroupTable>,
    metadata: OnceLock<Metadata>,
}

impl CatalogEntry {
    pub fn new(factors: Vec<BaseGroup>) -> Self {
        let name = factors
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("x");
        CatalogEntry {
            name,
            factors,
            table: OnceLock::new(),
            metadata: OnceLock::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|f| f.order()).product()
    }

    pub fn table(&self) -> &GroupTable {
        self.table.get_or_init(|| {
            let mut it = self.factors.iter();
            let first = it.next().expect("nonempty factor list").build();
            it.fold(first, |acc, f| direct_product(&acc, &f.build()))
        })
    }

    pub fn metadata(&self) -> &Metadata {
        self.metadata.get_or_init(|| Metadata::derive(self.table()))
    }

    /// Indecomposable factors of the construction, in construction order.
    pub fn indecomposable_factors(&self) -> Vec<BaseGroup> {
        self.factors
            .iter()
            .flat_map(|b| b.indecomposable_factors())
            .collect()
    }
}

impl Clone for CatalogEntry {
    fn clone(&self) -> Self {
        CatalogEntry::new(self.factors.clone())
    }
}

pub fn base_groups() -> Vec<BaseGroup> {
    let mut out: Vec<BaseGroup> = (1..=64).map(BaseGroup::Cyclic).collect();
    for (p, k) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2)] {
        out.push(BaseGroup::Elementary(p, k));
    }
    out.push(BaseGroup::Z4xZ2);
    out.extend((3..=20).map(BaseGroup::Dihedral));
    out.extend([
        BaseGroup::S3,
        BaseGroup::S4,
        BaseGroup::A4,
        BaseGroup::A5,
        BaseGroup::Q8,
    ]);
    out
}

/// Base groups, then all unordered pairs and triples of nontrivial base
/// groups whose product has order at most 400.
pub fn catalog() -> Vec<CatalogEntry> {
    const MAX: usize = 400;
    let bases = base_groups();
    let mut out: Vec<CatalogEntry> = bases.iter().map(|&b| CatalogEntry::new(vec![b])).collect();
    let nontrivial: Vec<BaseGroup> = bases.into_iter().filter(|b| b.order() > 1).collect();
    for (i, &a) in nontrivial.iter().enumerate() {
        for (j, &b) in nontrivial.iter().enumerate().skip(i) {
            let ab = a.order() * b.order();
            if ab > MAX {
                continue;
            }
            out.push(CatalogEntry::new(vec![a, b]));
            for &c in &nontrivial[j..] {
                if ab * c.order() <= MAX {
                    out.push(CatalogEntry::new(vec![a, b, c]));
                }
            }
        }
    }
    out
}

pub fn find(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}
