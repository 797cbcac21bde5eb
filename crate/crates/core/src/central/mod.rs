//! Central quasigroups: `x * y = phi(x) + psi(y) + c` over an Abelian group.

mod aut;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

pub use aut::{aut_abelian_generators, enumerate_group, is_automorphism, Coordinates};

use crate::catalog::abelian;
use crate::error::{Error, Result};
use crate::group::{factorize, SubgroupSet};
use crate::perm::Perm;
use crate::table::{validate_group, validate_quasigroup, GroupTable, MulTable, QuasigroupTable};

/// `alpha(x) * beta(y) = gamma(x . y)` between the group `(Q, .)` and the
/// quasigroup `(Q, *)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isotopism {
    pub alpha: Perm,
    pub beta: Perm,
    pub gamma: Perm,
}

/// The group `x . y = (x * (e \ (y * e))) / e`, if the displacement maps
/// `d_x = L_x L_e^-1` are closed under composition.
pub fn dis_group(q: &QuasigroupTable, e: usize) -> Option<(GroupTable, Isotopism)> {
    let n = q.n();
    let d = |x: usize, w: usize| q.mul(x, q.ldiv(e, w));
    let dot = |x: usize, y: usize| q.rdiv(q.mul(x, q.ldiv(e, q.mul(y, e))), e);
    for x in 0..n {
        for y in 0..n {
            let z = dot(x, y);
            if (0..n).any(|w| d(x, d(y, w)) != d(z, w)) {
                return None;
            }
        }
    }
    let g = validate_group(MulTable::from_fn(n, dot)).ok()?;
    let iso = Isotopism {
        alpha: Perm::identity(n),
        beta: Perm::from_images((0..n).map(|y| q.ldiv(e, q.mul(y, e))).collect()).ok()?,
        gamma: Perm::from_images((0..n).map(|z| q.mul(z, e)).collect()).ok()?,
    };
    Some((g, iso))
}

/// `(plus, phi, psi, c)` realizing a central quasigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralForm {
    pub plus: GroupTable,
    pub phi: Perm,
    pub psi: Perm,
    pub c: usize,
}

impl CentralForm {
    pub fn build(&self) -> QuasigroupTable {
        build_central(&self.plus, &self.phi, &self.psi, self.c).expect("valid central form")
    }
}

pub fn build_central(plus: &GroupTable, phi: &Perm, psi: &Perm, c: usize) -> Result<QuasigroupTable> {
    if !plus.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if !is_automorphism(plus, phi) || !is_automorphism(plus, psi) {
        return Err(Error::NotAutomorphism);
    }
    let t = MulTable::from_fn(plus.n(), |x, y| {
        plus.mul(plus.mul(phi.apply(x), psi.apply(y)), c)
    });
    validate_quasigroup(t)
}

/// Recovers the unique central form with the group identity at 0, or `None`
/// when the quasigroup is not central.
pub fn recognize_central(q: &QuasigroupTable) -> Option<CentralForm> {
    let (plus, _) = dis_group(q, 0)?;
    if !plus.is_abelian() {
        return None;
    }
    let c = q.mul(0, 0);
    let minus_c = plus.inv(c);
    let phi = Perm::from_images((0..q.n()).map(|x| plus.mul(q.mul(x, 0), minus_c)).collect()).ok()?;
    let psi = Perm::from_images((0..q.n()).map(|x| plus.mul(q.mul(0, x), minus_c)).collect()).ok()?;
    if !is_automorphism(&plus, &phi) || !is_automorphism(&plus, &psi) {
        return None;
    }
    let n = q.n();
    let law = (0..n).all(|x| {
        (0..n).all(|y| q.mul(x, y) == plus.mul(plus.mul(phi.apply(x), psi.apply(y)), c))
    });
    law.then_some(CentralForm { plus, phi, psi, c })
}

/// `(x*y)*(u*v) = (x*u)*(y*v)` for all quadruples.
pub fn is_medial(q: &QuasigroupTable) -> bool {
    let n = q.n();
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|u| {
                let xy = q.mul(x, y);
                let xu = q.mul(x, u);
                (0..n).all(|v| q.mul(xy, q.mul(u, v)) == q.mul(xu, q.mul(y, v)))
            })
        })
    })
}

/// `{x - phi(x) - psi(x)}`, a subgroup of `plus`.
pub fn image_one_minus(phi: &Perm, psi: &Perm, plus: &GroupTable) -> SubgroupSet {
    let img: Vec<usize> = (0..plus.n())
        .map(|x| plus.mul(x, plus.inv(plus.mul(phi.apply(x), psi.apply(x)))))
        .collect();
    let s = crate::group::closure(plus, &img);
    debug_assert_eq!(s.len(), {
        let mut v = img.clone();
        v.sort_unstable();
        v.dedup();
        v.len()
    });
    s
}

/// Witness that two central quasigroups are isomorphic, in their own labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCertificate {
    /// An isomorphism of the underlying Abelian groups with
    /// `gamma phi1 gamma^-1 = phi2`, likewise for `psi`, and
    /// `gamma(c1 + u) = c2`.
    pub gamma: Perm,
    /// An element of `Im(1 - phi1 - psi1)` in the first group.
    pub u: usize,
    /// The quasigroup isomorphism `x -> gamma(x + s)` with
    /// `(1 - phi1 - psi1)(s) = u`.
    pub iso: Perm,
}

impl IsoCertificate {
    /// Checks the three conditions and that `iso` maps the first table onto
    /// the second.
    pub fn verify(&self, f1: &CentralForm, f2: &CentralForm, q1: &QuasigroupTable, q2: &QuasigroupTable) -> bool {
        let g = &self.gamma;
        let n = q1.n();
        let conj = |a: &Perm, b: &Perm| (0..n).all(|x| g.apply(a.apply(x)) == b.apply(g.apply(x)));
        conj(&f1.phi, &f2.phi)
            && conj(&f1.psi, &f2.psi)
            && g.apply(f1.plus.mul(f1.c, self.u)) == f2.c
            && image_one_minus(&f1.phi, &f1.psi, &f1.plus).contains(self.u)
            && is_isomorphism(q1, q2, &self.iso)
    }
}

pub fn is_isomorphism(q1: &QuasigroupTable, q2: &QuasigroupTable, f: &Perm) -> bool {
    let n = q1.n();
    q2.n() == n
        && f.degree() == n
        && (0..n).all(|x| (0..n).all(|y| f.apply(q1.mul(x, y)) == q2.mul(f.apply(x), f.apply(y))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralIso {
    Isomorphic(IsoCertificate),
    NotIsomorphic,
    /// The second quasigroup is not central, so it cannot be isomorphic to
    /// the first.
    NotCentral,
}

impl CentralIso {
    pub fn status(&self) -> &'static str {
        match self {
            CentralIso::Isomorphic(_) => "isomorphic",
            CentralIso::NotIsomorphic => "not isomorphic",
            CentralIso::NotCentral => "not central",
        }
    }

    pub fn certificate(&self) -> Option<&IsoCertificate> {
        match self {
            CentralIso::Isomorphic(c) => Some(c),
            _ => None,
        }
    }
}

/// A central form rewritten over `prod Z_{m_i}` through a sorted basis.
struct Aligned {
    coords: Coordinates,
    phi: Perm,
    psi: Perm,
    c: usize,
}

impl Aligned {
    /// `tau` maps coordinate-group elements to the form's own elements.
    fn new(f: &CentralForm) -> Aligned {
        let coords = Coordinates::new(&f.plus).expect("central forms are Abelian");
        let tau = Perm::from_images(coords.elements.clone()).expect("coordinates are a bijection");
        let tau_inv = tau.inverse();
        Aligned {
            phi: tau.then(&f.phi).then(&tau_inv),
            psi: tau.then(&f.psi).then(&tau_inv),
            c: coords.index[f.c],
            coords,
        }
    }

    fn tau(&self) -> Perm {
        Perm::from_images(self.coords.elements.clone()).unwrap()
    }
}

fn coset(plus: &GroupTable, phi: &Perm, psi: &Perm, c: usize) -> Vec<usize> {
    let mut v: Vec<usize> = image_one_minus(phi, psi, plus)
        .iter()
        .map(|u| plus.mul(c, u))
        .collect();
    v.sort_unstable();
    v
}

/// Turns a coordinate-level `gamma` into a certificate in original labels.
fn certificate(
    plus: &GroupTable,
    a1: &Aligned,
    a2: &Aligned,
    gamma: &Perm,
    f1: &CentralForm,
) -> IsoCertificate {
    let gi = gamma.inverse();
    let u = plus.mul(gi.apply(a2.c), plus.inv(a1.c));
    let s = (0..plus.n())
        .find(|&s| {
            let t = plus.mul(a1.phi.apply(s), a1.psi.apply(s));
            plus.mul(s, plus.inv(t)) == u
        })
        .expect("u lies in the image of 1 - phi - psi");
    let iso_c = Perm::from_images((0..plus.n()).map(|x| gamma.apply(plus.mul(x, s))).collect())
        .expect("translation then automorphism");
    let (t1, t2) = (a1.tau(), a2.tau());
    let t1_inv = t1.inverse();
    let lift = |p: &Perm| t1_inv.then(p).then(&t2);
    let cert = IsoCertificate {
        gamma: lift(gamma),
        u: t1.apply(u),
        iso: lift(&iso_c),
    };
    debug_assert!(f1.plus.mul(f1.c, cert.u) == t1.apply(plus.mul(a1.c, u)));
    cert
}

fn align_pair(q1: &QuasigroupTable, q2: &QuasigroupTable) -> Result<Option<(CentralForm, CentralForm, Aligned, Aligned)>> {
    let f1 = recognize_central(q1).ok_or(Error::NotCentral)?;
    if q1.n() != q2.n() {
        return Ok(None);
    }
    let Some(f2) = recognize_central(q2) else {
        return Ok(None);
    };
    let (a1, a2) = (Aligned::new(&f1), Aligned::new(&f2));
    Ok(Some((f1, f2, a1, a2)))
}

/// Decides isomorphism of a central `q1` with any `q2` by searching the
/// orbit of `(phi1, psi1, c1 + Im(1 - phi1 - psi1))` under `Aut(+)`.
pub fn central_iso(q1: &QuasigroupTable, q2: &QuasigroupTable) -> Result<CentralIso> {
    let Some((f1, f2, a1, a2)) = align_pair(q1, q2)? else {
        return not_central_or_not_iso(q1, q2);
    };
    if a1.coords.orders != a2.coords.orders {
        return Ok(CentralIso::NotIsomorphic);
    }
    let plus = abelian(&a1.coords.orders);
    let gens = aut_abelian_generators(&plus)?;
    type State = (Perm, Perm, Vec<usize>);
    let start: State = (a1.phi.clone(), a1.psi.clone(), coset(&plus, &a1.phi, &a1.psi, a1.c));
    let target: State = (a2.phi.clone(), a2.psi.clone(), coset(&plus, &a2.phi, &a2.psi, a2.c));
    let mut parent: HashMap<State, Option<(usize, usize)>> = HashMap::new();
    let mut states: Vec<State> = vec![start.clone()];
    parent.insert(start, None);
    let mut queue = VecDeque::from([0usize]);
    let mut found = None;
    while let Some(i) = queue.pop_front() {
        if states[i] == target {
            found = Some(i);
            break;
        }
        for (gi, g) in gens.generators().iter().enumerate() {
            let (phi, psi, cs) = &states[i];
            let mut img: Vec<usize> = cs.iter().map(|&x| g.apply(x)).collect();
            img.sort_unstable();
            let next: State = (phi.conjugate_by(g), psi.conjugate_by(g), img);
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((i, gi)));
                queue.push_back(states.len());
                states.push(next);
            }
        }
    }
    let Some(mut i) = found else {
        return Ok(CentralIso::NotIsomorphic);
    };
    let mut path = Vec::new();
    while let Some((p, gi)) = parent[&states[i]] {
        path.push(gi);
        i = p;
    }
    let gamma = path
        .iter()
        .rev()
        .fold(Perm::identity(plus.n()), |acc, &gi| acc.then(&gens.generators()[gi]));
    let cert = certificate(&plus, &a1, &a2, &gamma, &f1);
    debug_assert!(cert.verify(&f1, &f2, q1, q2));
    Ok(CentralIso::Isomorphic(cert))
}

fn not_central_or_not_iso(q1: &QuasigroupTable, q2: &QuasigroupTable) -> Result<CentralIso> {
    if q1.n() == q2.n() && recognize_central(q2).is_none() {
        Ok(CentralIso::NotCentral)
    } else {
        Ok(CentralIso::NotIsomorphic)
    }
}

/// The same decision by testing every automorphism, refusing when `Aut(+)`
/// has more than `cap` elements.
pub fn central_iso_by_enumeration(q1: &QuasigroupTable, q2: &QuasigroupTable, cap: u64) -> Result<CentralIso> {
    let Some((f1, _, a1, a2)) = align_pair(q1, q2)? else {
        return not_central_or_not_iso(q1, q2);
    };
    if a1.coords.orders != a2.coords.orders {
        return Ok(CentralIso::NotIsomorphic);
    }
    let plus = abelian(&a1.coords.orders);
    let auts = enumerate_group(&aut_abelian_generators(&plus)?, cap)?;
    let target = coset(&plus, &a2.phi, &a2.psi, a2.c);
    for g in auts {
        if a1.phi.conjugate_by(&g) == a2.phi && a1.psi.conjugate_by(&g) == a2.psi {
            let mut img: Vec<usize> = coset(&plus, &a1.phi, &a1.psi, a1.c)
                .iter()
                .map(|&x| g.apply(x))
                .collect();
            img.sort_unstable();
            if img == target {
                return Ok(CentralIso::Isomorphic(certificate(&plus, &a1, &a2, &g, &f1)));
            }
        }
    }
    Ok(CentralIso::NotIsomorphic)
}

/// Orders of cyclic factors, one list per isomorphism type of Abelian group
/// of order `n`, each sorted by (prime, order).
pub fn abelian_types(n: usize) -> Vec<Vec<usize>> {
    fn partitions(e: u32, max: u32) -> Vec<Vec<u32>> {
        if e == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in (1..=e.min(max)).rev() {
            for mut rest in partitions(e - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for (p, e) in factorize(n) {
        let parts = partitions(e, e);
        out = out
            .iter()
            .flat_map(|prefix| {
                parts.iter().map(move |part| {
                    let mut v = prefix.clone();
                    let mut orders: Vec<usize> = part.iter().map(|&k| p.pow(k)).collect();
                    orders.sort_unstable();
                    v.extend(orders);
                    v
                })
            })
            .collect();
    }
    out
}

/// Every central form over every Abelian group of order `1..=bound`: each
/// group type once, with all automorphism pairs and constants.
pub fn all_central_forms(bound: usize) -> impl Iterator<Item = CentralForm> {
    (1..=bound)
        .flat_map(abelian_types)
        .flat_map(|orders| {
            let plus = abelian(&orders);
            let auts = enumerate_group(&aut_abelian_generators(&plus).unwrap(), u64::MAX).unwrap();
            let n = plus.n();
            let auts2 = auts.clone();
            auts.into_iter().flat_map(move |phi| {
                let plus = plus.clone();
                let auts2 = auts2.clone();
                auts2.into_iter().flat_map(move |psi| {
                    let plus = plus.clone();
                    let phi = phi.clone();
                    (0..n).map(move |c| CentralForm {
                        plus: plus.clone(),
                        phi: phi.clone(),
                        psi: psi.clone(),
                        c,
                    })
                })
            })
        })
}

/// An automorphism of `prod Z_{m_i}` given by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutSpec {
    Identity,
    Negation,
    /// Multiplication by an integer unit.
    Scalar(i64),
    /// Explicit image list.
    Images(Vec<usize>),
}

impl FromStr for AutSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "id" => Ok(AutSpec::Identity),
            "neg" => Ok(AutSpec::Negation),
            _ if s.contains(',') => s
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(AutSpec::Images)
                .map_err(|_| Error::InvalidTable(format!("bad image list {s:?}"))),
            _ => s
                .parse::<i64>()
                .map(AutSpec::Scalar)
                .map_err(|_| Error::InvalidTable(format!("bad automorphism {s:?}"))),
        }
    }
}

impl fmt::Display for AutSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutSpec::Identity => f.write_str("id"),
            AutSpec::Negation => f.write_str("neg"),
            AutSpec::Scalar(k) => write!(f, "{k}"),
            AutSpec::Images(v) => {
                let parts: Vec<String> = v.iter().map(usize::to_string).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl AutSpec {
    pub fn to_perm(&self, plus: &GroupTable) -> Result<Perm> {
        let n = plus.n();
        let p = match self {
            AutSpec::Identity => Perm::identity(n),
            AutSpec::Negation => Perm::from_images((0..n).map(|x| plus.inv(x)).collect())?,
            AutSpec::Scalar(k) => {
                let exp = crate::group::element_orders(plus).into_iter().max().unwrap_or(1) as i64;
                let k = k.rem_euclid(exp) as u64;
                Perm::from_images((0..n).map(|x| plus.pow(x, k)).collect())
                    .map_err(|_| Error::NotAutomorphism)?
            }
            AutSpec::Images(v) => Perm::from_images(v.clone())?,
        };
        if is_automorphism(plus, &p) {
            Ok(p)
        } else {
            Err(Error::NotAutomorphism)
        }
    }
}

/// The central quasigroup over `prod Z_{orders[i]}` with the named
/// automorphisms and constant.
pub fn gen_central(orders: &[usize], phi: &AutSpec, psi: &AutSpec, c: usize) -> Result<QuasigroupTable> {
    let plus = abelian(orders);
    if c >= plus.n() {
        return Err(Error::InvalidTable(format!("constant {c} out of range")));
    }
    build_central(&plus, &phi.to_perm(&plus)?, &psi.to_perm(&plus)?, c)
}
