//! Permutation groups: orbits with transversals, a deterministic
//! Schreier-Sims stabilizer chain, pointwise stabilizers and the pointwise
//! transporter.

use std::collections::VecDeque;

use crate::perm::Perm;

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
}

impl PermGroup {
    /// Panics if a generator has the wrong degree. An empty list means the
    /// trivial group.
    pub fn new(degree: usize, gens: Vec<Perm>) -> Self {
        assert!(gens.iter().all(|g| g.degree() == degree), "generator degree mismatch");
        let gens = if gens.is_empty() {
            vec![Perm::identity(degree)]
        } else {
            gens
        };
        PermGroup { degree, gens }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    /// Every element, by breadth-first closure. Only for small groups.
    pub fn elements(&self) -> Vec<Perm> {
        let id = Perm::identity(self.degree);
        let mut seen = std::collections::HashSet::from([id.clone()]);
        let mut out = vec![id];
        let mut head = 0;
        while head < out.len() {
            let x = out[head].clone();
            head += 1;
            for s in &self.gens {
                let y = x.then(s);
                if seen.insert(y.clone()) {
                    out.push(y);
                }
            }
        }
        out
    }
}

/// The orbit of `x` with, for each orbit point `y`, a witness `g` with
/// `x^g = y`.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub points: Vec<usize>,
    witness: Vec<Option<Perm>>,
}

impl Orbit {
    pub fn contains(&self, y: usize) -> bool {
        self.witness.get(y).is_some_and(Option::is_some)
    }

    pub fn witness(&self, y: usize) -> Option<&Perm> {
        self.witness.get(y).and_then(Option::as_ref)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub fn orbit_transversal(g: &PermGroup, x: usize) -> Orbit {
    let mut witness: Vec<Option<Perm>> = vec![None; g.degree];
    witness[x] = Some(Perm::identity(g.degree));
    let mut points = vec![x];
    let mut queue = VecDeque::from([x]);
    while let Some(y) = queue.pop_front() {
        for s in &g.gens {
            let z = s.apply(y);
            if witness[z].is_none() {
                witness[z] = Some(witness[y].as_ref().unwrap().then(s));
                points.push(z);
                queue.push_back(z);
            }
        }
    }
    Orbit { points, witness }
}

/// One level of a stabilizer chain: the group fixing all earlier base points.
#[derive(Clone, Debug)]
pub struct Level {
    pub base: usize,
    /// Strong generators added at this level.
    pub gens: Vec<Perm>,
    /// `transversal[y]` maps `base` to `y` and fixes earlier base points.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    pub fn orbit(&self) -> Vec<usize> {
        (0..self.transversal.len())
            .filter(|&y| self.transversal[y].is_some())
            .collect()
    }

    pub fn orbit_len(&self) -> usize {
        self.transversal.iter().filter(|t| t.is_some()).count()
    }

    pub fn representative(&self, y: usize) -> Option<&Perm> {
        self.transversal[y].as_ref()
    }
}

/// A base and strong generating set. Levels with trivial orbits are dropped
/// from [`StabChain::levels`], so each base point is the first point moved
/// by the stabilizer of the previous ones.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

/// Knuth-style incremental Schreier-Sims over the base `0, 1, ..., m-1`.
struct Builder {
    degree: usize,
    levels: Vec<Level>,
}

impl Builder {
    fn new(degree: usize) -> Self {
        let levels = (0..degree)
            .map(|k| {
                let mut transversal = vec![None; degree];
                transversal[k] = Some(Perm::identity(degree));
                Level {
                    base: k,
                    gens: Vec::new(),
                    transversal,
                }
            })
            .collect();
        Builder { degree, levels }
    }

    fn contains_from(&self, k: usize, p: &Perm) -> bool {
        let mut p = p.clone();
        for level in &self.levels[k..] {
            let j = p.apply(level.base);
            match &level.transversal[j] {
                Some(t) => p = p.then(&t.inverse()),
                None => return false,
            }
        }
        p.is_identity()
    }

    /// Adds `p` (which fixes base points `0..k`) to the group at level `k`.
    fn add(&mut self, k: usize, p: Perm) {
        if k >= self.degree || self.contains_from(k, &p) {
            return;
        }
        self.levels[k].gens.push(p.clone());
        let reps: Vec<Perm> = self.levels[k].transversal.iter().flatten().cloned().collect();
        for s in reps {
            self.extend(k, s.then(&p));
        }
    }

    /// Makes the level-`k` transversal account for the image of `p`.
    fn extend(&mut self, k: usize, p: Perm) {
        let mut stack = vec![p];
        while let Some(p) = stack.pop() {
            let j = p.apply(self.levels[k].base);
            match &self.levels[k].transversal[j] {
                None => {
                    self.levels[k].transversal[j] = Some(p.clone());
                    for s in self.levels[k].gens.clone() {
                        stack.push(p.then(&s));
                    }
                }
                Some(t) => {
                    let residue = p.then(&t.inverse());
                    self.add(k + 1, residue);
                }
            }
        }
    }
}

pub fn schreier_sims(g: &PermGroup) -> StabChain {
    let mut b = Builder::new(g.degree);
    for s in &g.gens {
        b.add(0, s.clone());
    }
    let levels = b
        .levels
        .into_iter()
        .filter(|l| l.transversal.iter().flatten().count() > 1)
        .collect();
    StabChain {
        degree: g.degree,
        levels,
    }
}

impl StabChain {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit_len() as u128).product()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.levels.iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    /// Sifts `p` through the chain.
    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let mut p = p.clone();
        for level in &self.levels {
            let j = p.apply(level.base);
            match &level.transversal[j] {
                Some(t) => p = p.then(&t.inverse()),
                None => return false,
            }
        }
        p.is_identity()
    }
}

pub fn group_order(chain: &StabChain) -> u128 {
    chain.order()
}

/// Generators of the subgroup fixing every listed point.
pub fn pointwise_stabilizer(g: &PermGroup, points: &[usize]) -> PermGroup {
    let m = g.degree;
    // Relabel so the listed points come first; the chain's base is then
    // 0, 1, ..., and the strong generators from level |points| on generate
    // the stabilizer.
    let mut order: Vec<usize> = Vec::with_capacity(m);
    let mut used = vec![false; m];
    for &p in points {
        if !used[p] {
            used[p] = true;
            order.push(p);
        }
    }
    let fixed = order.len();
    order.extend((0..m).filter(|&p| !used[p]));
    let sigma = Perm::from_images(order).expect("relabeling is a bijection");
    // sigma: new index -> old point; conjugate g so that new point i plays old sigma(i)
    let sigma_inv = sigma.inverse();
    let conj: Vec<Perm> = g
        .gens
        .iter()
        .map(|s| sigma.then(s).then(&sigma_inv))
        .collect();
    let mut b = Builder::new(m);
    for s in conj {
        b.add(0, s);
    }
    let gens: Vec<Perm> = b.levels[fixed.min(m)..]
        .iter()
        .flat_map(|l| l.gens.iter())
        .map(|s| sigma_inv.then(s).then(&sigma))
        .collect();
    PermGroup::new(m, gens)
}

/// Some `g` with `xs[i]^g = ys[i]` for all `i`, or `None`.
pub fn pointwise_transporter(g: &PermGroup, xs: &[usize], ys: &[usize]) -> Option<Perm> {
    transporter_coset(g, xs, ys).map(|(w, _)| w)
}

/// A transporter together with the pointwise stabilizer of `xs`; the full
/// solution set is the coset `stabilizer * witness`.
pub fn transporter_coset(g: &PermGroup, xs: &[usize], ys: &[usize]) -> Option<(Perm, PermGroup)> {
    assert_eq!(xs.len(), ys.len(), "point sequences differ in length");
    let Some((&x1, rest_x)) = xs.split_first() else {
        return Some((Perm::identity(g.degree), g.clone()));
    };
    let y1 = ys[0];
    let orbit = orbit_transversal(g, x1);
    let w = orbit.witness(y1)?.clone();
    let stab = pointwise_stabilizer(g, &[x1]);
    let w_inv = w.inverse();
    let targets: Vec<usize> = ys[1..].iter().map(|&y| w_inv.apply(y)).collect();
    let (h, rest_stab) = transporter_coset(&stab, rest_x, &targets)?;
    Some((h.then(&w), rest_stab))
}
