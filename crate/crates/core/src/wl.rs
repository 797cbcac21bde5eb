//! k-dimensional Weisfeiler-Leman refinement on group tables.
//!
//! Tuples are indexed lexicographically, first coordinate most significant.
//! Color ids are assigned by sorting the distinct signatures of a round, and
//! a comparison of several groups shares one palette so ids line up.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::table::GroupTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Version {
    I,
    II,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Counting,
    CountFree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounds {
    UntilStable,
    Max(usize),
}

impl fmt::Display for Version {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Version::I => "I",
            Version::II => "II",
        })
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Counting => "counting",
            Mode::CountFree => "count-free",
        })
    }
}

pub const MAX_K: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WLConfig {
    pub k: usize,
    pub rounds: Rounds,
    pub version: Version,
    pub mode: Mode,
    pub mem_cap: u64,
    pub exec: Exec,
}

impl WLConfig {
    pub fn new(k: usize, version: Version, mode: Mode) -> Self {
        WLConfig {
            k,
            rounds: Rounds::UntilStable,
            version,
            mode,
            mem_cap: 100_000_000,
            exec: Exec::default(),
        }
    }

    pub fn with_rounds(mut self, rounds: Rounds) -> Self {
        self.rounds = rounds;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    /// Refuses dimensions outside `1..=MAX_K` and tuple spaces whose color
    /// arrays would exceed the memory cap.
    fn check(&self, orders: &[usize]) -> Result<()> {
        if self.k == 0 || self.k > MAX_K {
            return Err(Error::BudgetExceeded(format!(
                "WL dimension {} outside 1..={MAX_K}",
                self.k
            )));
        }
        let mut bytes: u128 = 0;
        for &n in orders {
            bytes += (n as u128).pow(self.k as u32) * 4;
        }
        if bytes > self.mem_cap as u128 {
            return Err(Error::BudgetExceeded(format!(
                "{bytes} bytes of tuple colors exceed the cap of {}",
                self.mem_cap
            )));
        }
        Ok(())
    }
}

/// Colors of all k-tuples of one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    k: usize,
    n: usize,
    round: usize,
    palette: usize,
    colors: Vec<u32>,
}

impl Coloring {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn round(&self) -> usize {
        self.round
    }

    /// Size of the palette the ids are drawn from. For a joint coloring this
    /// counts colors of every group involved.
    pub fn palette_size(&self) -> usize {
        self.palette
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, tuple: &[usize]) -> u32 {
        self.colors[tuple_index(self.n, tuple)]
    }

    /// Number of tuples of each color id.
    pub fn histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.palette];
        for &c in &self.colors {
            h[c as usize] += 1;
        }
        h
    }

    /// Sizes of the nonempty classes, in color-id order.
    pub fn class_sizes(&self) -> Vec<usize> {
        self.histogram().into_iter().filter(|&s| s > 0).collect()
    }

    pub fn num_classes(&self) -> usize {
        self.class_sizes().len()
    }

    /// Whether every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &Coloring) -> bool {
        assert_eq!(self.colors.len(), other.colors.len());
        let mut parent: HashMap<u32, u32> = HashMap::new();
        self.colors
            .iter()
            .zip(&other.colors)
            .all(|(&a, &b)| *parent.entry(a).or_insert(b) == b)
    }

    pub fn same_partition(&self, other: &Coloring) -> bool {
        self.refines(other) && other.refines(self)
    }
}

pub fn tuple_index(n: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * n + x)
}

pub fn tuple_at(n: usize, k: usize, mut idx: usize, out: &mut [usize]) {
    for i in (0..k).rev() {
        out[i] = idx % n;
        idx /= n;
    }
}

/// The subgroup generated by a tuple, laid out as its labeled Cayley graph.
///
/// Elements are numbered by first visit in a breadth-first search from the
/// identity, multiplying on the right by the tuple entries in order. The
/// serialization lists, for every element in visit order, the numbers of
/// its right products with the tuple entries. The identity's row records
/// where each entry sits, so equal entries show up as equal numbers. Two
/// tuples share a form exactly when the map between them extends to an
/// isomorphism of the generated subgroups.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkedForm {
    rows: Vec<u32>,
    k: usize,
}

impl MarkedForm {
    pub fn new(g: &GroupTable, tuple: &[usize]) -> Self {
        let mut index = vec![u32::MAX; g.n()];
        Self::below(g, tuple, None, &mut index).expect("no bound given")
    }

    /// The form of `tuple`, or `None` as soon as it is seen not to be less
    /// than `bound`. `index` must have length n and be all `u32::MAX`; it
    /// is left that way.
    pub(crate) fn below(
        g: &GroupTable,
        tuple: &[usize],
        bound: Option<&MarkedForm>,
        index: &mut [u32],
    ) -> Option<Self> {
        let k = tuple.len();
        let e = g.identity();
        let mut order = vec![e];
        index[e] = 0;
        let mut rows: Vec<u32> = Vec::with_capacity(k * 4);
        let mut decided = bound.is_none();
        let mut head = 0;
        let mut result = true;
        'bfs: while head < order.len() {
            let x = order[head];
            head += 1;
            for &t in tuple {
                let y = g.mul(x, t);
                if index[y] == u32::MAX {
                    index[y] = order.len() as u32;
                    order.push(y);
                }
                let v = index[y];
                if !decided {
                    let b = bound.unwrap().rows.get(rows.len()).copied();
                    match b {
                        Some(b) if v < b => decided = true,
                        Some(b) if v == b => {}
                        _ => {
                            result = false;
                            break 'bfs;
                        }
                    }
                }
                rows.push(v);
            }
        }
        for &x in &order {
            index[x] = u32::MAX;
        }
        // a tie with the bound is not below it
        (result && decided).then_some(MarkedForm { rows, k })
    }

    pub fn subgroup_order(&self) -> usize {
        self.rows.len().checked_div(self.k).unwrap_or(1)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.rows
    }
}

const CHUNK: usize = 1 << 14;

/// Computes a signature per tuple of every group and numbers the distinct
/// signatures in sorted order.
fn assign<K, F>(exec: Exec, sizes: &[usize], sig: F) -> (Vec<Vec<u32>>, usize)
where
    K: Ord + Hash + Clone + Send,
    F: Fn(usize, usize) -> K + Sync + Send,
{
    let mut ids: HashMap<K, u32> = HashMap::new();
    let mut keys: Vec<K> = Vec::new();
    let mut provisional: Vec<Vec<u32>> = Vec::with_capacity(sizes.len());
    for (gi, &total) in sizes.iter().enumerate() {
        let mut out = Vec::with_capacity(total);
        let mut start = 0;
        while start < total {
            let end = (start + CHUNK).min(total);
            let sigs = par::map_range(exec, start..end, |i| sig(gi, i));
            for s in sigs {
                let next = keys.len() as u32;
                let id = *ids.entry(s.clone()).or_insert_with(|| {
                    keys.push(s);
                    next
                });
                out.push(id);
            }
            start = end;
        }
        provisional.push(out);
    }
    drop(ids);
    let mut order: Vec<u32> = (0..keys.len() as u32).collect();
    order.sort_by(|&a, &b| keys[a as usize].cmp(&keys[b as usize]));
    let mut rank = vec![0u32; keys.len()];
    for (r, &p) in order.iter().enumerate() {
        rank[p as usize] = r as u32;
    }
    for v in &mut provisional {
        for c in v.iter_mut() {
            *c = rank[*c as usize];
        }
    }
    (provisional, keys.len())
}

fn version_one_signature(g: &GroupTable, tuple: &[usize]) -> Vec<u64> {
    let k = tuple.len();
    let bits = k * k + k * k * k;
    let mut out = vec![0u64; bits.div_ceil(64)];
    let mut set = |b: usize| out[b / 64] |= 1 << (b % 64);
    for i in 0..k {
        for j in 0..k {
            if tuple[i] == tuple[j] {
                set(i * k + j);
            }
        }
    }
    for i in 0..k {
        for j in 0..k {
            let p = g.mul(tuple[i], tuple[j]);
            for (l, &t) in tuple.iter().enumerate() {
                if p == t {
                    set(k * k + (i * k + j) * k + l);
                }
            }
        }
    }
    out
}

/// Round-0 colorings of several groups over a shared palette.
pub fn initial_joint(groups: &[&GroupTable], config: &WLConfig) -> Result<Vec<Coloring>> {
    let sizes: Vec<usize> = groups.iter().map(|g| g.n()).collect();
    config.check(&sizes)?;
    let k = config.k;
    let totals: Vec<usize> = sizes.iter().map(|&n| n.pow(k as u32)).collect();
    let (colors, palette) = match config.version {
        Version::I => assign(config.exec, &totals, |gi, idx| {
            let mut t = [0usize; MAX_K];
            tuple_at(sizes[gi], k, idx, &mut t[..k]);
            version_one_signature(groups[gi], &t[..k])
        }),
        Version::II => assign(config.exec, &totals, |gi, idx| {
            let mut t = [0usize; MAX_K];
            tuple_at(sizes[gi], k, idx, &mut t[..k]);
            MarkedForm::new(groups[gi], &t[..k])
        }),
    };
    Ok(wrap(k, &sizes, 0, palette, colors))
}

fn wrap(k: usize, sizes: &[usize], round: usize, palette: usize, colors: Vec<Vec<u32>>) -> Vec<Coloring> {
    colors
        .into_iter()
        .zip(sizes)
        .map(|(colors, &n)| Coloring {
            k,
            n,
            round,
            palette,
            colors,
        })
        .collect()
}

pub fn initial_coloring(g: &GroupTable, config: &WLConfig) -> Result<Coloring> {
    Ok(initial_joint(&[g], config)?.remove(0))
}

/// One refinement round applied jointly. Each tuple's new signature is its
/// old color followed by the multiset (counting) or set (count-free) over
/// `x` in its own group of the colors of the k tuples obtained by putting
/// `x` in one coordinate.
pub fn refine_joint(colorings: &[Coloring], mode: Mode, exec: Exec) -> Vec<Coloring> {
    let Some(first) = colorings.first() else {
        return Vec::new();
    };
    let k = first.k;
    let palette = first.palette as u128;
    assert!(
        colorings.iter().all(|c| c.k == k && c.palette == first.palette),
        "colorings do not share a palette"
    );
    assert!(
        palette.checked_pow(k as u32).is_some(),
        "palette too large to pack"
    );
    let sizes: Vec<usize> = colorings.iter().map(|c| c.n).collect();
    let totals: Vec<usize> = colorings.iter().map(|c| c.colors.len()).collect();
    let (colors, new_palette) = assign(exec, &totals, |gi, idx| {
        let c = &colorings[gi];
        let n = sizes[gi];
        let mut t = [0usize; MAX_K];
        tuple_at(n, k, idx, &mut t[..k]);
        let mut place = [0usize; MAX_K];
        let mut p = 1;
        for i in (0..k).rev() {
            place[i] = p;
            p *= n;
        }
        let mut sig: Vec<u128> = Vec::with_capacity(n + 1);
        for x in 0..n {
            let mut packed: u128 = 0;
            for i in 0..k {
                let j = idx - t[i] * place[i] + x * place[i];
                packed = packed * palette + c.colors[j] as u128;
            }
            sig.push(packed);
        }
        sig.sort_unstable();
        if mode == Mode::CountFree {
            sig.dedup();
        }
        sig.insert(0, c.colors[idx] as u128);
        sig
    });
    wrap(k, &sizes, first.round + 1, new_palette, colors)
}

pub fn refine_step(c: &Coloring, mode: Mode) -> Coloring {
    refine_joint(std::slice::from_ref(c), mode, Exec::default()).remove(0)
}

/// Refines until the joint partition stops changing or the round cap is
/// hit. Returns the colorings and the round they are from.
pub fn stable_joint(groups: &[&GroupTable], config: &WLConfig) -> Result<(Vec<Coloring>, usize)> {
    let mut current = initial_joint(groups, config)?;
    loop {
        let round = current[0].round;
        if let Rounds::Max(r) = config.rounds {
            if round >= r {
                return Ok((current, round));
            }
        }
        let next = refine_joint(&current, config.mode, config.exec);
        if next[0].palette == current[0].palette {
            return Ok((current, round));
        }
        current = next;
    }
}

pub fn stable_coloring(g: &GroupTable, config: &WLConfig) -> Result<(Coloring, usize)> {
    let (mut cs, r) = stable_joint(&[g], config)?;
    Ok((cs.remove(0), r))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distinction {
    pub distinguished: bool,
    /// A color whose multiplicity (counting) or presence (count-free)
    /// differs between the two groups.
    pub witness_color: Option<u32>,
    /// The first round at which the groups were told apart, or the last
    /// round computed.
    pub round: usize,
    pub class_sizes: [Vec<usize>; 2],
}

fn witness(a: &Coloring, b: &Coloring, mode: Mode) -> Option<u32> {
    let (ha, hb) = (a.histogram(), b.histogram());
    (0..ha.len())
        .find(|&c| match mode {
            Mode::Counting => ha[c] != hb[c],
            Mode::CountFree => (ha[c] > 0) != (hb[c] > 0),
        })
        .map(|c| c as u32)
}

/// Runs both groups through one joint coloring and reports whether some
/// color class tells them apart. Stops at the first round that does.
pub fn wl_distinguishes(g: &GroupTable, h: &GroupTable, config: &WLConfig) -> Result<Distinction> {
    if g.n() != h.n() {
        return Ok(Distinction {
            distinguished: true,
            witness_color: None,
            round: 0,
            class_sizes: [Vec::new(), Vec::new()],
        });
    }
    let mut current = initial_joint(&[g, h], config)?;
    loop {
        let round = current[0].round;
        let w = witness(&current[0], &current[1], config.mode);
        let done = w.is_some() || matches!(config.rounds, Rounds::Max(r) if round >= r);
        let next = if done {
            None
        } else {
            let next = refine_joint(&current, config.mode, config.exec);
            (next[0].palette != current[0].palette).then_some(next)
        };
        match next {
            Some(next) => current = next,
            None => {
                return Ok(Distinction {
                    distinguished: w.is_some(),
                    witness_color: w,
                    round,
                    class_sizes: [current[0].class_sizes(), current[1].class_sizes()],
                })
            }
        }
    }
}

/// The smallest `(k, r)` with `k` in `ks` at which the given version and
/// mode tell `g` and `h` apart, searching dimensions in order.
pub fn minimal_distinguishing(
    g: &GroupTable,
    h: &GroupTable,
    ks: std::ops::RangeInclusive<usize>,
    version: Version,
    mode: Mode,
    exec: Exec,
) -> Result<Option<(usize, usize)>> {
    for k in ks {
        let config = WLConfig::new(k, version, mode).with_exec(exec);
        let d = wl_distinguishes(g, h, &config)?;
        if d.distinguished {
            return Ok(Some((k, d.round)));
        }
    }
    Ok(None)
}
