//! Cayley tables: the raw operation table, validated quasigroups and groups,
//! and the plain-text table format.

use std::fmt::Write as _;

use crate::error::{Error, Line, Result};
use crate::perm::Perm;

/// An `n x n` operation table over element indices `0..n`; row is the left
/// operand.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MulTable {
    n: usize,
    tab: Vec<u32>,
}

impl MulTable {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTable("table must have at least one element".into()));
        }
        if entries.len() != n * n {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, found {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range 0..{n}")));
        }
        Ok(MulTable {
            n,
            tab: entries.into_iter().map(|v| v as u32).collect(),
        })
    }

    /// Build from a closure; panics if `f` leaves `0..n`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        assert!(n >= 1);
        let mut tab = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let v = f(a, b);
                assert!(v < n, "table entry {v} out of range 0..{n}");
                tab.push(v as u32);
            }
        }
        MulTable { n, tab }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.tab[a * self.n + b] as usize
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.tab[a * self.n..(a + 1) * self.n]
    }

    pub fn entries(&self) -> &[u32] {
        &self.tab
    }

    /// Relabel elements by `pi`: the result satisfies
    /// `r[pi(x)][pi(y)] = pi(t[x][y])`.
    pub fn relabel(&self, pi: &Perm) -> MulTable {
        assert_eq!(pi.degree(), self.n, "relabeling has wrong degree");
        let n = self.n;
        let mut tab = vec![0u32; n * n];
        for x in 0..n {
            let px = pi.apply(x);
            for y in 0..n {
                tab[px * n + pi.apply(y)] = pi.apply(self.get(x, y)) as u32;
            }
        }
        MulTable { n, tab }
    }

    fn find_latin_violation(&self) -> Option<(Line, usize)> {
        let n = self.n;
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let v = self.get(a, b);
                if seen[v] == a {
                    return Some((Line::Row(a), v));
                }
                seen[v] = a;
            }
        }
        seen.fill(usize::MAX);
        for b in 0..n {
            for a in 0..n {
                let v = self.get(a, b);
                if seen[v] == b {
                    return Some((Line::Col(b), v));
                }
                seen[v] = b;
            }
        }
        None
    }
}

/// A Latin square together with its left and right division tables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuasigroupTable {
    base: MulTable,
    ldiv: Vec<u32>,
    rdiv: Vec<u32>,
}

/// Checks the Latin-square property and builds the division tables.
pub fn validate_quasigroup(t: MulTable) -> Result<QuasigroupTable> {
    if let Some((line, value)) = t.find_latin_violation() {
        return Err(Error::NotLatinSquare { line, value });
    }
    let n = t.n;
    let mut ldiv = vec![0u32; n * n];
    let mut rdiv = vec![0u32; n * n];
    for a in 0..n {
        for x in 0..n {
            let b = t.get(a, x);
            // a * x = b  =>  a \ b = x
            ldiv[a * n + b] = x as u32;
            // x * a = c  =>  c / a = x
            let c = t.get(x, a);
            rdiv[c * n + a] = x as u32;
        }
    }
    Ok(QuasigroupTable { base: t, ldiv, rdiv })
}

impl QuasigroupTable {
    #[inline]
    pub fn n(&self) -> usize {
        self.base.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.base.get(a, b)
    }

    /// `a \ b`: the unique `x` with `a * x = b`.
    #[inline]
    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        self.ldiv[a * self.base.n + b] as usize
    }

    /// `b / a`: the unique `y` with `y * a = b`.
    #[inline]
    pub fn rdiv(&self, b: usize, a: usize) -> usize {
        self.rdiv[b * self.base.n + a] as usize
    }

    pub fn table(&self) -> &MulTable {
        &self.base
    }

    pub fn into_table(self) -> MulTable {
        self.base
    }

    pub fn relabel(&self, pi: &Perm) -> QuasigroupTable {
        validate_quasigroup(self.base.relabel(pi)).expect("relabeling preserves Latin squares")
    }
}

/// A validated group table with identity and inverses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupTable {
    q: QuasigroupTable,
    e: usize,
    inv: Vec<u32>,
}

/// Validates a group table: Latin square, then associativity, then identity.
///
/// Associativity is checked before the identity so that a Latin square such
/// as `x - y` reports the offending triple.
pub fn validate_group(t: MulTable) -> Result<GroupTable> {
    let q = validate_quasigroup(t)?;
    let n = q.n();
    for a in 0..n {
        for b in 0..n {
            let ab = q.mul(a, b);
            for c in 0..n {
                if q.mul(ab, c) != q.mul(a, q.mul(b, c)) {
                    return Err(Error::NotAssociative { triple: (a, b, c) });
                }
            }
        }
    }
    group_from_associative(q)
}

/// Finishes validation of a quasigroup already known to be associative.
pub(crate) fn group_from_associative(q: QuasigroupTable) -> Result<GroupTable> {
    let n = q.n();
    // In an associative quasigroup, any idempotent is the identity.
    let e = (0..n).find(|&x| q.mul(x, x) == x).ok_or(Error::NoIdentity)?;
    if (0..n).any(|x| q.mul(e, x) != x || q.mul(x, e) != x) {
        return Err(Error::NoIdentity);
    }
    let inv = (0..n).map(|x| q.ldiv(x, e) as u32).collect();
    Ok(GroupTable { q, e, inv })
}

impl GroupTable {
    #[inline]
    pub fn n(&self) -> usize {
        self.q.n()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.q.mul(a, b)
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.e
    }

    pub fn table(&self) -> &MulTable {
        self.q.table()
    }

    pub fn quasigroup(&self) -> &QuasigroupTable {
        &self.q
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.n();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        self.mul(self.mul(ab, self.inv(a)), self.inv(b))
    }

    /// `x g x^-1`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    /// `g^k` by repeated squaring.
    pub fn pow(&self, g: usize, mut k: u64) -> usize {
        let mut acc = self.e;
        let mut base = g;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn relabel(&self, pi: &Perm) -> GroupTable {
        let q = self.q.relabel(pi);
        let e = pi.apply(self.e);
        let mut inv = vec![0u32; self.n()];
        for x in 0..self.n() {
            inv[pi.apply(x)] = pi.apply(self.inv(x)) as u32;
        }
        GroupTable { q, e, inv }
    }
}

/// The two kinds of table the text format can declare.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Group,
    Quasigroup,
}

impl TableKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TableKind::Group => "group",
            TableKind::Quasigroup => "quasigroup",
        }
    }
}

/// Parses `<kind> <n>` followed by `n` rows of `n` indices; lines starting
/// with `#` are comments.
pub fn parse_table(text: &str) -> Result<(TableKind, MulTable)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim_start().starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let mut words = header.split_whitespace();
    let kind = match words.next() {
        Some("group") => TableKind::Group,
        Some("quasigroup") => TableKind::Quasigroup,
        other => {
            return Err(Error::Parse {
                line: hline,
                msg: format!("expected `group` or `quasigroup`, found {other:?}"),
            })
        }
    };
    let n: usize = words
        .next()
        .and_then(|w| w.parse().ok())
        .filter(|&n| n >= 1)
        .ok_or(Error::Parse {
            line: hline,
            msg: "expected a positive element count".into(),
        })?;
    if words.next().is_some() {
        return Err(Error::Parse {
            line: hline,
            msg: "trailing tokens in header".into(),
        });
    }
    let mut entries = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (lno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if rows == n {
            return Err(Error::Parse {
                line: lno,
                msg: format!("more than {n} rows"),
            });
        }
        let before = entries.len();
        for w in line.split_whitespace() {
            let v: usize = w.parse().map_err(|_| Error::Parse {
                line: lno,
                msg: format!("not an index: {w:?}"),
            })?;
            if v >= n {
                return Err(Error::Parse {
                    line: lno,
                    msg: format!("index {v} out of range 0..{n}"),
                });
            }
            entries.push(v);
        }
        if entries.len() - before != n {
            return Err(Error::Parse {
                line: lno,
                msg: format!("expected {n} entries, found {}", entries.len() - before),
            });
        }
        rows += 1;
    }
    if rows != n {
        return Err(Error::Parse {
            line: text.lines().count(),
            msg: format!("expected {n} rows, found {rows}"),
        });
    }
    Ok((kind, MulTable::new(n, entries)?))
}

pub fn write_table(kind: TableKind, t: &MulTable) -> String {
    let n = t.n();
    let mut out = String::with_capacity(n * n * 4 + 16);
    let _ = writeln!(out, "{} {}", kind.as_str(), n);
    for a in 0..n {
        for (i, v) in t.row(a).iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}
