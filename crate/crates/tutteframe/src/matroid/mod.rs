//! Matroids given by rank oracles on bitmask subsets.

mod dsl;
pub mod tutte;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::Limits;

pub use tutte::{mobius_invariant, tutte_deletion_contraction, tutte_direct};

/// Subsets of the ground set; element `e` (0-based) is bit `e`.
pub type Mask = u64;

pub const MAX_ELEMENTS: usize = 64;

const MEMO_LIMIT: usize = 1 << 22;

pub fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

fn remap(mask: Mask, elements: &[usize]) -> Mask {
    bits(mask).fold(0, |acc, b| acc | (1u64 << elements[b]))
}

enum Oracle {
    Uniform { r: usize },
    /// Elements in parallel classes; `None` marks a loop. Rank counts classes hit, capped.
    Classes { class: Vec<Option<usize>>, cap: usize },
    /// Column vectors over GF(p).
    Linear { p: u32, vectors: Vec<Vec<u32>> },
    Graphic { vertices: usize, edges: Vec<(usize, usize)> },
    /// Prefix weights `w_j` of the defining bit sequence (weight of the first `j+1` bits).
    Nested { prefix: Vec<usize> },
    Bases { bases: Vec<Mask> },
    Sum { parts: Vec<(Matroid, usize)> },
    Restrict { base: Matroid, elements: Vec<usize> },
    Contract { base: Matroid, elements: Vec<usize>, contracted: Mask, drop: usize },
    Truncate { base: Matroid, rank: usize },
}

struct Inner {
    n: usize,
    r: usize,
    spec: String,
    oracle: Oracle,
    memo: Option<DashMap<Mask, u8>>,
}

/// A matroid on `{1, ..., n}` (bits `0..n`) with a rank oracle.
#[derive(Clone)]
pub struct Matroid {
    inner: Arc<Inner>,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid({}, n={}, r={})", self.inner.spec, self.inner.n, self.inner.r)
    }
}

impl Matroid {
    fn build(n: usize, spec: String, oracle: Oracle) -> Result<Matroid> {
        if n > MAX_ELEMENTS {
            return Err(Error::Range(format!("{n} elements; at most {MAX_ELEMENTS} supported")));
        }
        let memo = matches!(oracle, Oracle::Linear { .. } | Oracle::Bases { .. }).then(DashMap::new);
        let mut inner = Inner { n, r: 0, spec, oracle, memo };
        inner.r = inner.rank_raw(full_mask(n));
        Ok(Matroid { inner: Arc::new(inner) })
    }

    /// Parse the matroid description language.
    pub fn construct(spec: &str) -> Result<Matroid> {
        dsl::parse(spec)
    }

    pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
        if r > n {
            return Err(Error::Parse(format!("uniform:{r},{n} has rank above size")));
        }
        Matroid::build(n, format!("uniform:{r},{n}"), Oracle::Uniform { r })
    }

    /// `U_{0,loops} + U_{1,m1} + ... + U_{1,mk}`.
    pub fn multipoint(loops: usize, classes: &[usize]) -> Result<Matroid> {
        let mut class = vec![None; loops];
        for (c, &m) in classes.iter().enumerate() {
            class.extend(std::iter::repeat_n(Some(c), m));
        }
        let spec = format!("multipoint:{loops};{}", join(classes));
        Matroid::build(class.len(), spec, Oracle::Classes { class, cap: classes.len() })
    }

    /// Rank-2 matroid whose parallel classes have the given sizes.
    pub fn line(classes: &[usize]) -> Result<Matroid> {
        if classes.contains(&0) {
            return Err(Error::Parse("line classes must be non-empty".into()));
        }
        let mut class = Vec::new();
        for (c, &m) in classes.iter().enumerate() {
            class.extend(std::iter::repeat_n(Some(c), m));
        }
        Matroid::build(class.len(), format!("line:{}", join(classes)), Oracle::Classes { class, cap: 2 })
    }

    /// Columns over the prime field GF(p).
    pub fn linear(p: u32, vectors: Vec<Vec<u32>>, spec: String) -> Result<Matroid> {
        let vectors = vectors
            .into_iter()
            .map(|v| v.into_iter().map(|c| c % p).collect())
            .collect::<Vec<Vec<u32>>>();
        Matroid::build(vectors.len(), spec, Oracle::Linear { p, vectors })
    }

    /// Cycle matroid of a multigraph on vertices `0..vertices`.
    pub fn graphic(vertices: usize, edges: Vec<(usize, usize)>, spec: String) -> Result<Matroid> {
        Matroid::build(edges.len(), spec, Oracle::Graphic { vertices, edges })
    }

    /// `S` independent iff `|S ∩ {1..j}| <= weight(b1..bj)` for every `j`.
    pub fn nested(bits: &[bool]) -> Result<Matroid> {
        let prefix: Vec<usize> = bits
            .iter()
            .scan(0, |w, &b| {
                *w += b as usize;
                Some(*w)
            })
            .collect();
        let s: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        Matroid::build(bits.len(), format!("echelon:{s}"), Oracle::Nested { prefix })
    }

    /// Explicit list of bases (0-based masks). Checks the exchange axiom.
    pub fn from_bases(n: usize, r: usize, bases: Vec<Mask>, spec: String) -> Result<Matroid> {
        let bad = |why: String| Err(Error::Parse(format!("inconsistent base list: {why}")));
        if bases.is_empty() {
            return bad("no bases".into());
        }
        let set: std::collections::HashSet<Mask> = bases.iter().copied().collect();
        for &b in &bases {
            if b.count_ones() as usize != r {
                return bad(format!("a base has {} elements, expected {r}", b.count_ones()));
            }
            if b & !full_mask(n) != 0 {
                return bad("element outside 1..N".into());
            }
        }
        for &b1 in &set {
            for &b2 in &set {
                for x in bits(b1 & !b2) {
                    let ok = bits(b2 & !b1).any(|y| set.contains(&((b1 & !(1 << x)) | (1 << y))));
                    if !ok {
                        return bad("basis exchange fails".into());
                    }
                }
            }
        }
        let mut bases: Vec<Mask> = set.into_iter().collect();
        bases.sort_unstable();
        Matroid::build(n, spec, Oracle::Bases { bases })
    }

    pub fn direct_sum(parts: &[Matroid]) -> Result<Matroid> {
        let mut offset = 0;
        let mut list = Vec::new();
        for p in parts {
            list.push((p.clone(), offset));
            offset += p.n();
        }
        let spec = format!("sum({})", parts.iter().map(|p| p.spec()).collect::<Vec<_>>().join("|"));
        Matroid::build(offset, spec, Oracle::Sum { parts: list })
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn r(&self) -> usize {
        self.inner.r
    }

    /// The canonical construction string.
    pub fn spec(&self) -> &str {
        &self.inner.spec
    }

    pub fn ground(&self) -> Mask {
        full_mask(self.inner.n)
    }

    pub fn rank(&self, a: Mask) -> usize {
        match &self.inner.memo {
            None => self.inner.rank_raw(a),
            Some(memo) => {
                if let Some(v) = memo.get(&a) {
                    return *v as usize;
                }
                let v = self.inner.rank_raw(a);
                if memo.len() < MEMO_LIMIT {
                    memo.insert(a, v as u8);
                }
                v
            }
        }
    }

    /// Rank without touching the memo table.
    pub fn rank_uncached(&self, a: Mask) -> usize {
        self.inner.rank_raw(a)
    }

    pub fn closure(&self, a: Mask) -> Mask {
        let ra = self.rank(a);
        let mut out = a;
        for e in bits(self.ground() & !a) {
            if self.rank(a | (1 << e)) == ra {
                out |= 1 << e;
            }
        }
        out
    }

    pub fn loops(&self) -> Mask {
        self.closure(0)
    }

    pub fn is_flat(&self, a: Mask) -> bool {
        self.closure(a) == a
    }

    pub fn restrict(&self, a: Mask) -> Result<Matroid> {
        self.check_subset(a)?;
        let elements: Vec<usize> = bits(a).collect();
        let spec = format!("{}/restrict:{a:x}", self.spec());
        Matroid::build(elements.len(), spec, Oracle::Restrict { base: self.clone(), elements })
    }

    pub fn delete(&self, a: Mask) -> Result<Matroid> {
        self.restrict(self.ground() & !a)
    }

    pub fn contract(&self, a: Mask) -> Result<Matroid> {
        self.check_subset(a)?;
        let elements: Vec<usize> = bits(self.ground() & !a).collect();
        let spec = format!("{}/contract:{a:x}", self.spec());
        let drop = self.rank(a);
        Matroid::build(
            elements.len(),
            spec,
            Oracle::Contract { base: self.clone(), elements, contracted: a, drop },
        )
    }

    pub fn truncate(&self, steps: usize) -> Result<Matroid> {
        if steps > self.r() {
            return Err(Error::Range(format!("truncation by {steps} exceeds rank {}", self.r())));
        }
        if steps == 0 {
            return Ok(self.clone());
        }
        let spec = format!("{}/truncate:{steps}", self.spec());
        Matroid::build(self.n(), spec, Oracle::Truncate { base: self.clone(), rank: self.r() - steps })
    }

    fn check_subset(&self, a: Mask) -> Result<()> {
        if a & !self.ground() != 0 {
            return Err(Error::Range(format!("subset {a:x} outside the ground set")));
        }
        Ok(())
    }
}

impl Inner {
    fn rank_raw(&self, a: Mask) -> usize {
        match &self.oracle {
            Oracle::Uniform { r } => (a.count_ones() as usize).min(*r),
            Oracle::Classes { class, cap } => {
                let mut hit = 0u64;
                for e in bits(a) {
                    if let Some(c) = class[e] {
                        hit |= 1 << c;
                    }
                }
                (hit.count_ones() as usize).min(*cap)
            }
            Oracle::Linear { p, vectors } => linear_rank(*p, bits(a).map(|e| &vectors[e])),
            Oracle::Graphic { vertices, edges } => {
                let mut parent: Vec<usize> = (0..*vertices).collect();
                fn find(parent: &mut [usize], mut v: usize) -> usize {
                    while parent[v] != v {
                        parent[v] = parent[parent[v]];
                        v = parent[v];
                    }
                    v
                }
                let mut rank = 0;
                for e in bits(a) {
                    let (u, v) = edges[e];
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru != rv {
                        parent[ru] = rv;
                        rank += 1;
                    }
                }
                rank
            }
            Oracle::Nested { prefix } => {
                let mut count = 0;
                for e in bits(a) {
                    if count < prefix[e] {
                        count += 1;
                    }
                }
                count
            }
            Oracle::Bases { bases } => bases
                .iter()
                .map(|b| (a & b).count_ones() as usize)
                .max()
                .unwrap_or(0),
            Oracle::Sum { parts } => parts
                .iter()
                .map(|(m, off)| m.rank((a >> off) & m.ground()))
                .sum(),
            Oracle::Restrict { base, elements } => base.rank(remap(a, elements)),
            Oracle::Contract { base, elements, contracted, drop } => {
                base.rank(remap(a, elements) | contracted) - drop
            }
            Oracle::Truncate { base, rank } => base.rank(a).min(*rank),
        }
    }
}

fn linear_rank<'a>(p: u32, vectors: impl Iterator<Item = &'a Vec<u32>>) -> usize {
    let inverse = |v: u32| -> u32 {
        // Fermat: v^(p-2) mod p.
        let mut acc = 1u64;
        let mut base = v as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    };
    let mut rows: Vec<(usize, Vec<u32>)> = Vec::new();
    for v in vectors {
        let mut v = v.clone();
        for (pivot, row) in &rows {
            let c = v[*pivot];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + p - (c * y) % p) % p;
                }
            }
        }
        if let Some(pivot) = v.iter().position(|&c| c != 0) {
            let inv = inverse(v[pivot]);
            for x in v.iter_mut() {
                *x = *x * inv % p;
            }
            rows.push((pivot, v));
        }
    }
    rows.len()
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// A flat with its rank and size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flat {
    pub mask: Mask,
    pub rank: usize,
    pub size: usize,
}

/// The lattice of flats, level by level, with cover relations.
#[derive(Clone, Debug)]
pub struct FlatLattice {
    /// `levels[k]` lists the rank-`k` flats.
    pub levels: Vec<Vec<Mask>>,
    /// `covers[k][i]` lists indices into `levels[k+1]` of the flats covering `levels[k][i]`.
    pub covers: Vec<Vec<Vec<usize>>>,
}

impl FlatLattice {
    pub fn build(m: &Matroid, limits: &Limits) -> Result<FlatLattice> {
        let mut levels = vec![vec![m.loops()]];
        let mut covers = Vec::new();
        let mut total = 1;
        for _ in 0..m.r() {
            let current = levels.last().unwrap();
            let found: Vec<Vec<Mask>> = current
                .par_iter()
                .map(|&f| {
                    let mut seen = f;
                    let mut list = Vec::new();
                    for p in bits(m.ground() & !f) {
                        if seen >> p & 1 == 1 {
                            continue;
                        }
                        let g = m.closure(f | (1 << p));
                        seen |= g;
                        list.push(g);
                    }
                    list
                })
                .collect();
            let mut next: Vec<Mask> = found.iter().flatten().copied().collect();
            next.sort_unstable();
            next.dedup();
            total += next.len();
            if total > limits.flat_count {
                return Err(Error::Cap {
                    what: "flat count",
                    size: total,
                    cap: limits.flat_count,
                    hint: "use the direct or deletion-contraction route",
                });
            }
            let index: HashMap<Mask, usize> = next.iter().enumerate().map(|(i, &g)| (g, i)).collect();
            covers.push(
                found
                    .into_iter()
                    .map(|list| {
                        let mut ids: Vec<usize> = list.iter().map(|g| index[g]).collect();
                        ids.sort_unstable();
                        ids
                    })
                    .collect(),
            );
            levels.push(next);
        }
        Ok(FlatLattice { levels, covers })
    }

    pub fn count(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }
}

/// Flats grouped by rank.
pub fn flats_by_rank(m: &Matroid, limits: &Limits) -> Result<BTreeMap<usize, Vec<Flat>>> {
    let lattice = FlatLattice::build(m, limits)?;
    Ok(lattice
        .levels
        .iter()
        .enumerate()
        .map(|(k, level)| {
            let flats = level
                .iter()
                .map(|&mask| Flat { mask, rank: k, size: mask.count_ones() as usize })
                .collect();
            (k, flats)
        })
        .collect())
}
