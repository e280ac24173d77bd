//! Compositions, bit sequences, the dominance order and principal filters.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::arith::{binom, factorial, Int};
use crate::error::{Error, Result};
use crate::Limits;

/// An `(n, r)`-composition `a0, a1, ..., ar` with `a0 >= 0` and `ai >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("no parts".into()));
        }
        if let Some(i) = parts.iter().skip(1).position(|&p| p == 0) {
            return Err(Error::InvalidComposition(format!(
                "part a{} is zero",
                i + 1
            )));
        }
        Ok(Composition { parts })
    }

    /// The loopless composition `0, a1, ..., ar`.
    pub fn loopless(rest: &[usize]) -> Result<Self> {
        let mut parts = vec![0];
        parts.extend_from_slice(rest);
        Composition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `a_i`, with `i` in `0..=r`.
    pub fn a(&self, i: usize) -> usize {
        self.parts[i]
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn r(&self) -> usize {
        self.parts.len() - 1
    }

    /// `a_{i:j}`: the sum of `a_min(i,j) ..= a_max(i,j)`.
    pub fn range_sum(&self, i: usize, j: usize) -> usize {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        self.parts[lo..=hi].iter().sum()
    }

    /// The same composition with `a0` set to zero.
    pub fn strip_loops(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts[0] = 0;
        Composition { parts }
    }

    /// `0, ar, ..., a1`.
    pub fn reversed(&self) -> Composition {
        let mut parts = vec![0];
        parts.extend(self.parts[1..].iter().rev());
        Composition { parts }
    }

    /// `a! = a0! a1! ... ar!`.
    pub fn factorial_product(&self) -> Int {
        self.parts.iter().map(|&p| factorial(p)).product()
    }

    pub fn to_bits(&self) -> BitSequence {
        let n = self.n();
        let mut bits = 0u64;
        let mut pos = self.parts[0];
        for &p in &self.parts[1..] {
            bits |= 1 << pos;
            pos += p;
        }
        BitSequence { len: n, bits }
    }

    pub fn from_bits(b: &BitSequence) -> Composition {
        let mut parts = vec![0usize];
        for i in 0..b.len {
            if b.get(i) {
                parts.push(1);
            } else {
                *parts.last_mut().unwrap() += 1;
            }
        }
        Composition { parts }
    }

    /// Every `(n, r)`-composition, in the order of [`BitSequence::all`].
    pub fn all(n: usize, r: usize) -> Vec<Composition> {
        BitSequence::all(n, r)
            .iter()
            .map(Composition::from_bits)
            .collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad composition part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

/// A 0/1 sequence of length at most 64.
///
/// Sequences order so that a 1 sorts before a 0 at the first difference;
/// `1^r 0^(n-r)` comes first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BitSequence {
    len: usize,
    bits: u64,
}

impl BitSequence {
    pub const MAX_LEN: usize = 64;

    pub fn new(bits: &[bool]) -> Result<Self> {
        if bits.len() > Self::MAX_LEN {
            return Err(Error::Range(format!("length {} > 64", bits.len())));
        }
        let mut mask = 0u64;
        for (i, &b) in bits.iter().enumerate() {
            if b {
                mask |= 1 << i;
            }
        }
        Ok(BitSequence {
            len: bits.len(),
            bits: mask,
        })
    }

    /// Bit `i` (0-based) is `(mask >> i) & 1`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        debug_assert!(len <= 64 && (len == 64 || mask >> len == 0));
        BitSequence { len, bits: mask }
    }

    pub fn mask(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn get(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    /// Weight of the first `m` bits.
    pub fn prefix_weight(&self, m: usize) -> usize {
        if m >= 64 {
            self.weight()
        } else {
            (self.bits & ((1u64 << m) - 1)).count_ones() as usize
        }
    }

    /// 0-based positions of the one-bits, increasing.
    pub fn ones(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    pub fn with_ones(len: usize, ones: &[usize]) -> Self {
        let bits = ones.iter().fold(0u64, |m, &p| m | (1 << p));
        BitSequence { len, bits }
    }

    /// All `(n, r)`-sequences, in the canonical order.
    pub fn all(n: usize, r: usize) -> Vec<BitSequence> {
        let mut out = Vec::new();
        let mut ones = Vec::with_capacity(r);
        fn rec(n: usize, r: usize, start: usize, ones: &mut Vec<usize>, out: &mut Vec<BitSequence>) {
            if ones.len() == r {
                out.push(BitSequence::with_ones(n, ones));
                return;
            }
            let need = r - ones.len();
            for p in start..=n - need {
                ones.push(p);
                rec(n, r, p + 1, ones, out);
                ones.pop();
            }
        }
        if r <= n {
            rec(n, r, 0, &mut ones, &mut out);
        }
        out
    }
}

impl Ord for BitSequence {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            let diff = self.bits ^ other.bits;
            if diff == 0 {
                Ordering::Equal
            } else {
                let first = diff.trailing_zeros();
                if (self.bits >> first) & 1 == 1 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        })
    }
}

impl PartialOrd for BitSequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("bad bit {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        BitSequence::new(&bits)
    }
}

/// Leftward displacements `s1, ..., sr` of the one-bits relative to a base composition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftVector(pub Vec<usize>);

impl ShiftVector {
    pub fn s(&self, i: usize) -> usize {
        self.0[i - 1]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Clause {
    /// 1-based shift coordinate.
    pub coord: usize,
    pub rel: Relation,
    pub bound: usize,
}

/// Conjunction of clauses on single shift coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SliceConstraint {
    pub clauses: Vec<Clause>,
}

impl SliceConstraint {
    pub fn none() -> Self {
        SliceConstraint::default()
    }

    pub fn eq(coord: usize, bound: usize) -> Self {
        SliceConstraint {
            clauses: vec![Clause {
                coord,
                rel: Relation::Eq,
                bound,
            }],
        }
    }

    pub fn le(coord: usize, bound: usize) -> Self {
        SliceConstraint {
            clauses: vec![Clause {
                coord,
                rel: Relation::Le,
                bound,
            }],
        }
    }

    pub fn and(mut self, other: SliceConstraint) -> Self {
        self.clauses.extend(other.clauses);
        self
    }

    pub fn admits(&self, s: &ShiftVector) -> bool {
        self.clauses.iter().all(|c| {
            let v = s.s(c.coord);
            match c.rel {
                Relation::Eq => v == c.bound,
                Relation::Le => v <= c.bound,
            }
        })
    }

    fn check(&self, r: usize) -> Result<()> {
        for c in &self.clauses {
            if c.coord == 0 || c.coord > r {
                return Err(Error::Range(format!("slice coordinate s{} not in 1..{r}", c.coord)));
            }
        }
        Ok(())
    }
}

impl FromStr for SliceConstraint {
    type Err = Error;

    /// Clauses like `s5<=2` or `s4=0`, separated by commas.
    fn from_str(s: &str) -> Result<Self> {
        let mut clauses = Vec::new();
        for raw in s.split(',') {
            let t: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            if t.is_empty() {
                continue;
            }
            let bad = || Error::Parse(format!("bad slice clause {raw:?}"));
            let t = t.strip_prefix('s').ok_or_else(bad)?;
            let (lhs, rel, rhs) = if let Some((l, r)) = t.split_once("<=") {
                (l, Relation::Le, r)
            } else if let Some((l, r)) = t.split_once('=') {
                (l, Relation::Eq, r)
            } else {
                return Err(bad());
            };
            clauses.push(Clause {
                coord: lhs.parse().map_err(|_| bad())?,
                rel,
                bound: rhs.parse().map_err(|_| bad())?,
            });
        }
        Ok(SliceConstraint { clauses })
    }
}

/// `xi_0, ..., xi_r` with `xi_i = a0 + ... + ai`.
pub fn partial_sums(a: &Composition) -> Vec<usize> {
    a.parts
        .iter()
        .scan(0, |acc, &p| {
            *acc += p;
            Some(*acc)
        })
        .collect()
}

/// `t ⊵ u`: every prefix of `t` has at least the weight of the same prefix of `u`.
pub fn dominates(t: &BitSequence, u: &BitSequence) -> Result<bool> {
    if t.len != u.len || t.weight() != u.weight() {
        return Err(Error::Mismatch(format!(
            "({}, {}) vs ({}, {})",
            t.len,
            t.weight(),
            u.len,
            u.weight()
        )));
    }
    Ok((1..=t.len).all(|m| t.prefix_weight(m) >= u.prefix_weight(m)))
}

/// The shift vector of `b` relative to `a`, or `None` when `b` does not dominate `a`.
pub fn shift_vector(b: &BitSequence, a: &Composition) -> Result<Option<ShiftVector>> {
    let base = a.to_bits();
    if b.len != base.len || b.weight() != base.weight() {
        return Err(Error::Mismatch(format!(
            "sequence ({}, {}) vs composition ({}, {})",
            b.len,
            b.weight(),
            a.n(),
            a.r()
        )));
    }
    let mut shifts = Vec::with_capacity(a.r());
    for (q, p) in b.ones().into_iter().zip(base.ones()) {
        if q > p {
            return Ok(None);
        }
        shifts.push(p - q);
    }
    Ok(Some(ShiftVector(shifts)))
}

/// Membership in `Box(a)`: `s1 <= a0` and `si <= a_{0:i-1} - i + 1`.
pub fn in_box(a: &Composition, s: &ShiftVector) -> bool {
    if s.0.len() != a.r() {
        return false;
    }
    let xi = partial_sums(a);
    s.0.iter().enumerate().all(|(idx, &si)| {
        let i = idx + 1;
        // i-th one sits at 0-based position xi_{i-1}; it may move to position i-1.
        si + i <= xi[i - 1] + 1
    })
}

/// Every element of the principal filter `[a)` with its shift vector, in
/// lexicographic order of shift vectors.
pub fn enumerate_filter(a: &Composition, limits: &Limits) -> Result<Vec<(BitSequence, ShiftVector)>> {
    let mut out = Vec::new();
    for_each_in_filter(a, limits, |b, s| out.push((*b, s.clone())))?;
    Ok(out)
}

/// Visit the filter `[a)` without materializing it.
pub fn for_each_in_filter<F>(a: &Composition, limits: &Limits, mut visit: F) -> Result<()>
where
    F: FnMut(&BitSequence, &ShiftVector),
{
    let n = a.n();
    if n > limits.enumeration_n {
        return Err(Error::Cap {
            what: "filter enumeration length",
            size: n,
            cap: limits.enumeration_n,
            hint: "use a closed-form route",
        });
    }
    let r = a.r();
    let base: Vec<usize> = a.to_bits().ones();
    let mut shifts = vec![0usize; r];
    let mut ones = vec![0usize; r];

    fn rec<F: FnMut(&BitSequence, &ShiftVector)>(
        i: usize,
        n: usize,
        base: &[usize],
        shifts: &mut Vec<usize>,
        ones: &mut Vec<usize>,
        visit: &mut F,
    ) {
        if i == base.len() {
            let b = BitSequence::with_ones(n, ones);
            visit(&b, &ShiftVector(shifts.clone()));
            return;
        }
        let lowest = if i == 0 { 0 } else { ones[i - 1] + 1 };
        for s in 0..=base[i] - lowest {
            shifts[i] = s;
            ones[i] = base[i] - s;
            rec(i + 1, n, base, shifts, ones, visit);
        }
    }

    rec(0, n, &base, &mut shifts, &mut ones, &mut visit);
    Ok(())
}

/// `c(s) = prod_i binom(ai + si - 1, si)`.
pub fn coefficient_c(a: &Composition, s: &ShiftVector) -> Result<Int> {
    if !in_box(a, s) {
        return Err(Error::OutsideBox(s.0.clone()));
    }
    Ok(coefficient_unchecked(a, s))
}

pub(crate) fn coefficient_unchecked(a: &Composition, s: &ShiftVector) -> Int {
    s.0.iter()
        .enumerate()
        .map(|(idx, &si)| {
            let ai = a.a(idx + 1) as i64;
            binom(ai + si as i64 - 1, si as i64)
        })
        .product()
}

/// `‖[a; c)‖` by enumeration of the filter.
pub fn norm(a: &Composition, c: &SliceConstraint, limits: &Limits) -> Result<Int> {
    c.check(a.r())?;
    let mut total = Int::zero();
    for_each_in_filter(a, limits, |_, s| {
        if c.admits(s) {
            total += coefficient_unchecked(a, s);
        }
    })?;
    Ok(total)
}

/// `‖[a)‖` in closed form:
/// `binom(n, a0) (a1+...+ar)! / (prod_i a_{i:r} * prod_i (ai - 1)!)`.
pub fn norm_closed(a: &Composition) -> Int {
    let r = a.r();
    let m = a.n() - a.a(0);
    let mut denom = Int::one();
    for i in 1..=r {
        denom *= a.range_sum(i, r);
        denom *= factorial(a.a(i) - 1);
    }
    binom(a.n() as i64, a.a(0) as i64) * factorial(m) / denom
}

/// `r - iota`, where `iota` is 0 when `a0 > 0` and otherwise the first index with `a_iota >= 2`.
pub fn thickness(a: &Composition) -> usize {
    let r = a.r();
    if a.a(0) > 0 {
        return r;
    }
    match (1..=r).find(|&i| a.a(i) >= 2) {
        Some(iota) => r - iota,
        None => 0,
    }
}
