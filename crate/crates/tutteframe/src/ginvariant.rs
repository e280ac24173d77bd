//! Symbols, the specialization `Sp`, gamma-basis elements and catenary data.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{binom_u, factorial, rat_int, Int, Rat};
use crate::bitseq::{coefficient_unchecked, for_each_in_filter, BitSequence, Composition};
use crate::error::{Error, Result};
use crate::matroid::{FlatLattice, Matroid};
use crate::polynomial::Poly;
use crate::Limits;

/// A formal integer combination of `(n, r)`-symbols `[b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolCombination {
    pub n: usize,
    pub r: usize,
    terms: BTreeMap<BitSequence, Int>,
}

impl SymbolCombination {
    pub fn new(n: usize, r: usize) -> Self {
        SymbolCombination { n, r, terms: BTreeMap::new() }
    }

    pub fn add(&mut self, b: BitSequence, c: Int) -> Result<()> {
        if b.len() != self.n || b.weight() != self.r {
            return Err(Error::Mismatch(format!(
                "symbol {b} in an ({}, {}) combination",
                self.n, self.r
            )));
        }
        if c.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(b).or_insert_with(Int::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&b);
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &SymbolCombination, c: &Int) -> Result<()> {
        for (b, v) in &other.terms {
            self.add(*b, v * c)?;
        }
        Ok(())
    }

    pub fn get(&self, b: &BitSequence) -> Int {
        self.terms.get(b).cloned().unwrap_or_else(Int::zero)
    }

    /// Terms in canonical symbol order (`1^r 0^(n-r)` first).
    pub fn terms(&self) -> impl Iterator<Item = (&BitSequence, &Int)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The sum of all coefficients.
    pub fn mass(&self) -> Int {
        self.terms.values().sum()
    }
}

/// `Sp[b] = (1/n!) sum_m binom(n, m) (x-1)^{r - wt_m} (y-1)^{m - wt_m}`,
/// `wt_m` being the weight of the first `m` bits.
pub fn specialize_symbol(b: &BitSequence) -> Poly {
    let mut combo = SymbolCombination::new(b.len(), b.weight());
    combo.add(*b, Int::one()).expect("matching sizes");
    specialize(&combo)
}

/// `Sp` applied linearly.
pub fn specialize(combo: &SymbolCombination) -> Poly {
    let (n, r) = (combo.n, combo.r);
    let row: Vec<Int> = (0..=n).map(|m| binom_u(n, m)).collect();
    let mut shifted: HashMap<(u32, u32), Int> = HashMap::new();
    for (b, c) in combo.terms() {
        for (m, bm) in row.iter().enumerate() {
            let w = b.prefix_weight(m);
            *shifted.entry(((r - w) as u32, (m - w) as u32)).or_insert_with(Int::zero) += c * bm;
        }
    }
    let scale = Rat::new(Int::one(), factorial(n));
    let shifted = Poly::from_terms(shifted.into_iter().map(|(k, v)| (k, rat_int(v) * &scale)));
    Poly::from_shifted(&shifted)
}

/// `gamma(a) = a! sum_{b in [a)} c(s(b)) [b]`.
pub fn gamma_symbols(a: &Composition, limits: &Limits) -> Result<SymbolCombination> {
    let fact = a.factorial_product();
    let mut combo = SymbolCombination::new(a.n(), a.r());
    let mut err = None;
    for_each_in_filter(a, limits, |b, s| {
        if let Err(e) = combo.add(*b, &fact * coefficient_unchecked(a, s)) {
            err = Some(e);
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(combo),
    }
}

/// Flag counts `nu(M; a)` keyed by composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatenaryData {
    pub n: usize,
    pub r: usize,
    pub nu: BTreeMap<Composition, Int>,
}

impl CatenaryData {
    pub fn get(&self, a: &Composition) -> Int {
        self.nu.get(a).cloned().unwrap_or_else(Int::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Composition, &Int)> {
        self.nu.iter()
    }

    pub fn total_flags(&self) -> Int {
        self.nu.values().sum()
    }
}

/// Count complete flags of flats by size increments, by descent over the lattice.
pub fn catenary_data(m: &Matroid, limits: &Limits) -> Result<CatenaryData> {
    let lattice = FlatLattice::build(m, limits)?;
    Ok(catenary_from_lattice(m, &lattice))
}

pub(crate) fn catenary_from_lattice(m: &Matroid, lattice: &FlatLattice) -> CatenaryData {
    type Suffixes = BTreeMap<Vec<usize>, Int>;
    let r = m.r();
    let mut above: Vec<Suffixes> = vec![BTreeMap::from([(Vec::new(), Int::one())])];
    for k in (0..r).rev() {
        let level = &lattice.levels[k];
        let next_level = &lattice.levels[k + 1];
        above = level
            .par_iter()
            .enumerate()
            .map(|(i, &f)| {
                let mut out = Suffixes::new();
                for &j in &lattice.covers[k][i] {
                    let step = (next_level[j] & !f).count_ones() as usize;
                    for (suffix, c) in &above[j] {
                        let mut key = Vec::with_capacity(suffix.len() + 1);
                        key.push(step);
                        key.extend_from_slice(suffix);
                        *out.entry(key).or_insert_with(Int::zero) += c;
                    }
                }
                out
            })
            .collect();
    }
    let bottom = lattice.levels[0][0];
    let mut nu = BTreeMap::new();
    for (suffix, c) in above.into_iter().next().unwrap_or_default() {
        let mut parts = vec![bottom.count_ones() as usize];
        parts.extend(suffix);
        nu.insert(Composition::new(parts).expect("flag steps are positive"), c);
    }
    CatenaryData { n: m.n(), r, nu }
}

/// `sum over permutations of [rank sequence]`.
pub fn g_invariant_perm(m: &Matroid, limits: &Limits) -> Result<SymbolCombination> {
    let n = m.n();
    if n > limits.permutation_n {
        return Err(Error::Cap {
            what: "ground set for the permutation sum",
            size: n,
            cap: limits.permutation_n,
            hint: "use the catenary route",
        });
    }
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for perm in (0..n).permutations(n) {
        let mut prefix = 0u64;
        let mut rank = 0;
        let mut word = 0u64;
        for (pos, &e) in perm.iter().enumerate() {
            prefix |= 1 << e;
            let next = m.rank(prefix);
            if next > rank {
                word |= 1 << pos;
            }
            rank = next;
        }
        *counts.entry(word).or_insert(0) += 1;
    }
    let mut combo = SymbolCombination::new(n, m.r());
    for (word, c) in counts {
        combo.add(BitSequence::from_mask(n, word), Int::from(c))?;
    }
    Ok(combo)
}

/// `sum_a nu(M; a) gamma(a)`.
pub fn g_invariant_catenary(m: &Matroid, limits: &Limits) -> Result<SymbolCombination> {
    let cat = catenary_data(m, limits)?;
    let mut combo = SymbolCombination::new(m.n(), m.r());
    for (a, nu) in cat.iter() {
        combo.add_scaled(&gamma_symbols(a, limits)?, nu)?;
    }
    Ok(combo)
}

/// `Sp` of the catenary G-invariant.
pub fn tutte_via_sp(m: &Matroid, limits: &Limits) -> Result<Poly> {
    Ok(specialize(&g_invariant_catenary(m, limits)?))
}

/// Render `gamma(a)` as `a! * (c[b] + ...)`.
pub fn format_gamma(a: &Composition, combo: &SymbolCombination) -> String {
    let fact = a.factorial_product();
    let inner: Vec<String> = combo
        .terms()
        .map(|(b, c)| {
            let c = c / &fact;
            if c.is_one() {
                format!("[{b}]")
            } else {
                format!("{c}[{b}]")
            }
        })
        .collect();
    if fact.is_one() {
        inner.join(" + ")
    } else {
        format!("{fact}*({})", inner.join(" + "))
    }
}
