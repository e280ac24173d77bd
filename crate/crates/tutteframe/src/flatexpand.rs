//! Flat tensors, total flat numbers and the flat expansion of the Tutte polynomial.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{binom_u, rat_int, to_integer, Int, Rat};
use crate::bitseq::{partial_sums, Composition};
use crate::error::{Error, Result};
use crate::frame::frame_coefficients;
use crate::ginvariant::catenary_from_lattice;
use crate::matroid::tutte::{mobius_invariant, tutte_deletion_contraction, tutte_direct};
use crate::matroid::{FlatLattice, Matroid};
use crate::polynomial::{divide_by_syzygy, tau, tutte_uniform, Poly};
use crate::Limits;

/// Signed flat numbers `f^t_{k,m}`, keyed by `(k, m, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatTensor {
    pub n: usize,
    pub r: usize,
    entries: BTreeMap<(usize, usize, usize), Int>,
}

impl FlatTensor {
    pub fn new(n: usize, r: usize) -> Self {
        FlatTensor { n, r, entries: BTreeMap::new() }
    }

    pub fn insert(&mut self, k: usize, m: usize, t: usize, f: Int) {
        if f.is_zero() {
            self.entries.remove(&(k, m, t));
        } else {
            self.entries.insert((k, m, t), f);
        }
    }

    pub fn get(&self, k: usize, m: usize, t: usize) -> Int {
        self.entries.get(&(k, m, t)).cloned().unwrap_or_default()
    }

    /// Non-zero entries in `(k, m, t)` order, auxiliary ones included.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Int)> {
        self.entries.iter()
    }

    /// Entries with `m > k`; the `m = k` entries never enter the expansion.
    pub fn proper_entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Int)> {
        self.entries.iter().filter(|((k, m, _), _)| !Self::is_auxiliary(*k, *m))
    }

    pub fn is_auxiliary(k: usize, m: usize) -> bool {
        m == k
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_json(&self, unsigned: bool) -> Value {
        let entries: Vec<Value> = self
            .proper_entries()
            .map(|(&(k, m, t), f)| {
                let f = if unsigned { f.abs() } else { f.clone() };
                json!({"k": k, "m": m, "t": t, "f": int_json(&f)})
            })
            .collect();
        json!({"n": self.n, "r": self.r, "entries": entries})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("f-tensor JSON: {what}"));
        let field = |e: &Value, key: &str| e[key].as_u64().map(|x| x as usize).ok_or_else(|| bad(key));
        let mut t = FlatTensor::new(field(v, "n")?, field(v, "r")?);
        for e in v["entries"].as_array().ok_or_else(|| bad("entries"))? {
            let f = json_int(&e["f"]).ok_or_else(|| bad("f"))?;
            t.insert(field(e, "k")?, field(e, "m")?, field(e, "t")?, f);
        }
        Ok(t)
    }

    /// One grid per `t`: rows are ranks `k`, columns sizes `m`.
    pub fn render_text(&self, unsigned: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "f-tensor of an ({}, {})-matroid: f^t[k][m], rows k, columns m", self.n, self.r);
        for t in 0..self.r.max(1) {
            let cells: BTreeMap<(usize, usize), Int> = self
                .proper_entries()
                .filter(|((_, _, tt), _)| *tt == t)
                .map(|(&(k, m, _), f)| ((k, m), if unsigned { f.abs() } else { f.clone() }))
                .collect();
            if cells.is_empty() {
                continue;
            }
            let _ = writeln!(out, "t = {t}");
            out.push_str(&render_grid(&cells, "k", "m"));
        }
        out
    }
}

/// Total flat numbers `F_{ij}` with `i = k+t`, `j = m-k-t >= 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FTableau {
    pub n: usize,
    pub r: usize,
    entries: BTreeMap<(usize, usize), Int>,
}

impl FTableau {
    pub fn new(n: usize, r: usize) -> Self {
        FTableau { n, r, entries: BTreeMap::new() }
    }

    pub fn add(&mut self, i: usize, j: usize, f: &Int) {
        let slot = self.entries.entry((i, j)).or_default();
        *slot += f;
        if slot.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Int {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Int)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `T(U_{r,n}) + (xy - x - y) sum F_{ij} (x-1)^{r-i-1} tau(i+1, j-1; y)`.
    pub fn expand(&self) -> Result<Poly> {
        let mut inner = Poly::zero();
        for (&(i, j), f) in &self.entries {
            if i == 0 || i >= self.r {
                return Err(Error::Range(format!("F[{i}][{j}] outside 1 <= i < {}", self.r)));
            }
            let piece = &Poly::x_minus_one_pow((self.r - i - 1) as u32) * &tau(i as i64 + 1, j as i64 - 1);
            inner += &piece.scale_int(f);
        }
        Ok(tutte_uniform(self.r, self.n)? + &Poly::syzygy() * &inner)
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(&(i, j), f)| json!({"i": i, "j": j, "F": int_json(f)}))
            .collect();
        json!({"n": self.n, "r": self.r, "entries": entries})
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "F-tableau of an ({}, {})-matroid: F[i][j], i = k+t, j = m-k-t\n",
            self.n, self.r
        );
        out.push_str(&render_grid(&self.entries, "i", "j"));
        out
    }
}

fn int_json(f: &Int) -> Value {
    match i64::try_from(f) {
        Ok(v) => json!(v),
        Err(_) => json!(f.to_string()),
    }
}

fn json_int(v: &Value) -> Option<Int> {
    match v {
        Value::Number(n) => n.as_i64().map(Int::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

fn render_grid(cells: &BTreeMap<(usize, usize), Int>, row: &str, col: &str) -> String {
    if cells.is_empty() {
        return "(empty)\n".to_string();
    }
    let rows: Vec<usize> = {
        let mut v: Vec<usize> = cells.keys().map(|k| k.0).collect();
        v.dedup();
        v
    };
    let lo = cells.keys().map(|k| k.1).min().unwrap();
    let hi = cells.keys().map(|k| k.1).max().unwrap();
    let label = |r: usize| format!("{row}={r}");
    let head_w = rows.iter().map(|&r| label(r).len()).max().unwrap();
    let widths: Vec<usize> = (lo..=hi)
        .map(|c| {
            let body = rows.iter().filter_map(|&r| cells.get(&(r, c))).map(|f| f.to_string().len());
            body.chain([c.to_string().len()]).max().unwrap()
        })
        .collect();
    let mut out = format!("{:>head_w$}", format!("{col}:"));
    for (c, w) in (lo..=hi).zip(&widths) {
        let _ = write!(out, " {c:>w$}");
    }
    out.push('\n');
    for &r in &rows {
        let mut line = format!("{:>head_w$}", label(r));
        for (c, w) in (lo..=hi).zip(&widths) {
            let cell = cells.get(&(r, c)).map(|f| f.to_string()).unwrap_or_else(|| ".".into());
            let _ = write!(line, " {cell:>w$}");
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn loopless(m: &Matroid) -> Result<()> {
    if m.loops() != 0 {
        return Err(Error::Loops(format!(
            "{} has {} loop(s); flat tensors need a loopless matroid",
            m.spec(),
            m.loops().count_ones()
        )));
    }
    Ok(())
}

/// `f^t_{k,m} = (-1)^t sum_{a: a_{1:k} = m} nu(M; a) m_{k+t,k}(a) f_k(a)`.
pub fn flat_tensor(m: &Matroid, limits: &Limits) -> Result<FlatTensor> {
    loopless(m)?;
    let lattice = FlatLattice::build(m, limits)?;
    let cat = catenary_from_lattice(m, &lattice);
    let r = m.r();
    let items: Vec<(&Composition, &Int)> = cat.iter().collect();
    let pieces: Vec<Vec<((usize, usize, usize), Rat)>> = items
        .par_iter()
        .map(|(a, nu)| {
            let fc = frame_coefficients(a);
            let xi = partial_sums(a);
            let weight = rat_int((*nu).clone());
            let mut out = Vec::new();
            for k in 1..r {
                for t in 0..r - k {
                    out.push(((k, xi[k], t), &weight * &fc.f_interior[&(k + t, t)]));
                }
            }
            out
        })
        .collect();
    let mut sums: BTreeMap<(usize, usize, usize), Rat> = BTreeMap::new();
    for (key, v) in pieces.into_iter().flatten() {
        *sums.entry(key).or_insert_with(Rat::zero) += v;
    }
    let mut tensor = FlatTensor::new(m.n(), r);
    for ((k, size, t), v) in sums {
        let f = to_integer(&v).ok_or_else(|| Error::NonIntegral {
            at: format!("f^{t}_{{{k},{size}}}"),
            value: crate::arith::fmt_rat(&v),
        })?;
        tensor.insert(k, size, t, if t % 2 == 0 { f } else { -f });
    }
    Ok(tensor)
}

/// `|mu|` of a loopless matroid from the Möbius function of its lattice of flats.
fn lattice_mobius(m: &Matroid, limits: &Limits) -> Result<Int> {
    let lattice = FlatLattice::build(m, limits)?;
    let mut below: Vec<(u64, Int)> = vec![(lattice.levels[0][0], Int::one())];
    for level in &lattice.levels[1..] {
        let next: Vec<(u64, Int)> = level
            .iter()
            .map(|&y| {
                let s: Int = below.iter().filter(|(z, _)| z & !y == 0).map(|(_, mu)| mu).sum();
                (y, -s)
            })
            .collect();
        below.extend(next);
    }
    Ok(below.last().map(|(_, mu)| mu.abs()).unwrap_or_else(Int::one))
}

fn tensor_by_contractions(m: &Matroid, limits: &Limits) -> Result<FlatTensor> {
    loopless(m)?;
    let lattice = FlatLattice::build(m, limits)?;
    let r = m.r();
    let mut tensor = FlatTensor::new(m.n(), r);
    let mut sums: BTreeMap<(usize, usize, usize), Int> = BTreeMap::new();
    for k in 1..r {
        for &x in &lattice.levels[k] {
            let size = x.count_ones() as usize;
            *sums.entry((k, size, 0)).or_default() += 1;
            let minor = m.contract(x)?;
            for t in 1..r - k {
                let mu = lattice_mobius(&minor.truncate(r - k - t - 1)?, limits)?;
                *sums.entry((k, size, t)).or_default() += mu;
            }
        }
    }
    for ((k, size, t), v) in sums {
        tensor.insert(k, size, t, if t % 2 == 0 { v } else { -v });
    }
    Ok(tensor)
}

/// Matroids on which the contraction route must agree with [`flat_tensor`].
pub const CALIBRATION_SET: [&str; 3] = [
    "sum(uniform:1,2|uniform:1,2|uniform:1,2|uniform:1,2|uniform:1,2|uniform:1,2|uniform:1,2|uniform:1,2)",
    "sum(multipoint:0;3|line:3,1,1)",
    "complete:5",
];

/// Check the contraction route against the catenary route on [`CALIBRATION_SET`].
pub fn calibrate_mobius_route(limits: &Limits) -> Result<()> {
    for spec in CALIBRATION_SET {
        let m = Matroid::construct(spec)?;
        let (a, b) = (flat_tensor(&m, limits)?, tensor_by_contractions(&m, limits)?);
        if a != b {
            let diff = a
                .entries()
                .chain(b.entries())
                .map(|(key, _)| *key)
                .find(|&(k, s, t)| a.get(k, s, t) != b.get(k, s, t))
                .unwrap();
            let (k, s, t) = diff;
            return Err(Error::Calibration(format!(
                "{spec}: f^{t}_{{{k},{s}}} is {} by catenary data but {} by contractions",
                a.get(k, s, t),
                b.get(k, s, t)
            )));
        }
    }
    Ok(())
}

/// `f^0` counts flats; for `t >= 1`, `f^t_{k,m} = (-1)^t sum_X mu(Trun^{r-k-t-1}(M/X))`
/// over rank-`k` flats `X` of size `m`.
pub fn flat_tensor_mobius(m: &Matroid, limits: &Limits) -> Result<FlatTensor> {
    static CALIBRATED: OnceLock<std::result::Result<(), String>> = OnceLock::new();
    CALIBRATED
        .get_or_init(|| calibrate_mobius_route(&Limits::default()).map_err(|e| e.to_string()))
        .clone()
        .map_err(Error::Calibration)?;
    tensor_by_contractions(m, limits)
}

/// `F_{ij} = sum_{k+t=i, m-k-t=j} f^t_{k,m}` for `j >= 1`.
pub fn total_f(t: &FlatTensor) -> FTableau {
    let mut tab = FTableau::new(t.n, t.r);
    for (&(k, m, tt), f) in t.proper_entries() {
        if m > k + tt {
            tab.add(k + tt, m - k - tt, f);
        }
    }
    tab
}

/// `T(U_{r,n}) + (xy - x - y) sum f^t_{k,m} (x-1)^{r-k-t-1} tau(k+t+1, m-k-t-1; y)`.
pub fn tutte_from_tensor(t: &FlatTensor) -> Result<Poly> {
    let mut inner = Poly::zero();
    for (&(k, m, tt), f) in t.proper_entries() {
        if k + tt >= t.r {
            return Err(Error::Range(format!("f^{tt}_{{{k},{m}}} needs k + t < r = {}", t.r)));
        }
        let piece = &Poly::x_minus_one_pow((t.r - k - tt - 1) as u32)
            * &tau((k + tt + 1) as i64, m as i64 - (k + tt) as i64 - 1);
        inner += &piece.scale_int(f);
    }
    Ok(tutte_uniform(t.r, t.n)? + &Poly::syzygy() * &inner)
}

/// The F-tableau of a loopless `(n, r)`-matroid from its Tutte polynomial.
pub fn recover_f(p: &Poly, n: usize, r: usize) -> Result<FTableau> {
    let quotient = divide_by_syzygy(&(p - &tutte_uniform(r, n)?))?;
    let in_x_minus_one = quotient.translate(1, 0);
    let mut by_degree: BTreeMap<u32, Poly> = BTreeMap::new();
    for (&(e, j), c) in in_x_minus_one.terms() {
        by_degree.entry(e).or_default().add_term(0, j, c.clone());
    }
    let mut tab = FTableau::new(n, r);
    for (e, mut rest) in by_degree {
        if e as usize + 2 > r {
            return Err(Error::Residual(format!(
                "(x-1)^{e} part {} has no F-tableau row",
                rest.to_poly_string()
            )));
        }
        let i = r - 1 - e as usize;
        while let Some(top) = rest.y_degree() {
            let c = rest.coeff(0, top);
            let f = to_integer(&c).ok_or_else(|| Error::NonIntegral {
                at: format!("F[{i}][{}]", top + 1),
                value: crate::arith::fmt_rat(&c),
            })?;
            rest -= &tau(i as i64 + 1, top as i64).scale_int(&f);
            tab.add(i, top as usize + 1, &f);
        }
    }
    Ok(tab)
}

/// Both sides of the `x = 1` specializations of the flat expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusRecursions {
    /// `mu(M)` computed from the Tutte polynomial.
    pub mu: Int,
    /// `binom(n-1, r-1) - sum_{k+t=r-1} f^t_{k,m} binom(m-1, r-1)`.
    pub mu_from_tensor: Int,
    /// `T(M; 1, 1)` computed from the Tutte polynomial.
    pub bases: Int,
    /// `binom(n, r) - sum_{k+t=r-1} f^t_{k,m} binom(m, r)`.
    pub bases_from_tensor: Int,
}

impl MobiusRecursions {
    pub fn holds(&self) -> bool {
        self.mu == self.mu_from_tensor && self.bases == self.bases_from_tensor
    }
}

pub fn mobius_recursions(m: &Matroid, limits: &Limits) -> Result<MobiusRecursions> {
    let tensor = flat_tensor(m, limits)?;
    let (n, r) = (m.n(), m.r());
    let mut mu_from_tensor = if r == 0 { Int::zero() } else { binom_u(n - 1, r - 1) };
    let mut bases_from_tensor = binom_u(n, r);
    for (&(k, size, t), f) in tensor.proper_entries() {
        if k + t + 1 == r {
            mu_from_tensor -= f * binom_u(size - 1, r - 1);
            bases_from_tensor -= f * binom_u(size, r);
        }
    }
    let tutte = if n <= limits.direct_n {
        tutte_direct(m, limits)?
    } else {
        tutte_deletion_contraction(m, limits)?
    };
    Ok(MobiusRecursions {
        mu: mobius_invariant(m, limits)?,
        mu_from_tensor,
        bases: tutte.eval(&Rat::one(), &Rat::one()).to_integer(),
        bases_from_tensor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Matroid {
        Matroid::construct(s).unwrap()
    }

    #[test]
    fn pg23_tensor() {
        let lim = Limits::default();
        let pg = m("pg:2,3");
        let t = flat_tensor(&pg, &lim).unwrap();
        assert_eq!(t.proper_entries().count(), 1);
        assert_eq!(t.get(2, 4, 0), 13.into());
        let tab = total_f(&t);
        assert_eq!(tab.get(2, 2), 13.into());
        assert_eq!(tab.len(), 1);
        let poly = tutte_from_tensor(&t).unwrap();
        assert_eq!(poly, tutte_direct(&pg, &lim).unwrap());
        assert_eq!(recover_f(&poly, 13, 3).unwrap(), tab);
        let rec = mobius_recursions(&pg, &lim).unwrap();
        assert_eq!(rec.mu, 27.into());
        assert!(rec.holds());
    }

    #[test]
    fn uniform_tensor() {
        let lim = Limits::default();
        let t = flat_tensor(&m("uniform:3,7"), &lim).unwrap();
        assert!(t.proper_entries().next().is_none());
        assert!(total_f(&t).is_empty());
        assert_eq!(tutte_from_tensor(&t).unwrap(), tutte_uniform(3, 7).unwrap());
        assert!(recover_f(&tutte_uniform(3, 7).unwrap(), 7, 3).unwrap().is_empty());
    }

    #[test]
    fn eight_lines() {
        let lim = Limits::default();
        let t = flat_tensor(&m(CALIBRATION_SET[0]), &lim).unwrap();
        let got: Vec<Int> = (0..4).map(|s| t.get(4, 8, s)).collect();
        assert_eq!(got, [70, -210, 210, -70].map(Int::from));
    }

    #[test]
    fn loops_rejected() {
        let lim = Limits::default();
        assert!(matches!(flat_tensor(&m("multipoint:1;2,2"), &lim), Err(Error::Loops(_))));
    }

    #[test]
    fn mobius_route_calibrates() {
        let lim = Limits::default();
        calibrate_mobius_route(&lim).unwrap();
        let h = m(CALIBRATION_SET[1]);
        let t = flat_tensor_mobius(&h, &lim).unwrap();
        assert_eq!(t.get(1, 3, 1).abs(), 3.into());
        assert_eq!(t, flat_tensor(&h, &lim).unwrap());
    }

    #[test]
    fn recovery_errors() {
        let p = tutte_direct(&m("pg:2,3"), &Limits::default()).unwrap();
        assert!(recover_f(&p, 12, 3).is_err());
        assert!(recover_f(&(&p + &Poly::syzygy().shift_degrees(3, 0)), 13, 3).is_err());
    }

    #[test]
    fn json_roundtrip_and_text() {
        let t = flat_tensor(&m("complete:5"), &Limits::default()).unwrap();
        assert_eq!(FlatTensor::from_json(&t.to_json(false)).unwrap().to_json(false), t.to_json(false));
        assert!(t.render_text(true).contains("t = 1"));
        assert!(total_f(&t).render_text().starts_with("F-tableau"));
    }
}
