//! Exact sparse bivariate polynomials, tau polynomials and tableaux.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::arith::{binom, factorial, fmt_rat, int, parse_rat, rat_int, Int, Rat};
use crate::error::{Error, Result};

/// `sum c_ij x^i y^j` with exact rational coefficients and no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), Rat>,
}

pub type Poly = BivariatePolynomial;

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Rat::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Rat::one())
    }

    pub fn monomial(i: u32, j: u32, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rat)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    /// Polynomial in `y` alone from ascending integer coefficients.
    pub fn in_y(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(j, &c)| ((0, j as u32), rat_int(int(c)))),
        )
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// Terms in increasing `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn y_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BivariatePolynomial {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: &Int) -> Self {
        self.scale(&rat_int(c.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by `x^di y^dj`.
    pub fn shift_degrees(&self, di: u32, dj: u32) -> Self {
        BivariatePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), v)| ((i + di, j + dj), v.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut total = Rat::zero();
        for (&(i, j), c) in &self.terms {
            total += c * pow_rat(x, i) * pow_rat(y, j);
        }
        total
    }

    /// `p(x + dx, y + dy)`.
    pub fn translate(&self, dx: i64, dy: i64) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            for a in 0..=i {
                let cx = binom(i as i64, a as i64) * int(dx).pow(i - a);
                if cx.is_zero() {
                    continue;
                }
                for b in 0..=j {
                    let cy = binom(j as i64, b as i64) * int(dy).pow(j - b);
                    if cy.is_zero() {
                        continue;
                    }
                    out.add_term(a, b, c * rat_int(&cx * cy));
                }
            }
        }
        out
    }

    /// Read the terms as coefficients of `(x-1)^i (y-1)^j` and expand.
    pub fn from_shifted(shifted: &Self) -> Self {
        shifted.translate(-1, -1)
    }

    /// Coefficients with respect to `(x-1)^i (y-1)^j`.
    pub fn to_shifted(&self) -> Self {
        self.translate(1, 1)
    }

    /// `xy - x - y`.
    pub fn syzygy() -> Self {
        Self::from_terms([
            ((1, 1), Rat::one()),
            ((1, 0), -Rat::one()),
            ((0, 1), -Rat::one()),
        ])
    }

    /// `(x-1)^e`.
    pub fn x_minus_one_pow(e: u32) -> Self {
        Self::from_terms((0..=e).map(|a| {
            let sign = if (e - a).is_multiple_of(2) { 1 } else { -1 };
            ((a, 0), rat_int(binom(e as i64, a as i64) * sign))
        }))
    }

    /// `(y-1)^e`.
    pub fn y_minus_one_pow(e: u32) -> Self {
        Self::from_terms((0..=e).map(|b| {
            let sign = if (e - b).is_multiple_of(2) { 1 } else { -1 };
            ((0, b), rat_int(binom(e as i64, b as i64) * sign))
        }))
    }

    /// Human-readable form, terms by decreasing x-degree then decreasing y-degree.
    pub fn to_poly_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                factors.push(fmt_rat(&mag));
            }
            match i {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => factors.push("y".into()),
                _ => factors.push(format!("y^{j}")),
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

fn pow_rat(v: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= v;
    }
    acc
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly_string())
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (&(i, j), c) in &rhs.terms {
            self.add_term(i, j, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (&(i, j), c) in &rhs.terms {
            self.add_term(i, j, -c.clone());
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(i, j), c) in &self.terms {
            for (&(k, l), d) in &rhs.terms {
                out.add_term(i + k, j + l, c * d);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| acc + p)
    }
}

/// `tau(d, alpha; y) = sum_{i=0}^{alpha} binom(alpha + d - 1 - i, alpha - i) y^i`,
/// and zero when `d <= 0` or `alpha < 0`.
pub fn tau(d: i64, alpha: i64) -> Poly {
    if d <= 0 || alpha < 0 {
        return Poly::zero();
    }
    Poly::from_terms(
        (0..=alpha).map(|i| ((0, i as u32), rat_int(binom(alpha + d - 1 - i, alpha - i)))),
    )
}

/// `sum_{s=0}^{alpha} binom(alpha + d, alpha - s) (y-1)^s`, expanded.
pub fn tau_binomial_form(d: i64, alpha: i64) -> Poly {
    if d <= 0 || alpha < 0 {
        return Poly::zero();
    }
    let shifted = Poly::from_terms(
        (0..=alpha).map(|s| ((0, s as u32), rat_int(binom(alpha + d, alpha - s)))),
    );
    Poly::from_shifted(&shifted)
}

/// `T(U_{r,n}) = sum_{i<=r} binom(n,i)(x-1)^{r-i} + sum_{j>r} binom(n,j)(y-1)^{j-r}`.
pub fn tutte_uniform(r: usize, n: usize) -> Result<Poly> {
    if r > n {
        return Err(Error::Range(format!("uniform rank {r} exceeds size {n}")));
    }
    let mut shifted = Poly::zero();
    for i in 0..=r {
        shifted.add_term((r - i) as u32, 0, rat_int(binom(n as i64, i as i64)));
    }
    for j in r + 1..=n {
        shifted.add_term(0, (j - r) as u32, rat_int(binom(n as i64, j as i64)));
    }
    Ok(Poly::from_shifted(&shifted))
}

/// `(xy - x - y)(x-1)^{r-k-1}(y-1)^{m-k-1} / (m! (n-m)!)`.
pub fn syzygy_term(k: usize, m: usize, r: usize, n: usize) -> Result<Poly> {
    if !(k < r && k < m && m < n) {
        return Err(Error::Range(format!(
            "syzygy term needs 0 <= k < r and k+1 <= m < n (k={k}, m={m}, r={r}, n={n})"
        )));
    }
    let scale = Rat::new(Int::one(), factorial(m) * factorial(n - m));
    let shifted = Poly::monomial((r - k - 1) as u32, (m - k - 1) as u32, scale);
    Ok(&Poly::syzygy() * &Poly::from_shifted(&shifted))
}

/// The quotient `q` with `q (xy - x - y) = p`.
pub fn divide_by_syzygy(p: &Poly) -> Result<Poly> {
    let mut rest = p.clone();
    let mut quotient = Poly::zero();
    let divisor = Poly::syzygy();
    // Graded order: the leading term of xy - x - y is xy.
    let leading = |q: &Poly| -> Option<((u32, u32), Rat)> {
        q.terms
            .iter()
            .max_by_key(|(&(i, j), _)| (i + j, i))
            .map(|(k, c)| (*k, c.clone()))
    };
    while let Some(((i, j), c)) = leading(&rest) {
        if i == 0 || j == 0 {
            return Err(Error::NotDivisible(rest.to_poly_string()));
        }
        let q = Poly::monomial(i - 1, j - 1, c);
        rest -= &(&q * &divisor);
        quotient += &q;
    }
    Ok(quotient)
}

/// Dense view: row `i` is the x-degree, column `j` the y-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    pub n: usize,
    pub r: usize,
    pub rows: Vec<Vec<Rat>>,
}

impl Tableau {
    pub fn from_poly(p: &Poly, n: usize, r: usize) -> Result<Self> {
        if let Some(d) = p.x_degree() {
            if d as usize > r {
                return Err(Error::Degree(d, r));
            }
        }
        let width = p.y_degree().map_or(0, |d| d as usize + 1);
        let mut rows = vec![vec![Rat::zero(); width]; r + 1];
        for (&(i, j), c) in p.terms() {
            rows[i as usize][j as usize] = c.clone();
        }
        Ok(Tableau { n, r, rows })
    }

    /// Row `i` as integers with trailing zeros dropped; `None` entries mark zeros.
    pub fn row_ints(&self, i: usize) -> Vec<Option<i64>> {
        let mut row: Vec<Option<i64>> = self.rows[i]
            .iter()
            .map(|c| {
                if c.is_zero() {
                    None
                } else {
                    Some(c.to_integer().try_into().expect("entry fits in i64"))
                }
            })
            .collect();
        while row.last() == Some(&None) {
            row.pop();
        }
        row
    }

    pub fn to_poly(&self) -> Poly {
        let mut p = Poly::zero();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                p.add_term(i as u32, j as u32, c.clone());
            }
        }
        p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableauFormat {
    Text,
    Json,
}

/// Render `p` as a tableau: rows `0..=r` by x-degree, columns by y-degree,
/// zeros blank, columns right-aligned and separated by one space.
pub fn render_tableau(p: &Poly, n: usize, r: usize, format: TableauFormat) -> Result<String> {
    let tab = Tableau::from_poly(p, n, r)?;
    match format {
        TableauFormat::Json => Ok(serde_json::to_string(&poly_to_json(p, n, r)).unwrap()),
        TableauFormat::Text => {
            let cells: Vec<Vec<String>> = tab
                .rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| if c.is_zero() { String::new() } else { fmt_rat(c) })
                        .collect()
                })
                .collect();
            let ncols = cells.first().map_or(0, |r| r.len());
            let widths: Vec<usize> = (0..ncols)
                .map(|j| cells.iter().map(|row| row[j].len()).max().unwrap_or(0).max(1))
                .collect();
            let mut out = String::new();
            for row in &cells {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c:>w$}"))
                    .collect();
                out.push_str(line.join(" ").trim_end());
                out.push('\n');
            }
            Ok(out)
        }
    }
}

/// Inverse of the text rendering.
pub fn parse_tableau(text: &str) -> Result<Poly> {
    // Tokens as (row, end column, text).
    let mut tokens = Vec::new();
    for (row, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut k = 0;
        while k < chars.len() {
            if chars[k].is_whitespace() {
                k += 1;
                continue;
            }
            let start = k;
            while k < chars.len() && !chars[k].is_whitespace() {
                k += 1;
            }
            let tok: String = chars[start..k].iter().collect();
            tokens.push((row, k - 1, tok));
        }
    }
    let mut ends: BTreeMap<usize, usize> = BTreeMap::new();
    for (_, end, tok) in &tokens {
        let w = ends.entry(*end).or_insert(0);
        *w = (*w).max(tok.chars().count());
    }
    // Column index of each end position, accounting for blank width-1 columns.
    let mut column_of = BTreeMap::new();
    let mut prev: Option<(usize, usize)> = None;
    for (&end, &w) in &ends {
        let col = match prev {
            None => {
                let lead = end + 1 - w;
                if lead % 2 != 0 {
                    return Err(Error::Parse("misaligned tableau column".into()));
                }
                lead / 2
            }
            Some((pend, pcol)) => {
                let gap = end
                    .checked_sub(pend + 1 + w)
                    .ok_or_else(|| Error::Parse("overlapping tableau columns".into()))?;
                if gap % 2 != 0 {
                    return Err(Error::Parse("misaligned tableau column".into()));
                }
                pcol + 1 + gap / 2
            }
        };
        column_of.insert(end, col);
        prev = Some((end, col));
    }
    let mut p = Poly::zero();
    for (row, end, tok) in tokens {
        let c = parse_rat(&tok).ok_or_else(|| Error::Parse(format!("bad tableau entry {tok:?}")))?;
        p.add_term(row as u32, column_of[&end] as u32, c);
    }
    Ok(p)
}

pub fn poly_to_json(p: &Poly, n: usize, r: usize) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(&(i, j), c)| json!({"i": i, "j": j, "c": fmt_rat(c)}))
        .collect();
    json!({"n": n, "r": r, "terms": terms})
}

/// Parse the JSON polynomial schema; returns `(p, n, r)`.
pub fn poly_from_json(v: &Value) -> Result<(Poly, usize, usize)> {
    let bad = |what: &str| Error::Parse(format!("polynomial JSON: {what}"));
    let n = v["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
    let r = v["r"].as_u64().ok_or_else(|| bad("missing r"))? as usize;
    let mut p = Poly::zero();
    for t in v["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
        let i = t["i"].as_u64().ok_or_else(|| bad("term i"))? as u32;
        let j = t["j"].as_u64().ok_or_else(|| bad("term j"))? as u32;
        let c = match &t["c"] {
            Value::String(s) => parse_rat(s),
            Value::Number(num) => num.as_i64().map(|k| rat_int(int(k))),
            _ => None,
        }
        .ok_or_else(|| bad("term c"))?;
        p.add_term(i, j, c);
    }
    Ok((p, n, r))
}
