#![allow(dead_code)]

use tutteframe::arith::{binom, Int};
use tutteframe::polynomial::Poly;
use tutteframe::{Composition, Limits, Matroid};

/// Small matroids shared by the integration tests.
pub const ZOO: &[(&str, &str)] = &[
    ("u12", "uniform:1,2"),
    ("u23", "uniform:2,3"),
    ("u24", "uniform:2,4"),
    ("u36", "uniform:3,6"),
    ("u37", "uniform:3,7"),
    ("fano", "pg:2,2"),
    ("pg23", "pg:2,3"),
    ("k4", "complete:4"),
    ("k5", "complete:5"),
    ("h33", "sum(multipoint:0;3|line:3,1,1)"),
    ("h35", "sum(multipoint:0;5|line:3,1,1)"),
    ("f1", "echelon:1000110000"),
    ("f2", "echelon:1000101000"),
    ("boolean235", "multipoint:0;2,3,5"),
    ("loops", "multipoint:2;2,3"),
    ("theta", "graphic:[(1,2);(1,2);(2,3);(3,1);(3,4);(4,1)]"),
    ("lines", "sum(uniform:1,2|uniform:1,2|uniform:1,2|uniform:1,2)"),
    ("bases", "bases:4,2,{1 2;1 3;1 4;2 3;2 4}"),
];

pub fn zoo() -> Vec<(&'static str, Matroid)> {
    ZOO.iter().map(|&(name, spec)| (name, Matroid::construct(spec).unwrap())).collect()
}

pub fn lim() -> Limits {
    Limits::default()
}

pub fn comp(s: &str) -> Composition {
    s.parse().unwrap()
}

/// Every composition with `1 <= n <= max_n`, all ranks.
pub fn compositions(max_n: usize) -> Vec<Composition> {
    (1..=max_n)
        .flat_map(|n| (0..=n).flat_map(move |r| Composition::all(n, r)))
        .collect()
}

/// `sum_j c_j y^j`.
pub fn in_y(coeffs: &[i64]) -> Poly {
    Poly::in_y(coeffs)
}

/// Dense rows, row `i` listing the coefficients of `x^i y^0, x^i y^1, ...`.
pub fn from_rows(rows: &[&[i64]]) -> Poly {
    let mut p = Poly::zero();
    for (i, row) in rows.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c != 0 {
                p.add_term(i as u32, j as u32, tutteframe::arith::rat(c, 1));
            }
        }
    }
    p
}

pub fn binomial(n: i64, k: i64) -> Int {
    binom(n, k)
}
