//! Named matroids with stored reference values.

use std::time::Instant;

use num_traits::{One, Signed, Zero};
use tutteframe::arith::{rat, Int, Rat};
use tutteframe::flatexpand::{flat_tensor, tutte_from_tensor};
use tutteframe::frame::tutte_via_frame;
use tutteframe::ginvariant::catenary_data;
use tutteframe::matroid::tutte::tutte_direct;
use tutteframe::polynomial::Poly;
use tutteframe::{Limits, Matroid, Result};

/// Where a stored value came from.
#[derive(Clone, Copy, Debug)]
pub enum Origin {
    /// Transcribed from a published table.
    Reference,
    /// Produced by the named independent route.
    Derived(&'static str),
}

#[derive(Clone, Copy, Debug)]
pub enum Fixture {
    /// Tutte coefficients, row `i` holding `x^i y^0, x^i y^1, ...`.
    Tableau(&'static [&'static [i64]]),
    /// `(composition, nu)`; the listed compositions are all that occur.
    Catenary(&'static [(&'static str, i64)]),
    /// Signed `(k, m, t, f)` entries.
    Tensor(&'static [(usize, usize, usize, i64)]),
    /// `(k, m, t, |f|)` entries for tables that print magnitudes only.
    TensorAbs(&'static [(usize, usize, usize, i64)]),
    /// `T(M; 1, 0)`.
    Mobius(i64),
}

#[derive(Clone, Copy, Debug)]
pub struct ZooEntry {
    pub name: &'static str,
    pub spec: &'static str,
    pub fixtures: &'static [(Origin, Fixture)],
}

use Fixture::*;
use Origin::*;

const PG33_TOP: &[i64] = &[
    0, 416, 1300, 2340, 3185, 3744, 4056, 4160, 4095, 3900, 3614, 3276, 2925, 2600, 2300, 2024, 1771, 1540, 1330,
    1140, 969, 816, 680, 560, 455, 364, 286, 220, 165, 120, 84, 56, 35, 20, 10, 4, 1,
];

pub const ZOO: &[ZooEntry] = &[
    ZooEntry {
        name: "u12",
        spec: "uniform:1,2",
        fixtures: &[(Derived("direct"), Tableau(&[&[0, 1], &[1]]))],
    },
    ZooEntry {
        name: "u24",
        spec: "uniform:2,4",
        fixtures: &[(Derived("direct"), Tableau(&[&[0, 2, 1], &[2], &[1]])), (Derived("direct"), Mobius(3))],
    },
    ZooEntry {
        name: "u313",
        spec: "uniform:3,13",
        fixtures: &[(Reference, Mobius(66))],
    },
    ZooEntry {
        name: "k4",
        spec: "complete:4",
        fixtures: &[
            (Derived("direct"), Tableau(&[&[0, 2, 3, 1], &[2, 4], &[3], &[1]])),
            (Derived("direct"), Mobius(6)),
        ],
    },
    ZooEntry {
        name: "fano",
        spec: "pg:2,2",
        fixtures: &[
            (Derived("direct"), Tableau(&[&[0, 3, 6, 3, 1], &[3, 7], &[4], &[1]])),
            (Derived("flag count"), Catenary(&[("0,1,2,4", 21)])),
            (Derived("flat count"), Tensor(&[(2, 3, 0, 7)])),
        ],
    },
    ZooEntry {
        name: "pg23",
        spec: "pg:2,3",
        fixtures: &[
            (Reference, Tableau(&[&[0, 16, 32, 36, 28, 21, 15, 10, 6, 3, 1], &[16, 26, 13], &[10], &[1]])),
            (Derived("flat count"), Tensor(&[(2, 4, 0, 13)])),
            (Reference, Mobius(27)),
        ],
    },
    ZooEntry {
        name: "pg33",
        spec: "pg:3,3",
        fixtures: &[
            (
                Reference,
                Tableau(&[PG33_TOP, &[416, 1160, 1540, 1440, 1120, 840, 600, 400, 240, 120, 40], &[276, 260, 130], &[36], &[1]]),
            ),
            (Derived("flag count"), Catenary(&[("0,1,3,9,27", 2080)])),
            (Reference, Tensor(&[(3, 13, 0, 40), (2, 4, 0, 130), (2, 4, 1, -390)])),
            (Reference, Mobius(729)),
        ],
    },
    ZooEntry {
        name: "k7",
        spec: "complete:7",
        fixtures: &[
            (
                Reference,
                Tableau(&[
                    &[0, 120, 490, 945, 1225, 1260, 1120, 895, 645, 420, 245, 126, 56, 21, 6, 1],
                    &[120, 644, 1225, 1330, 1085, 756, 469, 245, 105, 35, 7],
                    &[274, 721, 700, 420, 210, 84, 21],
                    &[225, 280, 105, 35],
                    &[85, 35],
                    &[15],
                    &[1],
                ]),
            ),
            (Reference, Tensor(&[(4, 10, 0, 21), (4, 10, 1, -42), (3, 6, 0, 35)])),
        ],
    },
    ZooEntry {
        name: "lines8",
        spec: "sum(uniform:1,2|uniform:1,2|uniform:1,2|uniform:1,2|uniform:1,2|uniform:1,2|uniform:1,2|uniform:1,2)",
        fixtures: &[(Reference, Tensor(&[(4, 8, 0, 70), (4, 8, 1, -210), (4, 8, 2, 210), (4, 8, 3, -70)]))],
    },
    ZooEntry {
        name: "h33",
        spec: "sum(multipoint:0;3|line:3,1,1)",
        fixtures: &[
            (Reference, Tableau(&[&[0, 0, 1, 2, 2, 1], &[0, 2, 3, 3, 1], &[1, 2, 2], &[1]])),
            (
                Reference,
                Catenary(&[("0,3,3,2", 2), ("0,3,2,3", 1), ("0,3,1,4", 2), ("0,1,3,4", 2), ("0,1,4,3", 2)]),
            ),
            (Reference, TensorAbs(&[(2, 5, 0, 1), (2, 4, 0, 2), (1, 3, 0, 2), (1, 3, 1, 3)])),
        ],
    },
    ZooEntry {
        name: "h35",
        spec: "sum(multipoint:0;5|line:3,1,1)",
        fixtures: &[
            (Reference, Tableau(&[&[0, 0, 1, 2, 3, 3, 2, 1], &[0, 2, 3, 4, 3, 2, 1], &[1, 2, 2, 1, 1], &[1]])),
            (
                Reference,
                Catenary(&[
                    ("0,5,3,2", 1),
                    ("0,3,5,2", 1),
                    ("0,5,1,4", 2),
                    ("0,3,2,5", 1),
                    ("0,1,5,4", 2),
                    ("0,1,4,5", 2),
                ]),
            ),
            (
                Reference,
                TensorAbs(&[(2, 8, 0, 1), (2, 6, 0, 2), (2, 5, 0, 1), (1, 5, 0, 1), (1, 5, 1, 2), (1, 3, 0, 1), (1, 3, 1, 1)]),
            ),
        ],
    },
    ZooEntry {
        name: "echelon1",
        spec: "echelon:1000110000",
        fixtures: &[
            (Reference, Tableau(&[&[0, 10, 10, 10, 10, 6, 3, 1], &[10, 4, 4, 4], &[4, 1, 1, 1], &[1]])),
            (Reference, Catenary(&[("0,4,1,5", 6), ("0,1,4,5", 6), ("0,1,1,8", 30)])),
            (Reference, TensorAbs(&[(2, 5, 0, 6), (1, 4, 0, 1), (1, 4, 1, 5)])),
        ],
    },
    ZooEntry {
        name: "echelon2",
        spec: "echelon:1000101000",
        fixtures: &[
            (Reference, Tableau(&[&[0, 9, 9, 9, 9, 6, 3, 1], &[9, 4, 4, 4, 1], &[4, 1, 1, 1], &[1]])),
            (
                Reference,
                Catenary(&[("0,4,2,4", 1), ("0,4,1,5", 4), ("0,1,5,4", 2), ("0,1,4,5", 4), ("0,1,1,8", 28)]),
            ),
            (Reference, TensorAbs(&[(2, 6, 0, 1), (2, 5, 0, 4), (1, 4, 0, 1), (1, 4, 1, 4)])),
        ],
    },
    ZooEntry {
        name: "boolean235",
        spec: "multipoint:0;2,3,5",
        fixtures: &[(
            Reference,
            Catenary(&[("0,2,3,5", 1), ("0,2,5,3", 1), ("0,3,2,5", 1), ("0,3,5,2", 1), ("0,5,2,3", 1), ("0,5,3,2", 1)]),
        )],
    },
    ZooEntry {
        name: "loops",
        spec: "multipoint:2;2,3",
        fixtures: &[(Derived("direct"), Mobius(0))],
    },
];

pub fn find(name: &str) -> Option<&'static ZooEntry> {
    ZOO.iter().find(|e| e.name == name)
}

/// Dense rows as a polynomial.
pub fn rows_to_poly(rows: &[&[i64]]) -> Poly {
    let mut p = Poly::zero();
    for (i, row) in rows.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            p.add_term(i as u32, j as u32, rat(c, 1));
        }
    }
    p
}

/// Outcome of checking one entry.
pub struct EntryReport {
    pub name: &'static str,
    pub millis: u128,
    pub failures: Vec<String>,
}

/// Compute what the fixtures of `e` need and compare.
pub fn check_entry(e: &ZooEntry, limits: &Limits) -> Result<EntryReport> {
    let start = Instant::now();
    let m = Matroid::construct(e.spec)?;
    let mut failures = Vec::new();
    let mut tutte: Option<Poly> = None;
    let mut tutte_of = |m: &Matroid| -> Result<Poly> {
        if let Some(p) = &tutte {
            return Ok(p.clone());
        }
        let p = tutte_via_frame(m, limits)?;
        tutte = Some(p.clone());
        Ok(p)
    };
    for (origin, fixture) in e.fixtures {
        let tag = match origin {
            Reference => "reference".to_string(),
            Derived(route) => format!("derived by {route}"),
        };
        match fixture {
            Tableau(rows) => {
                let p = tutte_of(&m)?;
                if p != rows_to_poly(rows) {
                    failures.push(format!("tableau ({tag}) differs: got {}", p.to_poly_string()));
                }
                if m.loops() == 0 {
                    let q = tutte_from_tensor(&flat_tensor(&m, limits)?)?;
                    if q != p {
                        failures.push("flat expansion disagrees with the frame route".into());
                    }
                }
                if m.n() <= 16 && tutte_direct(&m, limits)? != p {
                    failures.push("subset sum disagrees with the frame route".into());
                }
            }
            Catenary(expect) => {
                let cat = catenary_data(&m, limits)?;
                if cat.nu.len() != expect.len() {
                    failures.push(format!("catenary ({tag}): {} compositions, expected {}", cat.nu.len(), expect.len()));
                }
                for (a, v) in expect.iter() {
                    let got = cat.get(&a.parse()?);
                    if got != Int::from(*v) {
                        failures.push(format!("catenary ({tag}) nu({a}) = {got}, expected {v}"));
                    }
                }
            }
            Tensor(expect) | TensorAbs(expect) => {
                let abs = matches!(fixture, TensorAbs(_));
                let t = flat_tensor(&m, limits)?;
                for &(k, size, tt, v) in expect.iter() {
                    let got = t.get(k, size, tt);
                    let got = if abs { got.abs() } else { got };
                    if got != Int::from(v) {
                        failures.push(format!("f^{tt}[{k}][{size}] ({tag}) = {got}, expected {v}"));
                    }
                }
            }
            Mobius(v) => {
                let mu = tutte_of(&m)?.eval(&Rat::one(), &Rat::zero());
                if mu != rat(*v, 1) {
                    failures.push(format!("T(1,0) ({tag}) = {mu}, expected {v}"));
                }
            }
        }
    }
    Ok(EntryReport { name: e.name, millis: start.elapsed().as_millis(), failures })
}
