//! Integer helpers shared by the combinatorial formulas.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(v: Int) -> Rat {
    BigRational::from_integer(v)
}

pub fn factorial(n: usize) -> Int {
    (1..=n).fold(Int::one(), |acc, k| acc * k)
}

/// `(t)_k = t (t-1) ... (t-k+1)`, for any integer `t`.
pub fn falling(t: i64, k: usize) -> Int {
    (0..k as i64).fold(Int::one(), |acc, i| acc * (t - i))
}

/// Binomial coefficient with integer upper index: `t (t-1) ... (t-k+1) / k!`,
/// and zero when `k < 0`.
pub fn binom(t: i64, k: i64) -> Int {
    if k < 0 {
        return Int::zero();
    }
    if t >= 0 && k > t {
        return Int::zero();
    }
    let k = if t >= 0 { k.min(t - k) } else { k };
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * (t - i) / (i + 1);
    }
    acc
}

pub fn binom_u(n: usize, k: usize) -> Int {
    binom(n as i64, k as i64)
}

/// Exact conversion of an integral rational; `None` otherwise.
pub fn to_integer(q: &Rat) -> Option<Int> {
    if q.is_integer() {
        Some(q.to_integer())
    } else {
        None
    }
}

/// Canonical string: "p" or "p/q".
pub fn fmt_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().ok()?;
            let q: Int = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(rat_int(s.parse().ok()?)),
    }
}
