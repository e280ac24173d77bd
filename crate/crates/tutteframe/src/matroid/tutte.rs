//! Tutte polynomials straight from the rank function.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{full_mask, Mask, Matroid};
use crate::arith::{rat_int, Int, Rat};
use crate::error::{Error, Result};
use crate::polynomial::Poly;
use crate::Limits;

/// `sum_A (x-1)^{r - rk A} (y-1)^{|A| - rk A}` over all `2^n` subsets.
pub fn tutte_direct(m: &Matroid, limits: &Limits) -> Result<Poly> {
    let n = m.n();
    if n > limits.direct_n {
        return Err(Error::Cap {
            what: "ground set for direct enumeration",
            size: n,
            cap: limits.direct_n,
            hint: "use --method ftensor or --method frame",
        });
    }
    let r = m.r();
    let width = n + 1;
    let chunk_bits = n.min(12);
    let chunks = 1u64 << (n - chunk_bits);
    let hist = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut h = vec![0u64; (r + 1) * width];
            let start = c << chunk_bits;
            for a in start..start + (1u64 << chunk_bits) {
                let rk = m.rank_uncached(a);
                h[rk * width + a.count_ones() as usize] += 1;
            }
            h
        })
        .reduce(
            || vec![0u64; (r + 1) * width],
            |mut x, y| {
                for (a, b) in x.iter_mut().zip(y) {
                    *a += b;
                }
                x
            },
        );
    let mut shifted = Poly::zero();
    for rk in 0..=r {
        for size in rk..=n {
            let count = hist[rk * width + size];
            if count > 0 {
                shifted.add_term((r - rk) as u32, (size - rk) as u32, rat_int(Int::from(count)));
            }
        }
    }
    Ok(Poly::from_shifted(&shifted))
}

/// Deletion-contraction on elements in index order.
///
/// After the first `k` elements are decided, the minor is determined by `k`
/// and the closure of the contracted set, so `(k, flat)` is the memo key.
pub fn tutte_deletion_contraction(m: &Matroid, limits: &Limits) -> Result<Poly> {
    let mut dc = DelCon { m, memo: HashMap::new(), cap: limits.memo_entries };
    dc.solve(0, m.loops())
}

struct DelCon<'a> {
    m: &'a Matroid,
    memo: HashMap<(usize, Mask), Poly>,
    cap: usize,
}

impl DelCon<'_> {
    fn solve(&mut self, k: usize, flat: Mask) -> Result<Poly> {
        let n = self.m.n();
        if k == n {
            return Ok(Poly::one());
        }
        if let Some(p) = self.memo.get(&(k, flat)) {
            return Ok(p.clone());
        }
        let rest = full_mask(n) & !full_mask(k);
        let base = self.m.rank(flat);
        let minor_rank = self.m.rank(rest | flat) - base;
        let size = rest.count_ones();
        let result = if minor_rank == 0 {
            Poly::monomial(0, size, Rat::one())
        } else if minor_rank as u32 == size {
            Poly::monomial(size, 0, Rat::one())
        } else {
            let e = 1u64 << k;
            if flat & e != 0 {
                self.solve(k + 1, flat)?.shift_degrees(0, 1)
            } else if self.m.rank((rest & !e) | flat) < self.m.rank(rest | flat) {
                self.solve(k + 1, flat)?.shift_degrees(1, 0)
            } else {
                let del = self.solve(k + 1, flat)?;
                let con = self.solve(k + 1, self.m.closure(flat | e))?;
                del + con
            }
        };
        if self.memo.len() >= self.cap {
            return Err(Error::Cap {
                what: "deletion-contraction memo",
                size: self.memo.len() + 1,
                cap: self.cap,
                hint: "use --method ftensor",
            });
        }
        self.memo.insert((k, flat), result.clone());
        Ok(result)
    }
}

/// `T(M; 1, 0)`; zero when `M` has loops.
pub fn mobius_invariant(m: &Matroid, limits: &Limits) -> Result<Int> {
    if m.loops() != 0 {
        return Ok(Int::zero());
    }
    let t = if m.n() <= limits.direct_n {
        tutte_direct(m, limits)?
    } else {
        tutte_deletion_contraction(m, limits)?
    };
    Ok(t.eval(&Rat::one(), &Rat::zero()).to_integer())
}
