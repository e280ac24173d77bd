//! The gamma-bar frame: `nu`, `f_k`, Möbius multipliers and gamma-bar elements.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{binom, factorial, rat_int, Int, Rat};
use crate::bitseq::{norm, norm_closed, partial_sums, Composition, SliceConstraint};
use crate::error::{Error, Result};
use crate::ginvariant::{catenary_data, gamma_symbols, specialize};
use crate::matroid::Matroid;
use crate::polynomial::{tau, tutte_uniform, Poly};
use crate::Limits;

/// `nu(0, p1, ..., pr) = prod_{i<r} p_{i:r} / prod_{i<r} p_i`.
pub fn nu_of(parts: &[usize]) -> Rat {
    let r = parts.len();
    let mut num = Int::one();
    let mut den = Int::one();
    for i in 0..r.saturating_sub(1) {
        num *= parts[i..].iter().sum::<usize>();
        den *= parts[i];
    }
    Rat::new(num, den)
}

/// `nu(a)`; `a0` is ignored.
pub fn nu(a: &Composition) -> Rat {
    nu_of(&a.parts()[1..])
}

/// Frame parameters of one composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameCoefficients {
    pub composition: Composition,
    pub nu: Rat,
    /// `f_k` for `1 <= k <= r`.
    pub f: BTreeMap<usize, Rat>,
    /// `m_{k,k-h}` keyed by `(k, h)`, `1 <= k <= r-1`, `0 <= h <= k-1`.
    pub m: BTreeMap<(usize, usize), Rat>,
    /// `f_{k,k-h}` keyed by `(k, h)`.
    pub f_interior: BTreeMap<(usize, usize), Rat>,
}

impl FrameCoefficients {
    pub fn f(&self, k: usize) -> Result<&Rat> {
        self.f
            .get(&k)
            .ok_or_else(|| Error::Range(format!("f_{k} needs 1 <= k <= {}", self.composition.r())))
    }

    pub fn multiplier(&self, k: usize, h: usize) -> Result<&Rat> {
        self.m.get(&(k, h)).ok_or_else(|| self.range_error(k, h))
    }

    pub fn interior(&self, k: usize, h: usize) -> Result<&Rat> {
        self.f_interior.get(&(k, h)).ok_or_else(|| self.range_error(k, h))
    }

    fn range_error(&self, k: usize, h: usize) -> Error {
        Error::Range(format!(
            "(k, h) = ({k}, {h}) needs 1 <= k <= {} and h < k",
            self.composition.r().saturating_sub(1)
        ))
    }
}

pub fn frame_coefficients(a: &Composition) -> FrameCoefficients {
    let r = a.r();
    let p = &a.parts()[1..];
    let f: BTreeMap<usize, Rat> = (1..=r)
        .map(|k| (k, (nu_of(&p[..k]) * nu_of(&p[k..])).recip()))
        .collect();
    let mut m = BTreeMap::new();
    let mut f_interior = BTreeMap::new();
    for k in 1..r {
        for h in 0..k {
            let mut num = Int::one();
            let mut den = Int::one();
            for l in 0..h {
                num *= a.range_sum(k + 1 - l, r);
                den *= a.range_sum(k - h + 1, k - l);
            }
            let mult = Rat::new(num, den);
            f_interior.insert((k, h), &mult * &f[&(k - h)]);
            m.insert((k, h), mult);
        }
    }
    FrameCoefficients { composition: a.clone(), nu: nu(a), f, m, f_interior }
}

/// `f_{k+t,k}` as `1 / (nu(0,a1..ak) nu(0, a_{r:k+t+1}, a_{k+t}, ..., a_{k+1}) nu(0, a_{k+t+1}..ar))`.
pub fn interior_tripartition(a: &Composition, k: usize, t: usize) -> Result<Rat> {
    let r = a.r();
    if k == 0 || k + t >= r {
        return Err(Error::Range(format!("need 1 <= k and k + t < r (k={k}, t={t}, r={r})")));
    }
    let p = &a.parts()[1..];
    let mut middle = vec![a.range_sum(k + t + 1, r)];
    middle.extend(p[k..k + t].iter().rev());
    Ok((nu_of(&p[..k]) * nu_of(&middle) * nu_of(&p[k + t..])).recip())
}

/// The interior coefficient `f_{k,k-h}` through norms and binomials.
pub fn interior_coefficient_normform(a: &Composition, k: usize, h: usize) -> Result<Rat> {
    let r = a.r();
    if !(1 <= h && h < k && k < r) {
        return Err(Error::Range(format!("need 1 <= h <= k-1 <= r-2 (k={k}, h={h}, r={r})")));
    }
    let a = a.strip_loops();
    let n = a.n();
    let s = |i: usize, j: usize| a.range_sum(i, j) as i64;
    let low = k - h + 1;
    let mut coeff = binom(s(low, r) - 1, s(low, k));
    for i in 0..h.saturating_sub(1) {
        coeff *= binom(s(low, k - i) - 1, s(low, k - i - 1));
    }
    let head = Composition::loopless(&a.parts()[1..=k - h])?;
    let tail = Composition::loopless(&a.parts()[k + 1..])?;
    let xi = partial_sums(&a)[k - h];
    let num = coeff * a.factorial_product() * norm_closed(&head) * norm_closed(&tail);
    Ok(Rat::new(num, factorial(xi) * factorial(n - xi)))
}

/// One `tau` term of the closed form:
/// `coeff * (xy - x - y) (x-1)^x_exp tau(d, alpha; y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauTerm {
    pub k: usize,
    pub h: usize,
    pub coeff: Rat,
    pub x_exp: usize,
    pub d: usize,
    pub alpha: usize,
}

/// The closed form of `gamma-bar(0, a1..ar)` before expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub loops: usize,
    /// Coefficient of `T(U_{r,n-a0})`.
    pub leading: Rat,
    /// Non-vanishing tau terms, signs included.
    pub terms: Vec<TauTerm>,
}

impl Decomposition {
    pub fn of(a: &Composition) -> Decomposition {
        let r = a.r();
        let loopless = a.strip_loops();
        let fc = frame_coefficients(&loopless);
        let xi = partial_sums(&loopless);
        let mut terms = Vec::new();
        for k in 1..r {
            for h in 0..k {
                let alpha = xi[k - h] as i64 - k as i64 - 1;
                if alpha < 0 {
                    continue;
                }
                let sign = if h % 2 == 0 { Rat::one() } else { -Rat::one() };
                terms.push(TauTerm {
                    k,
                    h,
                    coeff: sign * &fc.f_interior[&(k, h)],
                    x_exp: r - k - 1,
                    d: k + 1,
                    alpha: alpha as usize,
                });
            }
        }
        let leading = if r == 0 { Rat::one() } else { fc.f[&r].clone() };
        Decomposition { loops: a.a(0), leading, terms }
    }

    pub fn expand(&self, r: usize, n_loopless: usize) -> Poly {
        let mut body = tutte_uniform(r, n_loopless).expect("r <= n").scale(&self.leading);
        let mut inner = Poly::zero();
        for t in &self.terms {
            let piece = &Poly::x_minus_one_pow(t.x_exp as u32) * &tau(t.d as i64, t.alpha as i64);
            inner += &piece.scale(&t.coeff);
        }
        body += &(&Poly::syzygy() * &inner);
        body.shift_degrees(0, self.loops as u32)
    }
}

/// `gamma-bar(a)` in closed form; the production route.
pub fn gammabar_closed(a: &Composition) -> Poly {
    Decomposition::of(a).expand(a.r(), a.n() - a.a(0))
}

/// `Sp(gamma(a))`.
pub fn gammabar_oracle(a: &Composition, limits: &Limits) -> Result<Poly> {
    Ok(specialize(&gamma_symbols(a, limits)?))
}

/// `gamma-bar(a)` through slice norms of the filter `[a)`.
pub fn gammabar_norms(a: &Composition, limits: &Limits) -> Result<Poly> {
    let loops = a.a(0);
    let a = a.strip_loops();
    let (n, r) = (a.n(), a.r());
    let fact = rat_int(a.factorial_product());
    let xi = partial_sums(&a);
    let total = norm(&a, &SliceConstraint::none(), limits)?;
    let lead = &fact * Rat::new(total, factorial(n));
    let mut shifted = Poly::zero();
    for k in 1..r {
        if xi[k] < k + 1 {
            continue;
        }
        for j in 0..=xi[k] - k - 1 {
            let slice = norm(&a, &SliceConstraint::le(k + 1, j), limits)?;
            let c = &fact * Rat::new(slice, factorial(xi[k] - j) * factorial(n - xi[k] + j));
            shifted.add_term((r - k - 1) as u32, (xi[k] - k - j - 1) as u32, c);
        }
    }
    let body = tutte_uniform(r, n)?.scale(&lead) + &Poly::syzygy() * &Poly::from_shifted(&shifted);
    Ok(body.shift_degrees(0, loops as u32))
}

/// The diagonal arrangement of the closed form, summing over `k` and `t = h`
/// with exponent `(x-1)^{r-k-t-1}`.
pub fn gammabar_by_flags(a: &Composition) -> Poly {
    let loops = a.a(0);
    let a = a.strip_loops();
    let (n, r) = (a.n(), a.r());
    let fc = frame_coefficients(&a);
    let xi = partial_sums(&a);
    let leading = if r == 0 { Rat::one() } else { fc.f[&r].clone() };
    let mut inner = Poly::zero();
    for k in 1..r {
        for t in 0..r - k {
            let alpha = xi[k] as i64 - (k + t) as i64 - 1;
            let sign = if t % 2 == 0 { Rat::one() } else { -Rat::one() };
            let piece = &Poly::x_minus_one_pow((r - k - t - 1) as u32) * &tau((k + t + 1) as i64, alpha);
            inner += &piece.scale(&(sign * &fc.f_interior[&(k + t, t)]));
        }
    }
    let body = tutte_uniform(r, n).expect("r <= n").scale(&leading) + &Poly::syzygy() * &inner;
    body.shift_degrees(0, loops as u32)
}

fn rising(start: usize, from: usize, to: usize) -> Int {
    (from..=to).fold(Int::one(), |acc, i| acc * (start + i))
}

/// Closed form for compositions `0, 1^{r-2}, a_{r-1}, a_r` (thickness at most 1).
pub fn gammabar_thickness1(a: &Composition) -> Result<Poly> {
    let r = a.r();
    if a.a(0) != 0 || r < 2 || (1..r - 1).any(|i| a.a(i) != 1) {
        return Err(Error::InvalidComposition(format!("{a} is not of the form 0,1,...,1,a,b")));
    }
    let (p, q) = (a.a(r - 1), a.a(r));
    let lead = Rat::new(Int::from(p), rising(p + q, 0, r - 2));
    let second = tau(r as i64, p as i64 - 2).scale(&Rat::new(Int::one(), rising(p, 1, r - 2)));
    Ok(tutte_uniform(r, a.n())?.scale(&lead) + &Poly::syzygy() * &second)
}

/// Closed form for compositions `0, 1^{r-3}, a_{r-2}, a_{r-1}, a_r` (thickness at most 2).
pub fn gammabar_thickness2(a: &Composition) -> Result<Poly> {
    let r = a.r();
    if a.a(0) != 0 || r < 3 || (1..r - 2).any(|i| a.a(i) != 1) {
        return Err(Error::InvalidComposition(format!("{a} is not of the form 0,1,...,1,c,a,b")));
    }
    let (c, p, q) = (a.a(r - 2), a.a(r - 1), a.a(r));
    let ri = r as i64;
    let lead = Rat::new(Int::from(c * p), Int::from(p + q) * rising(c + p + q, 0, r - 3));
    let top = tau(ri, (c + p) as i64 - 3).scale(&Rat::new(Int::from(c), Int::from(c + p) * rising(c + p, 1, r - 3)));
    let back = tau(ri, c as i64 - 3).scale(&Rat::new(Int::from(q), Int::from(p + q) * rising(c, 1, r - 3)));
    let below = &Poly::x_minus_one_pow(1)
        * &tau(ri - 1, c as i64 - 2).scale(&Rat::new(Int::from(p), Int::from(p + q) * rising(c, 1, r - 3)));
    let inner = top - back + below;
    Ok(tutte_uniform(r, a.n())?.scale(&lead) + &Poly::syzygy() * &inner)
}

/// `sum_a nu(M; a) gamma-bar(a)` over the catenary data of `M`.
pub fn tutte_via_frame(m: &Matroid, limits: &Limits) -> Result<Poly> {
    let cat = catenary_data(m, limits)?;
    let items: Vec<(&Composition, &Int)> = cat.iter().collect();
    let parts: Vec<Poly> = items
        .par_iter()
        .map(|(a, nu)| gammabar_closed(a).scale_int(nu))
        .collect();
    let mut total = Poly::zero();
    for p in &parts {
        total += p;
    }
    Ok(total)
}

/// `gamma-bar(0,a; 1,0) = 1 / nu(0, ar, ..., a1)`, and 0 with loops.
pub fn mobius_prediction(a: &Composition) -> Rat {
    if a.a(0) > 0 {
        return Rat::zero();
    }
    nu(&a.reversed()).recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn coefficients_example() {
        let fc = frame_coefficients(&c("0,1,1,4,2,4"));
        assert_eq!(fc.nu, rat(990, 1));
        assert_eq!(fc.f[&5], rat(1, 990));
        assert_eq!(fc.f[&4], rat(1, 84));
        assert_eq!(fc.f[&3], rat(1, 90));
        assert_eq!(*fc.interior(4, 1).unwrap(), rat(2, 90));
        assert_eq!(*fc.multiplier(4, 1).unwrap(), rat(2, 1));
        assert!(fc.interior(5, 1).is_err());
        assert!(fc.multiplier(3, 3).is_err());
        let uniform = frame_coefficients(&c("0,1,1,1,5"));
        assert_eq!(uniform.nu, rat(8 * 7 * 6, 1));
    }

    #[test]
    fn tripartition_matches() {
        let a = c("0,2,1,3,1,2,4");
        let fc = frame_coefficients(&a);
        for k in 1..6 {
            for t in 0..6 - k {
                assert_eq!(interior_tripartition(&a, k, t).unwrap(), fc.f_interior[&(k + t, t)]);
            }
        }
    }

    #[test]
    fn normform_example() {
        assert_eq!(interior_coefficient_normform(&c("0,1,1,4,2,4"), 4, 1).unwrap(), rat(2, 90));
        assert!(interior_coefficient_normform(&c("0,1,1,4,2,4"), 5, 1).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let u38 = tutte_uniform(3, 8).unwrap();
        let g = gammabar_closed(&c("0,1,3,4"));
        let expect = u38.scale(&rat(3, 56)) + &Poly::syzygy() * &Poly::in_y(&[3, 1]).scale(&rat(1, 4));
        assert_eq!(g, expect);
        let g = gammabar_closed(&c("0,1,4,3"));
        let expect = u38.scale(&rat(4, 56)) + &Poly::syzygy() * &Poly::in_y(&[6, 3, 1]).scale(&rat(1, 5));
        assert_eq!(g, expect);
    }

    #[test]
    fn closed_form_twelve_five() {
        let ym1 = |coeffs: &[i64]| Poly::from_shifted(&Poly::in_y(coeffs));
        let u = tutte_uniform(5, 12).unwrap().scale(&rat(1, 990));
        let rank4 = ym1(&[56, 28, 8, 1]).scale(&rat(1, 84)) - ym1(&[6, 1]).scale(&rat(2, 90));
        let rank3 = &Poly::x_minus_one_pow(1) * &ym1(&[15, 6, 1]).scale(&rat(1, 90));
        let expect = u + &Poly::syzygy() * &(rank4 + rank3);
        assert_eq!(gammabar_closed(&c("0,1,1,4,2,4")), expect);
    }

    #[test]
    fn oracle_examples() {
        let lim = Limits::default();
        let xy = &Poly::x() + &Poly::y();
        assert_eq!(gammabar_oracle(&c("0,2,2"), &lim).unwrap(), (&xy * &xy).scale(&rat(1, 2)));
        assert_eq!(
            gammabar_oracle(&c("0,1,1,3"), &lim).unwrap(),
            tutte_uniform(3, 5).unwrap().scale(&rat(1, 20))
        );
        let g = gammabar_oracle(&c("0,2,1,3"), &lim).unwrap();
        assert_eq!(gammabar_oracle(&c("1,2,1,3"), &lim).unwrap(), g.shift_degrees(0, 1));
    }

    #[test]
    fn norms_examples() {
        let lim = Limits::default();
        let a = c("0,1,1,4,2,4");
        assert_eq!(gammabar_norms(&a, &lim).unwrap(), gammabar_closed(&a));
        let slice = norm(&a, &SliceConstraint::le(5, 0), &lim).unwrap();
        assert_eq!(slice, Int::from(10));
    }

    #[test]
    fn flags_and_thickness_forms() {
        let a = c("0,1,1,4,2,4");
        assert_eq!(gammabar_by_flags(&a), gammabar_closed(&a));
        let t1 = c("0,1,1,3,5");
        assert_eq!(gammabar_thickness1(&t1).unwrap(), gammabar_closed(&t1));
        let t2 = c("0,1,2,3,4");
        assert_eq!(gammabar_thickness2(&t2).unwrap(), gammabar_closed(&t2));
        assert!(gammabar_thickness1(&t2).is_err());
    }

    #[test]
    fn frame_route_examples() {
        let lim = Limits::default();
        let m = Matroid::construct("sum(uniform:1,2|multipoint:0;3|multipoint:0;5)").unwrap();
        let t = tutte_via_frame(&m, &lim).unwrap();
        let f = |k: usize| {
            let mut p = Poly::x();
            for j in 1..k {
                p.add_term(0, j as u32, Rat::one());
            }
            p
        };
        assert_eq!(t, &(&f(2) * &f(3)) * &f(5));
    }
}
